#include <gtest/gtest.h>

#include <sstream>

#include "corpus.hpp"
#include "oracles.hpp"
#include "tailkit/errors.hpp"
#include "tailkit/fractional.hpp"

using namespace tailkit;

TEST(Graph, ValidatesEdges) {
  EXPECT_THROW(Graph(3, {{0, 0}}), ArgumentError);
  EXPECT_THROW(Graph(3, {{0, 1}, {1, 0}}), ArgumentError);
  EXPECT_THROW(Graph(3, {{0, 3}}), ArgumentError);
  const Graph g(3, {{2, 1}, {0, 1}});
  EXPECT_EQ(g.edges(), (std::vector<Graph::EdgePair>{{0, 1}, {1, 2}}));
  EXPECT_TRUE(g.adjacent(2, 1));
  EXPECT_EQ(g.degree(1), 2u);
}

TEST(Graph, ParseWriteRoundTrip) {
  std::istringstream in("# triangle\n3\n1 2\n1 3\n2 3\n");
  const Graph g = Graph::parse(in);
  EXPECT_EQ(g, Graph::complete(3));
  std::ostringstream out;
  g.write(out);
  std::istringstream again(out.str());
  EXPECT_EQ(Graph::parse(again), g);
}

TEST(PairIndex, EnumeratesPairsInOrder) {
  for (unsigned n = 2; n <= 9; ++n) {
    unsigned expected = 0;
    for (unsigned u = 0; u < n; ++u) {
      for (unsigned v = u + 1; v < n; ++v) {
        EXPECT_EQ(pair_index(n, u, v), expected);
        EXPECT_EQ(pair_index(n, v, u), expected);
        ++expected;
      }
    }
  }
}

TEST(FractionalIndependence, KnownValues) {
  EXPECT_EQ(fractional_independence(Graph(1)).value, Rational(1));
  EXPECT_EQ(fractional_independence(Graph::complete(3)).value, Rational(3, 2));
  EXPECT_EQ(fractional_independence(corpus::cycle(5)).value, Rational(5, 2));
  EXPECT_EQ(fractional_independence(corpus::path(4)).value, Rational(2));
  EXPECT_EQ(fractional_independence(Graph(0)).value, Rational(0));
}

TEST(FractionalIndependence, WeightsAreOptimalAndHalfIntegral) {
  for (unsigned v = 1; v <= 6; ++v) {
    for (const auto& g : corpus::all_graphs(v)) {
      const auto fi = fractional_independence(g);
      Rational sum(0);
      for (const auto& x : fi.weights) {
        EXPECT_TRUE(x == Rational(0) || x == Rational(1, 2) || x == Rational(1));
        sum += x;
      }
      EXPECT_EQ(sum, fi.value);
      for (const auto& [a, b] : g.edges()) EXPECT_LE(fi.weights[a] + fi.weights[b], Rational(1));
      EXPECT_EQ(fi.value * 2, Rational(oracle::twice_alpha_star(g)));
      EXPECT_GE(fi.value, Rational(v, 2));
      EXPECT_LE(fi.value, Rational(v));
      EXPECT_EQ(fi.value == Rational(v), g.edge_count() == 0);
    }
  }
}

TEST(FractionalIndependence, FastPathAgrees) {
  for (const auto& g : corpus::random_graphs(200, 1, 12, 99)) {
    const auto masks = g.adjacency_masks();
    const std::uint64_t all = (std::uint64_t{1} << g.vertex_count()) - 1;
    EXPECT_EQ(Rational(twice_fractional_independence(masks, all), 2),
              fractional_independence(g).value);
  }
}

TEST(GraphCorpus, UnlabelledCounts) {
  const std::vector<std::size_t> expected{1, 2, 4, 11, 34, 156};
  for (unsigned v = 1; v <= 6; ++v) EXPECT_EQ(corpus::all_graphs(v).size(), expected[v - 1]);
}

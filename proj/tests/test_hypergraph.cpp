#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "oracles.hpp"
#include "tailkit/errors.hpp"
#include "tailkit/hypergraph.hpp"

using namespace tailkit;

namespace {

Hypergraph ap5() { return Hypergraph(5, 3, {{1, 2, 3}, {2, 3, 4}, {3, 4, 5}, {1, 3, 5}}); }

Hypergraph from_set(unsigned n, unsigned k, const std::set<Edge>& edges) {
  return Hypergraph(n, k, {edges.begin(), edges.end()});
}

std::vector<Hypergraph> corpus() {
  std::vector<Hypergraph> out;
  for (unsigned n : {5u, 7u, 9u, 10u, 12u}) {
    out.push_back(from_set(n, 3, oracle::ap_sets(3, n)));
    out.push_back(from_set(n, 3, oracle::schur_sets(n)));
  }
  out.push_back(from_set(10, 4, oracle::ap_sets(4, 10)));
  out.push_back(Hypergraph(6, 2, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {1, 6}, {1, 4}}));
  return out;
}

}  // namespace

TEST(Hypergraph, CanonicalisesEdges) {
  const Hypergraph h(4, 2, {{3, 1}, {2, 4}, {1, 3}});
  ASSERT_EQ(h.size(), 2u);
  EXPECT_EQ(h.edges()[0], (Edge{1, 3}));
  EXPECT_EQ(h.edges()[1], (Edge{2, 4}));
}

TEST(Hypergraph, RejectsMalformedEdges) {
  EXPECT_THROW(Hypergraph(4, 2, {{1, 2, 3}}), ArgumentError);
  EXPECT_THROW(Hypergraph(4, 2, {{1, 1}}), ArgumentError);
  EXPECT_THROW(Hypergraph(4, 2, {{0, 1}}), ArgumentError);
  EXPECT_THROW(Hypergraph(4, 2, {{1, 5}}), ArgumentError);
}

TEST(Hypergraph, ParseWriteRoundTrip) {
  std::istringstream in("# comment\n5 3\n1 2 3\n3 4 5\n\n1 3 5\n");
  const Hypergraph h = Hypergraph::parse(in);
  std::ostringstream out;
  h.write(out);
  std::istringstream again(out.str());
  EXPECT_EQ(Hypergraph::parse(again), h);
  EXPECT_EQ(h.size(), 3u);
}

TEST(DegreeBound, KnownValues) {
  const auto h = ap5();
  EXPECT_EQ(degree_bound(h, 0), 4u);
  EXPECT_EQ(degree_bound(h, 1), 4u);
  EXPECT_EQ(degree_bound(h, 2), 2u);
  EXPECT_EQ(degree_bound(h, 3), 1u);
  EXPECT_THROW(degree_bound(h, 4), ArgumentError);
  EXPECT_EQ(degree_bound(Hypergraph(3, 2, {}), 2), 0u);
}

TEST(DegreeBound, MatchesSubsetScanAndIsMonotone) {
  for (const auto& h : corpus()) {
    const auto profile = degree_profile(h);
    ASSERT_EQ(profile.size(), h.uniformity() + 1);
    EXPECT_EQ(profile[0], h.size());
    EXPECT_LE(profile.back(), 1u);
    for (unsigned j = 0; j <= h.uniformity(); ++j) {
      EXPECT_EQ(profile[j], oracle::degree(h, j)) << "j=" << j;
      EXPECT_EQ(degree_bound(h, j), profile[j]);
      if (j > 0) EXPECT_GE(profile[j - 1], profile[j]);
    }
  }
}

TEST(ExpectedCount, KnownValues) {
  EXPECT_DOUBLE_EQ(expected_count(ap5(), 0.5), 0.5);
  EXPECT_DOUBLE_EQ(expected_count(ap5(), 1.0), 4.0);
  EXPECT_DOUBLE_EQ(expected_count(from_set(10, 3, oracle::ap_sets(3, 10)), 0.5), 2.5);
}

TEST(InducedCount, KnownValues) {
  const auto h = ap5();
  const std::vector<Vertex> all{1, 2, 3, 4, 5};
  EXPECT_EQ(induced_count(h, all), 4u);
  EXPECT_EQ(induced_count(h, std::vector<Vertex>{}), 0u);
  EXPECT_EQ(induced_count(h, std::vector<Vertex>{1, 2, 3, 5}), 2u);
  EXPECT_THROW(induced_count(h, std::vector<Vertex>{1, 6}), ArgumentError);
}

TEST(SampleSubset, Endpoints) {
  EXPECT_TRUE(sample_subset(10, 0.0, 3, 0).members.empty());
  EXPECT_EQ(sample_subset(10, 1.0, 3, 0).members.size(), 10u);
}

TEST(SampleSubset, ConcentratesAndReproduces) {
  const auto a = sample_subset(10000, 0.3, 17, 4);
  const double sigma = std::sqrt(0.3 * 0.7 / 10000);
  EXPECT_NEAR(static_cast<double>(a.members.size()) / 10000, 0.3, 3 * sigma);
  EXPECT_EQ(sample_subset(10000, 0.3, 17, 4).members, a.members);
  EXPECT_NE(sample_subset(10000, 0.3, 17, 5).members, a.members);
}

TEST(ExactTail, KnownValues) {
  const Hypergraph single(2, 2, {{1, 2}});
  EXPECT_NEAR(exact_tail(single, 0.3, 1), 0.09, 1e-15);
  EXPECT_EQ(exact_tail(ap5(), 0.3, 0), 1.0);
  // Pinned by 2^5-subset enumeration: 9 of the 32 subsets host an edge at p = 1/2.
  EXPECT_DOUBLE_EQ(exact_tail(ap5(), 0.5, 1), oracle::tail(ap5(), 0.5, 1));
  EXPECT_DOUBLE_EQ(exact_tail(ap5(), 0.5, 1), 9.0 / 32.0);
}

TEST(ExactTail, MatchesNaiveEnumeration) {
  for (const auto& h : corpus()) {
    for (double p : {0.1, 0.3, 0.5, 0.9}) {
      for (double thr : {0.5, 1.0, 2.0, 3.5, 6.0}) {
        EXPECT_NEAR(exact_tail(h, p, thr), oracle::tail(h, p, thr), 1e-12);
      }
    }
  }
}

TEST(ExactTail, MonotoneInThresholdAndProbability) {
  const auto h = from_set(10, 3, oracle::schur_sets(10));
  for (double p = 0.1; p < 0.95; p += 0.1) {
    double previous = 1.0;
    for (double thr = 0; thr <= 22; thr += 0.5) {
      const double tail = exact_tail(h, p, thr);
      EXPECT_LE(tail, previous + 1e-15);
      EXPECT_LE(tail, exact_tail(h, p + 0.05, thr) + 1e-15);
      previous = tail;
    }
  }
}

TEST(ExactTail, GuardAndOverride) {
  const auto h = from_set(25, 3, oracle::ap_sets(3, 25));
  EXPECT_THROW(exact_tail(h, 0.5, 1), CapacityError);
}

TEST(ExactMoment, KnownValues) {
  const Hypergraph single(2, 2, {{1, 2}});
  EXPECT_DOUBLE_EQ(exact_moment(single, 0.5, 3), 0.25);
  EXPECT_NEAR(exact_moment(ap5(), 0.5, 2), oracle::moment(ap5(), 0.5, 2), 1e-12);
  EXPECT_THROW(exact_moment(ap5(), 0.5, 0), ArgumentError);
}

TEST(ExactMoment, FirstMomentIsMean) {
  for (const auto& h : corpus()) {
    for (double p : {0.1, 0.3, 0.5, 0.9}) {
      const double mu = expected_count(h, p);
      EXPECT_NEAR(exact_moment(h, p, 1), mu, 1e-12 * mu);
    }
  }
}

TEST(ExactMoment, TupleExpansionMatchesDistribution) {
  for (const auto& h : corpus()) {
    const auto census = SubsetCensus::enumerate(h);
    for (double p : {0.1, 0.5, 0.9}) {
      for (unsigned m = 1; m <= 3; ++m) {
        if (std::pow(static_cast<double>(h.size()), m) > 1e6) continue;
        const double tuples = exact_moment(h, p, m);
        EXPECT_NEAR(tuples, census.moment(p, m), 1e-9 * tuples);
        EXPECT_NEAR(tuples, oracle::moment(h, p, m), 1e-9 * tuples);
      }
    }
  }
}

TEST(ExactMoment, TupleGuard) {
  const auto h = from_set(12, 3, oracle::ap_sets(3, 12));
  Guards small;
  small.max_moment_tuples = 100;
  EXPECT_THROW(exact_moment(h, 0.5, 2, small), CapacityError);
}

TEST(SubsetCensus, TableSumsToAllSubsets) {
  const auto h = ap5();
  const auto census = SubsetCensus::enumerate(h);
  std::uint64_t total = 0;
  for (unsigned s = 0; s <= 5; ++s) {
    for (std::uint64_t c = 0; c <= census.max_count(); ++c) total += census.subsets(s, c);
  }
  EXPECT_EQ(total, 32u);
  EXPECT_EQ(census.subsets(5, 4), 1u);
  EXPECT_EQ(census.subsets(0, 0), 1u);
}

#include <gtest/gtest.h>

#include <cmath>

#include "corpus.hpp"
#include "oracles.hpp"
#include "tailkit/errors.hpp"
#include "tailkit/rooted.hpp"

using namespace tailkit;

namespace {

RootedGraph rooted_edge() { return RootedGraph(Graph::complete(2), {0}); }
RootedGraph rooted_triangle() { return RootedGraph(Graph::complete(3), {0}); }
RootedGraph clique(unsigned k) { return family_graph({ExampleFamily::rooted_clique, k, 0, 0}); }
RootedGraph path_ends(unsigned k) { return family_graph({ExampleFamily::rooted_path, k, 0, 0}); }
EdgeMask all_edges(const RootedGraph& g) { return (EdgeMask{1} << g.edge_count()) - 1; }

bool close(double a, double b, double rel = 1e-9) {
  return std::fabs(a - b) <= rel * std::max(std::fabs(a), std::fabs(b));
}

}  // namespace

TEST(RootedGraph, RejectsDependentRoots) {
  try {
    RootedGraph(Graph::complete(3), {0, 2});
    FAIL() << "adjacent roots accepted";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("1-3"), std::string::npos);
  }
  EXPECT_THROW(RootedGraph(Graph::complete(3), {5}), ArgumentError);
}

TEST(RootedGraph, EdgeClasses) {
  const auto g = RootedGraph(Graph(4, {{0, 1}, {1, 2}, {1, 3}, {2, 3}}), {0});
  EXPECT_EQ(g.edge_count(), 4u);
  EXPECT_EQ(g.rooted_edge_count(), 1u);
  EXPECT_EQ(g.nonroot_edge_count(), 3u);
  EXPECT_EQ(g.without_roots(), Graph::complete(3));
}

TEST(Psi, KnownValues) {
  const double n = 50, p = 0.2;
  EXPECT_NEAR(psi(rooted_edge(), 1, n, p), n * p, 1e-12);
  for (unsigned k = 3; k <= 5; ++k) {
    const auto g = clique(k);
    const double expected = std::pow(n, k - 1) * std::pow(p, k * (k - 1) / 2);
    EXPECT_TRUE(close(psi(g, all_edges(g), n, p), expected));
    EXPECT_TRUE(close(psi(g, all_edges(g), n, 1.0), std::pow(n, k - 1)));
  }
  EXPECT_THROW(psi(rooted_edge(), 2, n, p), ArgumentError);
}

TEST(RootedDensity, KnownValues) {
  EXPECT_EQ(rooted_density(rooted_edge()), Rational(1));
  for (unsigned k = 3; k <= 6; ++k) EXPECT_EQ(rooted_density(clique(k)), Rational(k, 2));
  for (unsigned k = 3; k <= 7; ++k) EXPECT_EQ(rooted_density(path_ends(k)), Rational(k - 1, k - 2));
  EXPECT_THROW(rooted_density(RootedGraph(Graph(2), {0})), ArgumentError);
}

TEST(MinExponentBase, KnownValues) {
  EXPECT_NEAR(min_exponent_base(clique(3), 100, 0.1).value, 10.0, 1e-9);
  const auto k22 = family_graph({ExampleFamily::bipartite_one_side, 0, 2, 2});
  EXPECT_NEAR(min_exponent_base(k22, 100, 0.5).value, 25.0, 1e-9);
  // Even k: M = np once p >= n^{-(k-2)/k}.
  const double n = 400;
  for (double p : {0.05, 0.1, 0.5, 0.9}) {
    ASSERT_GE(p, std::pow(n, -0.5));
    EXPECT_TRUE(close(min_exponent_base(path_ends(4), n, p).value, n * p));
  }
}

TEST(MinExponentBase, MatchesClosedForms) {
  std::vector<FamilySpec> families;
  for (unsigned k : {3u, 4u, 5u}) families.push_back({ExampleFamily::rooted_clique, k, 0, 0});
  for (unsigned a = 1; a <= 3; ++a) {
    for (unsigned b = 1; b <= 3; ++b) families.push_back({ExampleFamily::bipartite_one_side, 0, a, b});
  }
  for (unsigned k : {4u, 5u, 6u}) families.push_back({ExampleFamily::rooted_path, k, 0, 0});
  for (unsigned k : {3u, 4u, 5u}) families.push_back({ExampleFamily::rooted_cycle, k, 0, 0});
  for (const auto& spec : families) {
    const auto g = family_graph(spec);
    for (double n : {10.0, 50.0, 200.0, 1000.0, 1e5}) {
      for (double p : {0.001, 0.01, 0.1, 0.5, 0.95}) {
        const double expected = closed_form_M(spec, n, p);
        EXPECT_TRUE(close(min_exponent_base(g, n, p).value, expected))
            << "family " << static_cast<int>(spec.family) << " k=" << spec.k << " n=" << n
            << " p=" << p;
      }
    }
  }
}

TEST(MinExponentBase, ArgminReproducesValue) {
  for (const auto& [name, g] : corpus::rooted()) {
    const auto base = min_exponent_base(g, 30, 0.3);
    const auto profile = subgraph_profile(g, base.argmin);
    EXPECT_EQ(profile.alpha_star, base.profile.alpha_star) << name;
    EXPECT_TRUE(close(std::pow(psi(g, base.argmin, 30, 0.3), 1 / to_double(profile.alpha_star)),
                      base.value))
        << name;
  }
}

TEST(MinExponentBase, Guard) {
  Guards tiny;
  tiny.max_subgraph_edges = 2;
  EXPECT_THROW(min_exponent_base(clique(3), 10, 0.5, tiny), CapacityError);
}

TEST(CopyCounting, KnownValues) {
  for (unsigned n = 2; n <= 8; ++n) {
    EXPECT_EQ(count_rooted_copies(Graph::complete(n), 1, rooted_edge()), n - 1);
  }
  EXPECT_EQ(count_rooted_copies(Graph::complete(4), 1, rooted_triangle()), 3u);
  for (unsigned n = 3; n <= 8; ++n) {
    EXPECT_EQ(count_rooted_copies(Graph::complete(n), 2, path_ends(3)), n - 2);
  }
  EXPECT_EQ(rooted_automorphisms(rooted_triangle()), 2u);
  EXPECT_EQ(count_copies(Graph::complete(5), Graph::complete(3)), 10u);
}

TEST(CopyCounting, AgreesWithBruteForceAndDedupe) {
  const auto hosts = corpus::random_graphs(25, 5, 7, 3);
  for (const auto& [name, g] : corpus::rooted()) {
    for (const auto& host : hosts) {
      const unsigned r = g.root_count();
      const auto counted = count_rooted_copies(host, r, g);
      EXPECT_EQ(counted, enumerate_rooted_copies(host, r, g).size()) << name;
      EXPECT_EQ(counted, oracle::rooted_copies(host, r, g.graph(), g.roots())) << name;
    }
  }
}

TEST(CopyCounting, ClosedFormOnCompleteGraphs) {
  for (const auto& [name, g] : corpus::rooted()) {
    for (unsigned n = g.vertex_count(); n <= 7; ++n) {
      EXPECT_EQ(complete_rooted_copies(n, g), count_rooted_copies(Graph::complete(n), g.root_count(), g))
          << name << " n=" << n;
    }
    EXPECT_EQ(complete_rooted_copies(g.vertex_count() - 1, g), 0);
  }
}

TEST(RootedMean, KnownValues) {
  for (unsigned n = 2; n <= 9; ++n) EXPECT_NEAR(rooted_mean(rooted_edge(), n, 0.3), (n - 1) * 0.3, 1e-12);
  EXPECT_DOUBLE_EQ(rooted_mean(rooted_triangle(), 4, 0.5), 0.375);
  EXPECT_DOUBLE_EQ(rooted_mean(rooted_triangle(), 6, 1.0), 10.0);
  EXPECT_EQ(rooted_mean(rooted_triangle(), 2, 0.5), 0.0);
}

TEST(ExtensionMultiplicity, KnownValues) {
  EXPECT_EQ(extension_multiplicity(rooted_triangle(), 5), 1u);
  EXPECT_EQ(extension_multiplicity(RootedGraph(corpus::path(3), {0}), 5), 2u);
  EXPECT_EQ(extension_multiplicity(rooted_edge(), 5), 1u);
}

TEST(ExtensionMultiplicity, IdentityAtConsecutiveN) {
  for (const auto& [name, g] : corpus::rooted()) {
    const auto gm = extension_multiplicity(g, g.vertex_count());
    const auto core = g.without_roots();
    for (unsigned n = g.vertex_count(); n <= g.vertex_count() + 2; ++n) {
      const auto rooted = count_rooted_copies(Graph::complete(n), g.root_count(), g);
      const auto plain = count_copies(Graph::complete(n - g.root_count()), core);
      EXPECT_EQ(rooted, gm * plain) << name << " n=" << n;
    }
  }
}

TEST(ClassifyRegime, Triangle) {
  const auto b = classify_regime(rooted_triangle(), 1000, 0.5, 2);
  EXPECT_EQ(b.regime, Regime::b);
  EXPECT_NEAR(b.p1, std::pow(2.0, -0.5), 1e-12);
  EXPECT_NEAR(b.p2, std::pow(2.0, -1.0 / 3), 1e-12);
  EXPECT_NEAR(b.threshold, std::pow(1000.0, -2.0 / 3), 1e-12);
  EXPECT_EQ(classify_regime(rooted_triangle(), 1000, 0.75, 2).regime, Regime::c);
  EXPECT_EQ(classify_regime(rooted_triangle(), 1000, 0.01, 2).regime, Regime::a);
  EXPECT_EQ(classify_regime(rooted_triangle(), 1000, 0.9, 2).regime, Regime::d);
  // e_R(G) = 0: the root is isolated.
  EXPECT_THROW(classify_regime(RootedGraph(Graph(3, {{1, 2}}), {0}), 10, 0.5, 2), UnsupportedError);
}

TEST(ClassifyRegime, RegimeDMeansInfeasible) {
  for (const auto& [name, g] : corpus::rooted()) {
    for (unsigned n = g.vertex_count(); n <= 8; ++n) {
      for (double p = 0.05; p < 1.0; p += 0.05) {
        const auto report = classify_regime(g, n, p, 2);
        const bool above = p > report.p2;
        EXPECT_EQ(report.regime == Regime::d, above) << name;
        if (above) {
          EXPECT_GT(2 * report.mu, to_double(report.complete_copies)) << name;
          EXPECT_TRUE(report.tail_is_zero);
        }
      }
    }
  }
}

TEST(ClassifyRegime, NoNonRootEdgesCollapsesP1P2) {
  const auto g = family_graph({ExampleFamily::bipartite_one_side, 0, 2, 2});
  const auto report = classify_regime(g, 50, 0.3, 2);
  EXPECT_DOUBLE_EQ(report.p1, report.p2);
  for (double p = 0.01; p < 1.0; p += 0.01) {
    EXPECT_NE(classify_regime(g, 50, p, 2).regime, Regime::c);
  }
}

TEST(ThresholdSign, MatchesAppearanceThreshold) {
  // sign(M - 1) = sign(n p^{m_R} - 1).
  for (const auto& [name, g] : corpus::rooted()) {
    const double m_r = to_double(rooted_density(g));
    for (double n : {10.0, 100.0, 1e4}) {
      for (double p : {1e-4, 1e-3, 0.01, 0.05, 0.2, 0.6}) {
        const double M = min_exponent_base(g, n, p).value;
        const double x = n * std::pow(p, m_r);
        if (std::fabs(x - 1) < 1e-9) continue;
        EXPECT_EQ(M > 1, x > 1) << name << " n=" << n << " p=" << p;
      }
    }
  }
}

TEST(Blowup, SingleEdgeCore) {
  // H - R = K_2 with weights (1/2, 1/2): two classes of 16.
  const auto cert = blowup_certificate(rooted_triangle(), all_edges(rooted_triangle()), 2, 16);
  EXPECT_EQ(cert.class_sizes, (std::vector<unsigned>{16, 16}));
  EXPECT_EQ(cert.blowup.vertex_count(), 32u);
  EXPECT_EQ(cert.blowup.edge_count(), 256u);
  EXPECT_GE(cert.blowup.edge_count(), 64u);
  EXPECT_DOUBLE_EQ(cert.target_copies, 64.0);
  EXPECT_EQ(cert.with_roots.vertex_count(), 33u);
  EXPECT_EQ(cert.with_roots.edge_count(), 256u + 32u);
}

TEST(Blowup, IsolatedCore) {
  const auto cert = blowup_certificate(rooted_edge(), 1, 2, 3.3);
  EXPECT_EQ(cert.class_sizes, (std::vector<unsigned>{14}));
  EXPECT_EQ(cert.blowup.edge_count(), 0u);
  EXPECT_GE(count_copies(cert.blowup, cert.core), 2 * 2 * 3.3);
  EXPECT_THROW(blowup_certificate(rooted_edge(), 1, 2, 0.5), ArgumentError);
}

TEST(Blowup, HostsEnoughCopies) {
  for (const auto& [name, g] : corpus::rooted()) {
    for (double n : {20.0, 60.0}) {
      for (double p : {0.2, 0.4}) {
        for (double t : {1.5, 2.0}) {
          const auto base = min_exponent_base(g, n, p);
          if (base.value < 1) continue;
          const auto cert = blowup_certificate(g, base.argmin, t, base.value);
          if (cert.blowup.vertex_count() > 40) continue;
          const double psi_h = std::pow(base.value, to_double(base.profile.alpha_star));
          EXPECT_GE(static_cast<double>(count_copies(cert.blowup, cert.core)), 2 * t * psi_h * (1 - 1e-12))
              << name;
        }
      }
    }
  }
}

TEST(ClosedFormM, KnownValues) {
  EXPECT_NEAR(closed_form_M({ExampleFamily::rooted_clique, 3, 0, 0}, 100, 0.1), 10, 1e-9);
  EXPECT_NEAR(closed_form_M({ExampleFamily::bipartite_one_side, 0, 2, 2}, 100, 0.5), 25, 1e-9);
  EXPECT_THROW(closed_form_M({ExampleFamily::rooted_clique, 1, 0, 0}, 100, 0.1), ArgumentError);
  EXPECT_THROW(closed_form_M({ExampleFamily::rooted_path, 2, 0, 0}, 100, 0.1), ArgumentError);
}

TEST(ClosedFormM, CyclePathIdentity) {
  for (unsigned k : {4u, 5u, 6u}) {
    const auto cycle = family_graph({ExampleFamily::rooted_cycle, k - 1, 0, 0});
    for (double n : {10.0, 100.0, 1e4}) {
      for (double p : {0.001, 0.05, 0.3, 0.8}) {
        EXPECT_TRUE(close(min_exponent_base(cycle, n, p).value, min_exponent_base(path_ends(k), n, p).value));
      }
    }
  }
}

TEST(CopyHypergraph, Shape) {
  const auto h = rooted_copy_hypergraph(rooted_triangle(), 5);
  EXPECT_EQ(h.ground_size(), 10u);
  EXPECT_EQ(h.uniformity(), 3u);
  EXPECT_EQ(h.size(), 6u);
  EXPECT_THROW(rooted_copy_hypergraph(rooted_triangle(), 2), ArgumentError);
  EXPECT_THROW(rooted_copy_hypergraph(RootedGraph(Graph(3, {{0, 1}}), {0}), 4), UnsupportedError);
}

TEST(RootedLowerCertificate, HostsEnoughAndIsSmallest) {
  for (const auto& [name, g] : corpus::rooted()) {
    for (unsigned n = g.vertex_count(); n <= 7; ++n) {
      for (double p : {0.3, 0.5}) {
        const auto h = rooted_copy_hypergraph(g, n);
        const double need = 2 * expected_count(h, p);
        const auto cert = rooted_lower_certificate(g, n, p, 2);
        if (need > static_cast<double>(h.size())) {
          EXPECT_FALSE(cert) << name;
          continue;
        }
        ASSERT_TRUE(cert) << name;
        EXPECT_GE(static_cast<double>(cert->hosted), need);
        EXPECT_NEAR(cert->log_prob, cert->edges.size() * std::log(p), 1e-12);
        EXPECT_LE(cert->edges.size(), n * (n - 1) / 2);
      }
    }
  }
}

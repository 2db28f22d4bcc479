#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tailkit/fractional.hpp"
#include "tailkit/graph.hpp"
#include "tailkit/hypergraph.hpp"
#include "tailkit/moment_bounds.hpp"
#include "tailkit/numeric.hpp"

namespace tailkit {

/// A graph G together with an independent root set R.
class RootedGraph {
 public:
  /// Throws ValidationError (listing the offending edges, 1-indexed) if R is
  /// not independent, ArgumentError if a root is out of range.
  RootedGraph(Graph g, std::vector<unsigned> roots);

  const Graph& graph() const noexcept { return graph_; }
  const std::vector<unsigned>& roots() const noexcept { return roots_; }
  unsigned root_count() const noexcept { return static_cast<unsigned>(roots_.size()); }
  unsigned vertex_count() const noexcept { return graph_.vertex_count(); }
  bool is_root(unsigned v) const noexcept { return root_mask_ >> v & 1; }
  std::uint64_t root_mask() const noexcept { return root_mask_; }

  /// e(G)
  unsigned edge_count() const noexcept { return static_cast<unsigned>(graph_.edge_count()); }
  /// e(G - R)
  unsigned nonroot_edge_count() const noexcept { return edge_count() - rooted_edge_count_; }
  /// e_R(G) = e(G) - e(G - R): edges incident with R.
  unsigned rooted_edge_count() const noexcept { return rooted_edge_count_; }

  /// G - R with the non-root vertices relabelled 0.. in increasing order.
  Graph without_roots() const;

 private:
  Graph graph_;
  std::vector<unsigned> roots_;
  std::uint64_t root_mask_ = 0;
  unsigned rooted_edge_count_ = 0;
};

/// Subgraph H of G given as a bitmask over indices into G.edges(). The
/// vertex set of H is the set of endpoints (no isolated vertices).
using EdgeMask = std::uint64_t;

struct SubgraphProfile {
  unsigned nonroot_vertices = 0;  ///< v(H - R)
  unsigned edges = 0;             ///< e(H)
  Rational alpha_star;            ///< alpha*(H - R)
};

/// v(H-R), e(H) and alpha*(H-R) for the subgraph spanned by `mask`.
SubgraphProfile subgraph_profile(const RootedGraph& g, EdgeMask mask);

/// Psi = n^{v(H-R)} p^{e(H)}.
double psi(unsigned nonroot_vertices, unsigned edges, double n, double p);

/// Psi_H^R for the subgraph of G spanned by `mask`; ArgumentError if the mask
/// names edges outside G.
double psi(const RootedGraph& g, EdgeMask mask, double n, double p);

/// m_R(G) = max e(H) / v(H-R) over subgraphs with e(H) > 0, exact.
Rational rooted_density(const RootedGraph& g, const Guards& guards = {});

/// M_{R,G} and a minimising subgraph.
struct ExponentBase {
  double value = 0.0;      ///< M
  double log_value = 0.0;  ///< ln M
  EdgeMask argmin = 0;     ///< lexicographically smallest minimiser
  SubgraphProfile profile;
};

/// min over edge subsets H (no isolated vertices) of Psi_H^{1/alpha*(H-R)}.
/// Requires e(G) > 0, 0 < p <= 1 and n >= v(G).
ExponentBase min_exponent_base(const RootedGraph& g, double n, double p,
                               const Guards& guards = {});

/// A rooted copy of G in a host graph: vertex set and edge set in host labels.
struct RootedCopy {
  std::vector<unsigned> vertices;
  std::vector<Graph::EdgePair> edges;
  friend auto operator<=>(const RootedCopy&, const RootedCopy&) = default;
};

/// Number of injective edge-preserving maps V(G) -> V(host) sending roots
/// into [0, r) and non-roots into [r, n).
std::uint64_t count_rooted_embeddings(const Graph& host, unsigned r, const RootedGraph& g);

/// |Aut(R, G)|: automorphisms of G mapping R onto itself.
std::uint64_t rooted_automorphisms(const RootedGraph& g);

/// N^R(F, G): distinct rooted copies of (R, G) in F rooted at [0, r).
/// Counted as embeddings / |Aut(R, G)|.
std::uint64_t count_rooted_copies(const Graph& host, unsigned r, const RootedGraph& g);

/// The copies themselves, deduplicated by canonical (vertex set, edge set).
std::vector<RootedCopy> enumerate_rooted_copies(const Graph& host, unsigned r,
                                                const RootedGraph& g);

/// N(F, H): unrooted copies of `pattern` in `host`.
std::uint64_t count_copies(const Graph& host, const Graph& pattern);

/// N^R(K_n, G) with r = |R| roots, in closed form: (r)_r (n-r)_{v-r} / |Aut(R,G)|.
BigInt complete_rooted_copies(std::uint64_t n, const RootedGraph& g);

/// N(K_n, H) in closed form: (n)_{v(H)} / |Aut(H)|.
BigInt complete_copies(std::uint64_t n, const Graph& pattern);

/// mu = N^R(K_n, G) p^{e(G)}; zero when n < v(G).
double rooted_mean(const RootedGraph& g, std::uint64_t n, double p);

/// g = N^R(K_n, G) / N(K_{n-r}, G - R), checked for divisibility and for
/// agreement between n and n + 1 (ConsistencyError otherwise).
std::uint64_t extension_multiplicity(const RootedGraph& g, std::uint64_t n);

enum class Regime { a, b, c, d };
std::string_view to_string(Regime r);

struct RegimeReport {
  Regime regime = Regime::a;
  double threshold = 0.0;  ///< n^{-1/m_R(G)}
  double p1 = 0.0;         ///< t^{-1/e_R(G)}
  double p2 = 0.0;         ///< t^{-1/e(G)}
  double M = 0.0;
  double mu = 0.0;
  Rational rooted_density;
  BigInt complete_copies;  ///< N^R(K_n, G)
  double lower_exponent_scale = 0.0;
  double upper_exponent_scale = 0.0;
  bool tail_is_zero = false;
};

/// Places p in one of the four rooted upper-tail regimes:
/// d when t p^{e(G)} > 1, else a when p < n^{-1/m_R}, else b when p <= p1,
/// else c. Throws UnsupportedError when e_R(G) = 0.
RegimeReport classify_regime(const RootedGraph& g, std::uint64_t n, double p, double t,
                             const Guards& guards = {});

/// Blow-up of H - R witnessing the lower bound.
struct BlowupCertificate {
  Graph blowup;                      ///< F
  std::vector<unsigned> class_sizes;  ///< ceil(2 t M^{x_i}) per vertex of H - R
  std::vector<Rational> weights;      ///< the alpha* assignment used
  Graph with_roots;                  ///< F plus r roots (labels 0..r-1) joined to all of F
  unsigned root_count = 0;
  Graph core;                        ///< H - R
  double target_copies = 0.0;         ///< 2 t M^{alpha*(H-R)}
};

/// Throws ArgumentError when M < 1. `weights`, if given, must be an optimal
/// fractional independence assignment for H - R; otherwise one is computed.
BlowupCertificate blowup_certificate(const RootedGraph& g, EdgeMask h, double t, double M,
                                     std::optional<std::vector<Rational>> weights = std::nullopt);

/// Example families with closed-form M.
enum class ExampleFamily { rooted_clique, bipartite_one_side, rooted_path, rooted_cycle };

struct FamilySpec {
  ExampleFamily family = ExampleFamily::rooted_clique;
  /// clique: k >= 2 vertices; path: k >= 3 vertices; cycle: k >= 3 vertices
  /// (the cycle C_k shares M with the path on k + 1 vertices).
  unsigned k = 3;
  /// bipartite: a roots on one side, b vertices on the other.
  unsigned a = 0;
  unsigned b = 0;
};

/// The rooted graph of a family member: clique rooted at vertex 0,
/// K_{a,b} rooted at its a-side, path rooted at both ends, cycle rooted at 0.
RootedGraph family_graph(const FamilySpec& spec);

/// Closed-form M for the example families.
double closed_form_M(const FamilySpec& spec, double n, double p);

/// The hypergraph whose ground set is the C(n,2) pairs of K_n (pair i is
/// vertex i+1, see pair_index) and whose edges are the edge sets of the
/// rooted copies of G in K_n. X_G^R is its induced count on G(n,p).
/// Throws UnsupportedError if distinct copies share an edge set and
/// CapacityError above `max_copies`.
Hypergraph rooted_copy_hypergraph(const RootedGraph& g, unsigned n,
                                  std::uint64_t max_copies = 1'000'000);

/// Explicit edge set E of K_n with X(E) >= t mu; P(X >= t mu) >= p^{|E|}.
struct RootedCertificate {
  std::vector<Graph::EdgePair> edges;
  double log_prob = 0.0;
  std::string construction;  ///< "blowup", "root_event", "greedy" or "complete"
  std::uint64_t hosted = 0;   ///< copies inside the edge set
};

/// Tries the blow-up graph with roots, the all-root-edges event extended
/// greedily, plain greedy and K_n itself; returns the valid candidate with
/// the fewest edges. Empty when t mu > N^R(K_n, G).
std::optional<RootedCertificate> rooted_lower_certificate(const RootedGraph& g, unsigned n,
                                                          double p, double t,
                                                          const Guards& guards = {});

/// Finite-size envelope for the rooted count at small n: Markov bound via
/// the copy hypergraph, certificate lower bound and regime exponent scales.
BoundEnvelope rooted_envelope(const RootedGraph& g, unsigned n, double p, double t,
                              std::optional<unsigned> m_max = std::nullopt,
                              const Guards& guards = {});

}  // namespace tailkit

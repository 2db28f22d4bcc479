#include "tailkit/rooted.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "tailkit/errors.hpp"

namespace tailkit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Endpoint bitmasks of G's edges, indexed like G.edges().
struct EdgeTable {
  std::vector<std::uint64_t> endpoints;
  std::vector<unsigned> u, v;

  explicit EdgeTable(const Graph& g) {
    for (const auto& [a, b] : g.edges()) {
      u.push_back(a);
      v.push_back(b);
      endpoints.push_back((std::uint64_t{1} << a) | (std::uint64_t{1} << b));
    }
  }
};

std::uint64_t full_mask(std::size_t bits) {
  return bits >= 64 ? ~0ULL : (std::uint64_t{1} << bits) - 1;
}

void check_subgraph_guard(const RootedGraph& g, const Guards& guards) {
  if (g.edge_count() > guards.max_subgraph_edges || g.edge_count() > 62) {
    throw CapacityError("subgraph enumeration over e(G) = " + std::to_string(g.edge_count()) +
                        " edges exceeds the guard of " +
                        std::to_string(guards.max_subgraph_edges));
  }
}

// Sequence order on masks read as ascending lists of edge indices.
bool lex_less(EdgeMask a, EdgeMask b) {
  if (a == b) return false;
  const unsigned i = static_cast<unsigned>(std::countr_zero(a ^ b));
  const std::uint64_t above = i == 63 ? 0 : ~((std::uint64_t{2} << i) - 1);
  if (a >> i & 1) return (b & above) != 0;  // a has i; b continues higher or stops
  return (a & above) == 0;
}

// Backtracking embedder: pattern vertex order by connectivity, roots of the
// pattern restricted to host vertices [0, r), non-roots to [r, n).
class Embedder {
 public:
  Embedder(const Graph& host, unsigned r, const RootedGraph& pattern)
      : host_(host), r_(std::min(r, host.vertex_count())), pattern_(pattern) {
    const unsigned v = pattern.vertex_count();
    std::vector<char> placed(v, 0);
    for (unsigned step = 0; step < v; ++step) {
      int best = -1;
      unsigned best_links = 0, best_degree = 0;
      for (unsigned x = 0; x < v; ++x) {
        if (placed[x]) continue;
        unsigned links = 0;
        for (unsigned y : pattern.graph().neighbors(x)) links += placed[y];
        const unsigned degree = pattern.graph().degree(x);
        if (best < 0 || links > best_links || (links == best_links && degree > best_degree)) {
          best = static_cast<int>(x);
          best_links = links;
          best_degree = degree;
        }
      }
      placed[best] = 1;
      order_.push_back(static_cast<unsigned>(best));
    }
    position_.assign(v, 0);
    for (unsigned i = 0; i < v; ++i) position_[order_[i]] = i;
    earlier_.resize(v);
    for (unsigned i = 0; i < v; ++i) {
      for (unsigned y : pattern.graph().neighbors(order_[i])) {
        if (position_[y] < i) earlier_[i].push_back(y);
      }
    }
    image_.assign(v, 0);
    used_.assign(host.vertex_count(), 0);
  }

  template <typename OnComplete>
  void run(OnComplete&& on_complete) {
    if (pattern_.vertex_count() > host_.vertex_count()) return;
    if (pattern_.root_count() > r_) return;
    if (pattern_.vertex_count() - pattern_.root_count() > host_.vertex_count() - r_) return;
    extend(0, on_complete);
  }

  const std::vector<unsigned>& image() const { return image_; }

 private:
  template <typename OnComplete>
  void extend(unsigned depth, OnComplete& on_complete) {
    if (depth == order_.size()) {
      on_complete(image_);
      return;
    }
    const unsigned x = order_[depth];
    const bool root = pattern_.is_root(x);
    auto try_vertex = [&](unsigned h) {
      if (used_[h] || (root ? h >= r_ : h < r_)) return;
      for (unsigned y : earlier_[depth]) {
        if (!host_.adjacent(h, image_[y])) return;
      }
      used_[h] = 1;
      image_[x] = h;
      extend(depth + 1, on_complete);
      used_[h] = 0;
    };
    if (!earlier_[depth].empty()) {
      for (unsigned h : host_.neighbors(image_[earlier_[depth].front()])) try_vertex(h);
    } else if (root) {
      for (unsigned h = 0; h < r_; ++h) try_vertex(h);
    } else {
      for (unsigned h = r_; h < host_.vertex_count(); ++h) try_vertex(h);
    }
  }

  const Graph& host_;
  unsigned r_;
  const RootedGraph& pattern_;
  std::vector<unsigned> order_;
  std::vector<unsigned> position_;
  std::vector<std::vector<unsigned>> earlier_;
  std::vector<unsigned> image_;
  std::vector<char> used_;
};

double log_pow_ratio(double nonroot_vertices, double edges, double log_n, double log_p) {
  return nonroot_vertices * log_n + edges * log_p;
}

}  // namespace

RootedGraph::RootedGraph(Graph g, std::vector<unsigned> roots)
    : graph_(std::move(g)), roots_(std::move(roots)) {
  if (graph_.vertex_count() > 64) throw CapacityError("rooted graphs support at most 64 vertices");
  std::sort(roots_.begin(), roots_.end());
  roots_.erase(std::unique(roots_.begin(), roots_.end()), roots_.end());
  for (unsigned r : roots_) {
    if (r >= graph_.vertex_count()) throw ArgumentError("root outside the vertex set");
    root_mask_ |= std::uint64_t{1} << r;
  }
  std::ostringstream offending;
  bool independent = true;
  for (const auto& [u, v] : graph_.edges()) {
    const bool ru = is_root(u), rv = is_root(v);
    if (ru && rv) {
      offending << (independent ? "" : ", ") << u + 1 << '-' << v + 1;
      independent = false;
    }
    rooted_edge_count_ += ru || rv;
  }
  if (!independent) {
    throw ValidationError("root set is not independent; edges inside R: " + offending.str());
  }
}

Graph RootedGraph::without_roots() const {
  std::vector<int> label(vertex_count(), -1);
  unsigned next = 0;
  for (unsigned v = 0; v < vertex_count(); ++v) {
    if (!is_root(v)) label[v] = static_cast<int>(next++);
  }
  std::vector<Graph::EdgePair> edges;
  for (const auto& [u, v] : graph_.edges()) {
    if (label[u] >= 0 && label[v] >= 0) {
      edges.emplace_back(static_cast<unsigned>(label[u]), static_cast<unsigned>(label[v]));
    }
  }
  return Graph(next, std::move(edges));
}

SubgraphProfile subgraph_profile(const RootedGraph& g, EdgeMask mask) {
  if (mask & ~full_mask(g.edge_count())) throw ArgumentError("edge mask names edges outside G");
  const EdgeTable table(g.graph());
  std::uint64_t vertices = 0;
  std::array<std::uint64_t, 64> adj{};
  for (std::uint64_t rest = mask; rest; rest &= rest - 1) {
    const unsigned i = static_cast<unsigned>(std::countr_zero(rest));
    vertices |= table.endpoints[i];
    if (!g.is_root(table.u[i]) && !g.is_root(table.v[i])) {
      adj[table.u[i]] |= std::uint64_t{1} << table.v[i];
      adj[table.v[i]] |= std::uint64_t{1} << table.u[i];
    }
  }
  const std::uint64_t core = vertices & ~g.root_mask();
  SubgraphProfile profile;
  profile.nonroot_vertices = static_cast<unsigned>(std::popcount(core));
  profile.edges = static_cast<unsigned>(std::popcount(mask));
  profile.alpha_star = Rational(twice_fractional_independence(adj, core), 2);
  return profile;
}

double psi(unsigned nonroot_vertices, unsigned edges, double n, double p) {
  return std::pow(n, nonroot_vertices) * std::pow(p, edges);
}

double psi(const RootedGraph& g, EdgeMask mask, double n, double p) {
  const auto profile = subgraph_profile(g, mask);
  return psi(profile.nonroot_vertices, profile.edges, n, p);
}

Rational rooted_density(const RootedGraph& g, const Guards& guards) {
  if (g.edge_count() == 0) throw ArgumentError("rooted density needs e(G) > 0");
  check_subgraph_guard(g, guards);
  const EdgeTable table(g.graph());
  const std::uint64_t limit = std::uint64_t{1} << g.edge_count();
  std::int64_t best_e = 0, best_v = 1;
  for (EdgeMask mask = 1; mask < limit; ++mask) {
    std::uint64_t vertices = 0;
    for (std::uint64_t rest = mask; rest; rest &= rest - 1) {
      vertices |= table.endpoints[std::countr_zero(rest)];
    }
    const std::int64_t e = std::popcount(mask);
    const std::int64_t v = std::popcount(vertices & ~g.root_mask());
    if (e * best_v > best_e * v) {
      best_e = e;
      best_v = v;
    }
  }
  return Rational(best_e, best_v);
}

ExponentBase min_exponent_base(const RootedGraph& g, double n, double p, const Guards& guards) {
  if (g.edge_count() == 0) throw ArgumentError("M needs e(G) > 0");
  if (!(p > 0.0 && p <= 1.0)) throw ArgumentError("M needs 0 < p <= 1");
  if (!(n >= g.vertex_count())) throw ArgumentError("M needs n >= v(G)");
  check_subgraph_guard(g, guards);
  const EdgeTable table(g.graph());
  const double log_n = std::log(n);
  const double log_p = std::log(p);
  const std::uint64_t limit = std::uint64_t{1} << g.edge_count();

  ExponentBase best;
  bool have = false;
  std::array<std::uint64_t, 64> adj{};
  for (EdgeMask mask = 1; mask < limit; ++mask) {
    std::uint64_t vertices = 0;
    for (std::uint64_t m = mask; m; m &= m - 1) vertices |= table.endpoints[std::countr_zero(m)];
    const std::uint64_t core = vertices & ~g.root_mask();
    for (std::uint64_t rest = core; rest; rest &= rest - 1) adj[std::countr_zero(rest)] = 0;
    for (std::uint64_t m = mask; m; m &= m - 1) {
      const unsigned i = static_cast<unsigned>(std::countr_zero(m));
      if (!g.is_root(table.u[i]) && !g.is_root(table.v[i])) {
        adj[table.u[i]] |= std::uint64_t{1} << table.v[i];
        adj[table.v[i]] |= std::uint64_t{1} << table.u[i];
      }
    }
    const unsigned twice = twice_fractional_independence(adj, core);
    const unsigned v = static_cast<unsigned>(std::popcount(core));
    const unsigned e = static_cast<unsigned>(std::popcount(mask));
    const double log_value = 2.0 * log_pow_ratio(v, e, log_n, log_p) / twice;
    const double tol = 1e-12 * std::max(1.0, std::fabs(best.log_value));
    if (!have || log_value < best.log_value - tol ||
        (std::fabs(log_value - best.log_value) <= tol && lex_less(mask, best.argmin))) {
      have = true;
      best.log_value = log_value;
      best.argmin = mask;
      best.profile = {v, e, Rational(twice, 2)};
    }
  }
  best.value = std::exp(best.log_value);
  return best;
}

std::uint64_t count_rooted_embeddings(const Graph& host, unsigned r, const RootedGraph& g) {
  Embedder embedder(host, r, g);
  std::uint64_t count = 0;
  embedder.run([&](const std::vector<unsigned>&) { ++count; });
  return count;
}

std::uint64_t rooted_automorphisms(const RootedGraph& g) {
  // Relabel so that the roots come first, then embed G into itself.
  std::vector<unsigned> label(g.vertex_count());
  unsigned next = 0;
  for (unsigned v : g.roots()) label[v] = next++;
  for (unsigned v = 0; v < g.vertex_count(); ++v) {
    if (!g.is_root(v)) label[v] = next++;
  }
  std::vector<Graph::EdgePair> edges;
  for (const auto& [u, v] : g.graph().edges()) edges.emplace_back(label[u], label[v]);
  const Graph host(g.vertex_count(), std::move(edges));
  return count_rooted_embeddings(host, g.root_count(), g);
}

std::uint64_t count_rooted_copies(const Graph& host, unsigned r, const RootedGraph& g) {
  const std::uint64_t embeddings = count_rooted_embeddings(host, r, g);
  const std::uint64_t automorphisms = rooted_automorphisms(g);
  if (embeddings % automorphisms != 0) {
    throw ConsistencyError("embedding count is not a multiple of |Aut(R, G)|");
  }
  return embeddings / automorphisms;
}

std::vector<RootedCopy> enumerate_rooted_copies(const Graph& host, unsigned r,
                                                const RootedGraph& g) {
  Embedder embedder(host, r, g);
  std::set<RootedCopy> copies;
  embedder.run([&](const std::vector<unsigned>& image) {
    RootedCopy copy;
    copy.vertices = image;
    std::sort(copy.vertices.begin(), copy.vertices.end());
    for (const auto& [u, v] : g.graph().edges()) {
      copy.edges.emplace_back(std::min(image[u], image[v]), std::max(image[u], image[v]));
    }
    std::sort(copy.edges.begin(), copy.edges.end());
    copies.insert(std::move(copy));
  });
  return {copies.begin(), copies.end()};
}

std::uint64_t count_copies(const Graph& host, const Graph& pattern) {
  return count_rooted_copies(host, 0, RootedGraph(pattern, {}));
}

BigInt complete_rooted_copies(std::uint64_t n, const RootedGraph& g) {
  const std::uint64_t v = g.vertex_count();
  const std::uint64_t r = g.root_count();
  if (n < v) return 0;
  const BigInt embeddings = falling_factorial(r, r) * falling_factorial(n - r, v - r);
  const BigInt automorphisms = rooted_automorphisms(g);
  if (embeddings % automorphisms != 0) {
    throw ConsistencyError("closed-form embedding count is not a multiple of |Aut(R, G)|");
  }
  return embeddings / automorphisms;
}

BigInt complete_copies(std::uint64_t n, const Graph& pattern) {
  return complete_rooted_copies(n, RootedGraph(pattern, {}));
}

double rooted_mean(const RootedGraph& g, std::uint64_t n, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw ArgumentError("probability must lie in [0, 1]");
  if (n < g.vertex_count()) return 0.0;
  return to_double(complete_rooted_copies(n, g)) * std::pow(p, g.edge_count());
}

std::uint64_t extension_multiplicity(const RootedGraph& g, std::uint64_t n) {
  if (n < g.vertex_count()) throw ArgumentError("extension multiplicity needs n >= v(G)");
  if (g.rooted_edge_count() == 0) {
    throw UnsupportedError("extension multiplicity needs e_R(G) > 0");
  }
  const Graph core = g.without_roots();
  const unsigned r = g.root_count();
  auto ratio_at = [&](std::uint64_t m) -> BigInt {
    BigInt rooted, plain;
    // Small hosts are counted by explicit backtracking; large ones in closed form.
    if (falling_factorial(m, g.vertex_count()) <= 1'000'000) {
      const auto host_n = static_cast<unsigned>(m);
      rooted = count_rooted_copies(Graph::complete(host_n), r, g);
      plain = count_copies(Graph::complete(host_n - r), core);
    } else {
      rooted = complete_rooted_copies(m, g);
      plain = complete_copies(m - r, core);
    }
    if (plain == 0 || rooted % plain != 0) {
      throw ConsistencyError("N^R(K_n, G) is not a multiple of N(K_{n-r}, G - R)");
    }
    return rooted / plain;
  };
  const BigInt g_n = ratio_at(n);
  if (ratio_at(n + 1) != g_n) {
    throw ConsistencyError("extension multiplicity depends on n");
  }
  return g_n.convert_to<std::uint64_t>();
}

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::a:
      return "a";
    case Regime::b:
      return "b";
    case Regime::c:
      return "c";
    case Regime::d:
      return "d";
  }
  return "?";
}

RegimeReport classify_regime(const RootedGraph& g, std::uint64_t n, double p, double t,
                             const Guards& guards) {
  if (g.rooted_edge_count() == 0) {
    throw UnsupportedError(
        "e_R(G) = 0: the rooted count equals an unrooted count of G - R; use unrooted analysis");
  }
  if (!(t > 1.0)) throw ArgumentError("regime classification needs t > 1");
  if (!(p > 0.0 && p <= 1.0)) throw ArgumentError("regime classification needs 0 < p <= 1");
  if (n < g.vertex_count()) throw ArgumentError("regime classification needs n >= v(G)");

  RegimeReport report;
  report.rooted_density = rooted_density(g, guards);
  const double m_r = to_double(report.rooted_density);
  const double log_n = std::log(static_cast<double>(n));
  report.threshold = std::exp(-log_n / m_r);
  report.p1 = std::pow(t, -1.0 / g.rooted_edge_count());
  report.p2 = std::pow(t, -1.0 / g.edge_count());
  report.complete_copies = complete_rooted_copies(n, g);
  report.mu = rooted_mean(g, n, p);
  report.M = min_exponent_base(g, static_cast<double>(n), p, guards).value;

  const double log_p = std::log(p);
  if (std::log(t) + g.edge_count() * log_p > 0.0) {
    report.regime = Regime::d;
    report.tail_is_zero = true;
    report.lower_exponent_scale = kInf;
    report.upper_exponent_scale = kInf;
  } else if (p < report.threshold) {
    report.regime = Regime::a;
    report.lower_exponent_scale = -log_p;
    report.upper_exponent_scale = 1.0;
  } else if (p <= report.p1) {
    report.regime = Regime::b;
    report.lower_exponent_scale = report.M * -log_p;
    report.upper_exponent_scale = report.M;
  } else {
    report.regime = Regime::c;
    const double nn = static_cast<double>(n);
    const double gap = p - report.p1;
    report.lower_exponent_scale = nn + gap * gap * nn * nn;
    report.upper_exponent_scale = report.lower_exponent_scale;
  }
  return report;
}

BlowupCertificate blowup_certificate(const RootedGraph& g, EdgeMask h, double t, double M,
                                     std::optional<std::vector<Rational>> weights) {
  if (!(M >= 1.0)) throw ArgumentError("blow-up certificate needs M >= 1 (below threshold)");
  if (!(t > 1.0)) throw ArgumentError("blow-up certificate needs t > 1");
  if (h == 0 || (h & ~full_mask(g.edge_count()))) {
    throw ArgumentError("blow-up certificate needs a nonempty subgraph of G");
  }
  const EdgeTable table(g.graph());
  std::uint64_t vertices = 0;
  for (std::uint64_t m = h; m; m &= m - 1) vertices |= table.endpoints[std::countr_zero(m)];
  const std::uint64_t core_mask = vertices & ~g.root_mask();
  std::vector<int> label(g.vertex_count(), -1);
  unsigned core_n = 0;
  for (unsigned v = 0; v < g.vertex_count(); ++v) {
    if (core_mask >> v & 1) label[v] = static_cast<int>(core_n++);
  }
  std::vector<Graph::EdgePair> core_edges;
  for (std::uint64_t m = h; m; m &= m - 1) {
    const unsigned i = static_cast<unsigned>(std::countr_zero(m));
    if (label[table.u[i]] >= 0 && label[table.v[i]] >= 0) {
      core_edges.emplace_back(label[table.u[i]], label[table.v[i]]);
    }
  }

  BlowupCertificate cert;
  cert.core = Graph(core_n, std::move(core_edges));
  const auto optimum = fractional_independence(cert.core);
  if (weights) {
    if (weights->size() != core_n) throw ArgumentError("weights must cover every vertex of H - R");
    Rational sum(0);
    for (const auto& x : *weights) {
      if (x < Rational(0) || x > Rational(1)) throw ArgumentError("weights must lie in [0, 1]");
      sum += x;
    }
    for (const auto& [u, v] : cert.core.edges()) {
      if ((*weights)[u] + (*weights)[v] > Rational(1)) {
        throw ArgumentError("weights violate x_i + x_j <= 1 on an edge of H - R");
      }
    }
    if (sum != optimum.value) throw ArgumentError("weights are not an optimal assignment");
    cert.weights = std::move(*weights);
  } else {
    cert.weights = optimum.weights;
  }

  std::vector<unsigned> offset(core_n + 1, 0);
  for (unsigned i = 0; i < core_n; ++i) {
    const double size = std::ceil(2.0 * t * std::pow(M, to_double(cert.weights[i])));
    cert.class_sizes.push_back(static_cast<unsigned>(size));
    offset[i + 1] = offset[i] + cert.class_sizes.back();
  }
  const unsigned total = offset[core_n];
  const double allowed = 3.0 * (g.vertex_count() - g.root_count()) * t * M;
  if (static_cast<double>(total) > allowed) {
    throw ConsistencyError("blow-up exceeds 3 (v_G - r) t M vertices");
  }
  std::vector<Graph::EdgePair> edges;
  for (const auto& [u, v] : cert.core.edges()) {
    for (unsigned a = offset[u]; a < offset[u + 1]; ++a) {
      for (unsigned b = offset[v]; b < offset[v + 1]; ++b) edges.emplace_back(a, b);
    }
  }
  cert.blowup = Graph(total, edges);

  cert.root_count = g.root_count();
  const unsigned r = cert.root_count;
  std::vector<Graph::EdgePair> rooted_edges;
  for (const auto& [a, b] : edges) rooted_edges.emplace_back(a + r, b + r);
  for (unsigned root = 0; root < r; ++root) {
    for (unsigned x = 0; x < total; ++x) rooted_edges.emplace_back(root, x + r);
  }
  cert.with_roots = Graph(r + total, std::move(rooted_edges));
  cert.target_copies = 2.0 * t * std::pow(M, to_double(optimum.value));
  return cert;
}

RootedGraph family_graph(const FamilySpec& spec) {
  switch (spec.family) {
    case ExampleFamily::rooted_clique:
      if (spec.k < 2) throw ArgumentError("rooted clique needs k >= 2");
      return RootedGraph(Graph::complete(spec.k), {0});
    case ExampleFamily::bipartite_one_side: {
      if (spec.a < 1 || spec.b < 1) throw ArgumentError("bipartite family needs a, b >= 1");
      std::vector<Graph::EdgePair> edges;
      std::vector<unsigned> roots;
      for (unsigned i = 0; i < spec.a; ++i) {
        roots.push_back(i);
        for (unsigned j = 0; j < spec.b; ++j) edges.emplace_back(i, spec.a + j);
      }
      return RootedGraph(Graph(spec.a + spec.b, std::move(edges)), std::move(roots));
    }
    case ExampleFamily::rooted_path: {
      if (spec.k < 3) throw ArgumentError("rooted path needs k >= 3 vertices");
      std::vector<Graph::EdgePair> edges;
      for (unsigned i = 0; i + 1 < spec.k; ++i) edges.emplace_back(i, i + 1);
      return RootedGraph(Graph(spec.k, std::move(edges)), {0, spec.k - 1});
    }
    case ExampleFamily::rooted_cycle: {
      if (spec.k < 3) throw ArgumentError("rooted cycle needs k >= 3 vertices");
      std::vector<Graph::EdgePair> edges;
      for (unsigned i = 0; i < spec.k; ++i) edges.emplace_back(i, (i + 1) % spec.k);
      return RootedGraph(Graph(spec.k, std::move(edges)), {0});
    }
  }
  throw ArgumentError("unknown example family");
}

double closed_form_M(const FamilySpec& spec, double n, double p) {
  if (!(p > 0.0 && p <= 1.0) || !(n > 0.0)) throw ArgumentError("closed form needs n > 0, 0 < p <= 1");
  const double log_n = std::log(n);
  const double log_p = std::log(p);
  switch (spec.family) {
    case ExampleFamily::rooted_clique: {
      if (spec.k < 2) throw ArgumentError("rooted clique needs k >= 2");
      const double single_edge = log_n + log_p;
      // K_2 rooted at a vertex is a single rooted edge; alpha*(K_1) = 1.
      if (spec.k == 2) return std::exp(single_edge);
      return std::exp(std::min(single_edge, 2.0 * log_n + spec.k * log_p));
    }
    case ExampleFamily::bipartite_one_side:
      if (spec.a < 1 || spec.b < 1) throw ArgumentError("bipartite family needs a, b >= 1");
      // Every S-vertex has degree a = |R|.
      return std::exp(log_n + spec.a * log_p);
    case ExampleFamily::rooted_path:
    case ExampleFamily::rooted_cycle: {
      const unsigned k = spec.family == ExampleFamily::rooted_path ? spec.k : spec.k + 1;
      if (spec.k < 3 || k < 3) throw ArgumentError("path family needs k >= 3");
      auto half_up = [](unsigned x) { return static_cast<double>((x + 1) / 2); };
      double best = ((k - 2) * log_n + (k - 1) * log_p) / half_up(k - 2);
      for (unsigned l = 1; l + 3 <= k; ++l) {
        best = std::min(best, l * (log_n + log_p) / half_up(l));
      }
      return std::exp(best);
    }
  }
  throw ArgumentError("unknown example family");
}

Hypergraph rooted_copy_hypergraph(const RootedGraph& g, unsigned n, std::uint64_t max_copies) {
  if (g.edge_count() == 0) throw ArgumentError("copy hypergraph needs e(G) > 0");
  if (n < g.vertex_count()) throw ArgumentError("copy hypergraph needs n >= v(G)");
  if (complete_rooted_copies(n, g) > max_copies) {
    throw CapacityError("too many rooted copies to enumerate");
  }
  const auto copies = enumerate_rooted_copies(Graph::complete(n), g.root_count(), g);
  std::vector<Edge> edges;
  edges.reserve(copies.size());
  for (const auto& copy : copies) {
    Edge e;
    for (const auto& [u, v] : copy.edges) e.push_back(pair_index(n, u, v) + 1);
    std::sort(e.begin(), e.end());
    edges.push_back(std::move(e));
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
    throw UnsupportedError("distinct rooted copies share an edge set (isolated vertices in G)");
  }
  return Hypergraph(n * (n - 1) / 2, g.edge_count(), std::move(edges));
}

std::optional<RootedCertificate> rooted_lower_certificate(const RootedGraph& g, unsigned n,
                                                          double p, double t,
                                                          const Guards& guards) {
  if (!(p > 0.0 && p <= 1.0)) throw ArgumentError("rooted certificate needs 0 < p <= 1");
  if (!(t > 1.0)) throw ArgumentError("rooted certificate needs t > 1");
  const Hypergraph copies = rooted_copy_hypergraph(g, n);
  const double need = t * expected_count(copies, p);
  if (need > static_cast<double>(copies.size())) return std::nullopt;

  const unsigned pairs = n * (n - 1) / 2;
  std::vector<std::pair<std::string, std::vector<Vertex>>> candidates;

  if (p < 1.0 && g.rooted_edge_count() > 0) {
    const auto base = min_exponent_base(g, n, p, guards);
    if (base.value >= 1.0) {
      const auto blow = blowup_certificate(g, base.argmin, t, base.value);
      if (blow.with_roots.vertex_count() <= n) {
        std::vector<Vertex> ids;
        for (const auto& [u, v] : blow.with_roots.edges()) ids.push_back(pair_index(n, u, v) + 1);
        candidates.emplace_back("blowup", std::move(ids));
      }
    }
  }
  {
    std::vector<Vertex> root_edges;
    for (unsigned root = 0; root < g.root_count(); ++root) {
      for (unsigned x = g.root_count(); x < n; ++x) root_edges.push_back(pair_index(n, root, x) + 1);
    }
    if (auto set = greedy_certificate(copies, p, t, pairs, root_edges)) {
      candidates.emplace_back("root_event", std::move(*set));
    }
  }
  if (auto set = greedy_certificate(copies, p, t, pairs)) {
    candidates.emplace_back("greedy", std::move(*set));
  }
  {
    std::vector<Vertex> all(pairs);
    for (unsigned i = 0; i < pairs; ++i) all[i] = i + 1;
    candidates.emplace_back("complete", std::move(all));
  }

  std::optional<RootedCertificate> best;
  for (auto& [name, ids] : candidates) {
    std::sort(ids.begin(), ids.end());
    const std::uint64_t hosted = induced_count(copies, ids);
    if (static_cast<double>(hosted) < need) continue;
    if (best && best->edges.size() <= ids.size()) continue;
    RootedCertificate cert;
    cert.construction = name;
    cert.hosted = hosted;
    cert.log_prob = static_cast<double>(ids.size()) * std::log(p);
    // Translate pair ids back to vertex pairs.
    std::vector<Graph::EdgePair> lookup;
    for (unsigned u = 0; u < n; ++u) {
      for (unsigned v = u + 1; v < n; ++v) lookup.emplace_back(u, v);
    }
    for (Vertex id : ids) cert.edges.push_back(lookup[id - 1]);
    best = std::move(cert);
  }
  return best;
}

BoundEnvelope rooted_envelope(const RootedGraph& g, unsigned n, double p, double t,
                              std::optional<unsigned> m_max, const Guards& guards) {
  const Hypergraph copies = rooted_copy_hypergraph(g, n);
  const auto regime = classify_regime(g, n, p, t, guards);
  BoundEnvelope env;
  env.mu = expected_count(copies, p);
  env.t = t;
  env.q = 0.0;
  const unsigned limit = m_max.value_or(static_cast<unsigned>(
      std::clamp(std::ceil(2.0 * std::max(regime.M, 1.0)), 1.0, 1e4)));
  const auto markov = markov_tail_upper(copies, p, t, limit);
  env.upper_tail_bound = markov.bound;
  env.log_upper_tail_bound = markov.log_bound;
  env.optimal_m = markov.optimal_m;
  env.lower_exponent_scale = regime.lower_exponent_scale;
  env.upper_exponent_scale = regime.upper_exponent_scale;
  env.in_interesting_range =
      env.mu >= 1.0 && std::log(t) + g.edge_count() * std::log(p) <= 0.0;
  env.p = p;
  if (auto cert = rooted_lower_certificate(g, n, p, t, guards)) {
    env.lower_log_prob = cert->log_prob;
    env.certificate_size = cert->edges.size();
  }
  return env;
}

}  // namespace tailkit

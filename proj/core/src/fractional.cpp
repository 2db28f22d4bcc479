#include "tailkit/fractional.hpp"

#include <array>
#include <bit>

#include "tailkit/errors.hpp"

namespace tailkit {

namespace {

// Maximum matching in the double cover: left copy u is joined to right copy
// v for every edge uv. Kuhn's augmenting paths on bitmasks.
struct CoverMatching {
  std::span<const std::uint64_t> adj;
  std::uint64_t vertices;
  std::array<int, 64> match_left{};
  std::array<int, 64> match_right{};
  std::uint64_t visited = 0;

  CoverMatching(std::span<const std::uint64_t> adjacency, std::uint64_t verts)
      : adj(adjacency), vertices(verts) {
    match_left.fill(-1);
    match_right.fill(-1);
  }

  bool augment(unsigned u) {
    std::uint64_t candidates = adj[u] & vertices & ~visited;
    while (candidates) {
      const unsigned v = static_cast<unsigned>(std::countr_zero(candidates));
      candidates &= candidates - 1;
      if (visited >> v & 1) continue;
      visited |= std::uint64_t{1} << v;
      if (match_right[v] < 0 || augment(static_cast<unsigned>(match_right[v]))) {
        match_right[v] = static_cast<int>(u);
        match_left[u] = static_cast<int>(v);
        return true;
      }
    }
    return false;
  }

  unsigned solve() {
    unsigned size = 0;
    for (std::uint64_t rest = vertices; rest; rest &= rest - 1) {
      const unsigned u = static_cast<unsigned>(std::countr_zero(rest));
      visited = 0;
      size += augment(u);
    }
    return size;
  }

  // Konig: Z = vertices reachable from unmatched left vertices by alternating
  // paths. Max independent set = (L & Z) | (R \ Z). Returns (left_in, right_in).
  std::pair<std::uint64_t, std::uint64_t> independent_set() const {
    std::uint64_t z_left = 0, z_right = 0;
    std::uint64_t frontier = 0;
    for (std::uint64_t rest = vertices; rest; rest &= rest - 1) {
      const unsigned u = static_cast<unsigned>(std::countr_zero(rest));
      if (match_left[u] < 0) frontier |= std::uint64_t{1} << u;
    }
    while (frontier) {
      z_left |= frontier;
      std::uint64_t reached_right = 0;
      for (std::uint64_t rest = frontier; rest; rest &= rest - 1) {
        const unsigned u = static_cast<unsigned>(std::countr_zero(rest));
        reached_right |= adj[u] & vertices;
      }
      reached_right &= ~z_right;
      z_right |= reached_right;
      std::uint64_t next = 0;
      for (std::uint64_t rest = reached_right; rest; rest &= rest - 1) {
        const unsigned v = static_cast<unsigned>(std::countr_zero(rest));
        if (match_right[v] >= 0) next |= std::uint64_t{1} << match_right[v];
      }
      frontier = next & ~z_left;
    }
    return {z_left & vertices, vertices & ~z_right};
  }
};

}  // namespace

unsigned twice_fractional_independence(std::span<const std::uint64_t> adjacency,
                                       std::uint64_t vertices) {
  CoverMatching matching(adjacency, vertices);
  const unsigned matched = matching.solve();
  return 2 * static_cast<unsigned>(std::popcount(vertices)) - matched;
}

FractionalIndependence fractional_independence(const Graph& g) {
  const unsigned n = g.vertex_count();
  if (n > 64) throw CapacityError("fractional independence supports at most 64 vertices");
  FractionalIndependence out{Rational(0), std::vector<Rational>(n, Rational(0))};
  if (n == 0) return out;
  const auto adjacency = g.adjacency_masks();
  const std::uint64_t all = n == 64 ? ~0ULL : (std::uint64_t{1} << n) - 1;
  CoverMatching matching(adjacency, all);
  const unsigned matched = matching.solve();
  const auto [left_in, right_in] = matching.independent_set();
  std::int64_t twice = 0;
  for (unsigned i = 0; i < n; ++i) {
    const int halves = static_cast<int>(left_in >> i & 1) + static_cast<int>(right_in >> i & 1);
    out.weights[i] = Rational(halves, 2);
    twice += halves;
  }
  if (twice != static_cast<std::int64_t>(2 * n - matched)) {
    throw ConsistencyError("Konig construction disagrees with the matching size");
  }
  out.value = Rational(twice, 2);
  return out;
}

}  // namespace tailkit

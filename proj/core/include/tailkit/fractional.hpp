#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tailkit/graph.hpp"
#include "tailkit/numeric.hpp"

namespace tailkit {

/// Optimal solution of max sum x_i s.t. 0 <= x_i <= 1, x_i + x_j <= 1 on edges.
struct FractionalIndependence {
  Rational value;                ///< alpha*(G)
  std::vector<Rational> weights;  ///< optimal x, each in {0, 1/2, 1}
};

/// alpha*(G), exact.
///
/// Solved on the bipartite double cover B(G): a maximum matching gives a
/// maximum independent set I of B(G) by Konig's theorem, and
/// x_i = |{i_L, i_R} & I| / 2 is optimal with alpha* = |I| / 2.
FractionalIndependence fractional_independence(const Graph& g);

/// Twice alpha* of the subgraph induced by `vertices` on bitmask adjacency
/// `adjacency` (n <= 64), keeping only edges inside `vertices`. Allocation-free
/// fast path for exhaustive subgraph sweeps.
unsigned twice_fractional_independence(std::span<const std::uint64_t> adjacency,
                                       std::uint64_t vertices);

}  // namespace tailkit

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace tailkit {

/// Simple undirected graph on vertices 0..n-1 (files and reports use 1..n).
///
/// Edges are stored as (u, v) with u < v in lexicographic order, so edge
/// index order is stable and doubles as the lexicographic order used for
/// tie-breaking over edge subsets.
class Graph {
 public:
  using EdgePair = std::pair<unsigned, unsigned>;

  Graph() = default;
  explicit Graph(unsigned vertex_count);
  /// Throws ArgumentError on loops, repeated edges or out-of-range endpoints.
  Graph(unsigned vertex_count, std::vector<EdgePair> edges);

  static Graph complete(unsigned n);

  unsigned vertex_count() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<EdgePair>& edges() const noexcept { return edges_; }
  const std::vector<unsigned>& neighbors(unsigned v) const { return adjacency_[v]; }
  unsigned degree(unsigned v) const { return static_cast<unsigned>(adjacency_[v].size()); }
  bool adjacent(unsigned u, unsigned v) const { return matrix_[u * n_ + v] != 0; }

  /// Adjacency rows as bitmasks; requires n <= 64.
  std::vector<std::uint64_t> adjacency_masks() const;

  /// Reads "n" then one edge "u v" per line (1-indexed); '#' lines are comments.
  static Graph parse(std::istream& in);
  static Graph load(const std::string& path);
  void write(std::ostream& out) const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  unsigned n_ = 0;
  std::vector<EdgePair> edges_;
  std::vector<std::vector<unsigned>> adjacency_;
  std::vector<char> matrix_;
};

/// Index of pair {u, v} (u != v) among the C(n,2) pairs of [n] in
/// lexicographic order.
unsigned pair_index(unsigned n, unsigned u, unsigned v);

}  // namespace tailkit

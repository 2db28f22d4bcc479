#include "tailkit/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "tailkit/errors.hpp"

namespace tailkit {

Graph::Graph(unsigned vertex_count) : Graph(vertex_count, {}) {}

Graph::Graph(unsigned vertex_count, std::vector<EdgePair> edges)
    : n_(vertex_count),
      edges_(std::move(edges)),
      adjacency_(vertex_count),
      matrix_(static_cast<std::size_t>(vertex_count) * vertex_count, 0) {
  for (auto& [u, v] : edges_) {
    if (u == v) throw ArgumentError("graph edge is a loop");
    if (u >= n_ || v >= n_) throw ArgumentError("graph edge endpoint out of range");
    if (u > v) std::swap(u, v);
  }
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) {
    throw ArgumentError("graph has a repeated edge");
  }
  for (const auto& [u, v] : edges_) {
    adjacency_[u].push_back(v);
    adjacency_[v].push_back(u);
    matrix_[u * n_ + v] = matrix_[v * n_ + u] = 1;
  }
  for (auto& row : adjacency_) std::sort(row.begin(), row.end());
}

Graph Graph::complete(unsigned n) {
  std::vector<EdgePair> edges;
  edges.reserve(static_cast<std::size_t>(n) * (n ? n - 1 : 0) / 2);
  for (unsigned u = 0; u < n; ++u) {
    for (unsigned v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  }
  return Graph(n, std::move(edges));
}

std::vector<std::uint64_t> Graph::adjacency_masks() const {
  if (n_ > 64) throw CapacityError("bitmask adjacency requires at most 64 vertices");
  std::vector<std::uint64_t> masks(n_, 0);
  for (const auto& [u, v] : edges_) {
    masks[u] |= std::uint64_t{1} << v;
    masks[v] |= std::uint64_t{1} << u;
  }
  return masks;
}

Graph Graph::parse(std::istream& in) {
  std::string line;
  long long n = -1;
  std::vector<EdgePair> edges;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream row(line);
    if (n < 0) {
      if (!(row >> n) || n < 1) {
        throw ParseError("line " + std::to_string(line_no) + ": expected vertex count");
      }
      continue;
    }
    long long u = 0, v = 0;
    std::string extra;
    if (!(row >> u >> v) || (row >> extra)) {
      throw ParseError("line " + std::to_string(line_no) + ": expected \"u v\"");
    }
    if (u < 1 || v < 1 || u > n || v > n) {
      throw ParseError("line " + std::to_string(line_no) + ": endpoint outside [1, n]");
    }
    edges.emplace_back(static_cast<unsigned>(u - 1), static_cast<unsigned>(v - 1));
  }
  if (n < 0) throw ParseError("missing vertex count");
  try {
    return Graph(static_cast<unsigned>(n), std::move(edges));
  } catch (const ArgumentError& err) {
    throw ParseError(err.what());
  }
}

Graph Graph::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return parse(in);
}

void Graph::write(std::ostream& out) const {
  out << n_ << '\n';
  for (const auto& [u, v] : edges_) out << u + 1 << ' ' << v + 1 << '\n';
}

unsigned pair_index(unsigned n, unsigned u, unsigned v) {
  if (u > v) std::swap(u, v);
  // Pairs (0,1..n-1), (1,2..n-1), ...: row u starts after u rows of shrinking length.
  return u * (2 * n - u - 1) / 2 + (v - u - 1);
}

}  // namespace tailkit

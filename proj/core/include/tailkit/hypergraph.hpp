#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "tailkit/numeric.hpp"

namespace tailkit {

/// Ground-set elements are 1-indexed: a hypergraph on N vertices uses {1..N}.
using Vertex = std::uint32_t;

/// A hyperedge, stored sorted ascending.
using Edge = std::vector<Vertex>;

/// A k-uniform hypergraph over the ground set [N].
///
/// Edges are canonicalised (sorted, duplicates removed) on construction and
/// kept in lexicographic order, so iteration order and reports are stable.
/// Immutable after construction.
class Hypergraph {
 public:
  /// Throws ArgumentError if an edge has the wrong size, repeats a vertex or
  /// leaves [1, N]. Duplicate edges collapse.
  Hypergraph(std::uint32_t ground_size, std::uint32_t uniformity, std::vector<Edge> edges);

  std::uint32_t ground_size() const noexcept { return ground_size_; }
  std::uint32_t uniformity() const noexcept { return uniformity_; }
  std::size_t size() const noexcept { return edges_.size(); }
  bool empty() const noexcept { return edges_.empty(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  /// |H| / N^q for a caller-supplied exponent q.
  double density(double q) const;

  /// Edge i as a bitmask with bit (v-1) set for every v in the edge.
  /// Requires N <= 64.
  std::vector<std::uint64_t> edge_masks() const;

  /// Reads "N k" followed by one edge per line; '#' lines are comments.
  static Hypergraph parse(std::istream& in);
  static Hypergraph load(const std::string& path);
  void write(std::ostream& out) const;

  friend bool operator==(const Hypergraph&, const Hypergraph&) = default;

 private:
  std::uint32_t ground_size_;
  std::uint32_t uniformity_;
  std::vector<Edge> edges_;
};

/// One realisation of the binomial random subset Gamma_p of [N].
struct SubsetSample {
  std::vector<Vertex> members;
  double p = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t trial_index = 0;
};

/// Delta_j: the largest number of edges through any j-set of vertices.
/// Computed by tallying the j-subsets of every edge.
std::uint64_t degree_bound(const Hypergraph& h, unsigned j);

/// Delta_0 .. Delta_k in one pass.
std::vector<std::uint64_t> degree_profile(const Hypergraph& h);

/// mu = |H| p^k.
double expected_count(const Hypergraph& h, double p);

/// Number of edges entirely inside `subset`.
std::uint64_t induced_count(const Hypergraph& h, std::span<const Vertex> subset);

/// Includes each element of [N] independently with probability p, using the
/// counter stream keyed on (seed, trial_index).
SubsetSample sample_subset(std::uint32_t ground_size, double p, std::uint64_t seed,
                           std::uint64_t trial_index);

/// Joint histogram of (|S|, number of edges inside S) over all 2^N subsets S.
///
/// The table does not depend on p, so one enumeration answers tail and
/// moment queries for every p. Edge masks may repeat (multiset families).
class SubsetCensus {
 public:
  static SubsetCensus enumerate(unsigned ground_size, std::span<const std::uint64_t> edge_masks,
                                const Guards& guards = {});
  static SubsetCensus enumerate(const Hypergraph& h, const Guards& guards = {});

  unsigned ground_size() const noexcept { return ground_size_; }
  std::uint64_t max_count() const noexcept { return max_count_; }

  /// Number of subsets S with |S| = size hosting exactly `count` edges.
  std::uint64_t subsets(unsigned size, std::uint64_t count) const;

  /// P(X >= threshold) for X = edges inside Gamma_p.
  double tail(double p, double threshold) const;
  /// The same probability as an exact binary rational in the double p.
  Dyadic tail_exact(double p, double threshold) const;

  /// E X^m = sum_x x^m P(X = x).
  double moment(double p, unsigned m) const;

 private:
  SubsetCensus(unsigned ground_size, std::uint64_t max_count);

  unsigned ground_size_;
  std::uint64_t max_count_;
  std::vector<std::uint64_t> table_;  // (ground_size + 1) x (max_count + 1)
};

/// P(|H[Gamma_p]| >= threshold) by full subset enumeration.
/// Throws CapacityError when N exceeds the guard.
double exact_tail(const Hypergraph& h, double p, double threshold, const Guards& guards = {});

/// exact_tail without rounding: exact in the binary value of p.
Dyadic exact_tail_dyadic(const Hypergraph& h, double p, double threshold,
                         const Guards& guards = {});

/// E X^m as the sum over all m-tuples of edges of p^{|E_1 u ... u E_m|}.
/// Throws CapacityError when |H|^m exceeds the guard.
double exact_moment(const Hypergraph& h, double p, unsigned m, const Guards& guards = {});

}  // namespace tailkit

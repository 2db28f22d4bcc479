#include "tailkit/hypergraph.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "tailkit/errors.hpp"
#include "tailkit/rng.hpp"

namespace tailkit {

namespace {

void check_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw ArgumentError("probability must lie in [0, 1]");
}

// Calls fn(subset) for every j-element subset of `items` in lexicographic order.
template <typename Fn>
void for_each_combination(const Edge& items, unsigned j, Fn&& fn) {
  const unsigned n = static_cast<unsigned>(items.size());
  if (j > n) return;
  std::vector<unsigned> idx(j);
  for (unsigned i = 0; i < j; ++i) idx[i] = i;
  Edge subset(j);
  while (true) {
    for (unsigned i = 0; i < j; ++i) subset[i] = items[idx[i]];
    fn(subset);
    int pos = static_cast<int>(j) - 1;
    while (pos >= 0 && idx[pos] == n - j + static_cast<unsigned>(pos)) --pos;
    if (pos < 0) return;
    ++idx[pos];
    for (unsigned i = static_cast<unsigned>(pos) + 1; i < j; ++i) idx[i] = idx[i - 1] + 1;
  }
}

}  // namespace

Hypergraph::Hypergraph(std::uint32_t ground_size, std::uint32_t uniformity,
                       std::vector<Edge> edges)
    : ground_size_(ground_size), uniformity_(uniformity), edges_(std::move(edges)) {
  if (ground_size_ == 0) throw ArgumentError("hypergraph ground set must be nonempty");
  if (uniformity_ == 0) throw ArgumentError("hypergraph uniformity must be positive");
  for (auto& e : edges_) {
    if (e.size() != uniformity_) {
      throw ArgumentError("edge size " + std::to_string(e.size()) + " differs from uniformity " +
                          std::to_string(uniformity_));
    }
    std::sort(e.begin(), e.end());
    if (std::adjacent_find(e.begin(), e.end()) != e.end()) {
      throw ArgumentError("edge repeats a vertex");
    }
    if (e.front() < 1 || e.back() > ground_size_) {
      throw ArgumentError("edge vertex outside [1, N]");
    }
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
}

double Hypergraph::density(double q) const {
  return static_cast<double>(edges_.size()) / std::pow(static_cast<double>(ground_size_), q);
}

std::vector<std::uint64_t> Hypergraph::edge_masks() const {
  if (ground_size_ > 64) throw CapacityError("bitmask edges require N <= 64");
  std::vector<std::uint64_t> masks;
  masks.reserve(edges_.size());
  for (const auto& e : edges_) {
    std::uint64_t m = 0;
    for (Vertex v : e) m |= std::uint64_t{1} << (v - 1);
    masks.push_back(m);
  }
  return masks;
}

Hypergraph Hypergraph::parse(std::istream& in) {
  std::string line;
  bool have_header = false;
  std::uint32_t n = 0, k = 0;
  std::vector<Edge> edges;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream row(line);
    if (!have_header) {
      long long nn = 0, kk = 0;
      if (!(row >> nn >> kk) || nn <= 0 || kk <= 0) {
        throw ParseError("line " + std::to_string(line_no) + ": expected header \"N k\"");
      }
      n = static_cast<std::uint32_t>(nn);
      k = static_cast<std::uint32_t>(kk);
      have_header = true;
      continue;
    }
    Edge e;
    long long v = 0;
    while (row >> v) {
      if (v < 1 || v > n) {
        throw ParseError("line " + std::to_string(line_no) + ": vertex outside [1, N]");
      }
      e.push_back(static_cast<Vertex>(v));
    }
    if (!row.eof()) throw ParseError("line " + std::to_string(line_no) + ": not an integer");
    if (e.size() != k) {
      throw ParseError("line " + std::to_string(line_no) + ": expected " + std::to_string(k) +
                       " vertices");
    }
    edges.push_back(std::move(e));
  }
  if (!have_header) throw ParseError("missing header \"N k\"");
  try {
    return Hypergraph(n, k, std::move(edges));
  } catch (const ArgumentError& err) {
    throw ParseError(err.what());
  }
}

Hypergraph Hypergraph::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return parse(in);
}

void Hypergraph::write(std::ostream& out) const {
  out << ground_size_ << ' ' << uniformity_ << '\n';
  for (const auto& e : edges_) {
    for (std::size_t i = 0; i < e.size(); ++i) out << (i ? " " : "") << e[i];
    out << '\n';
  }
}

std::uint64_t degree_bound(const Hypergraph& h, unsigned j) {
  if (j > h.uniformity()) throw ArgumentError("degree_bound: j must lie in [0, k]");
  if (j == 0) return h.size();
  std::map<Edge, std::uint64_t> tally;
  std::uint64_t best = 0;
  for (const auto& e : h.edges()) {
    for_each_combination(e, j, [&](const Edge& s) { best = std::max(best, ++tally[s]); });
  }
  return best;
}

std::vector<std::uint64_t> degree_profile(const Hypergraph& h) {
  std::vector<std::uint64_t> out;
  out.reserve(h.uniformity() + 1);
  for (unsigned j = 0; j <= h.uniformity(); ++j) out.push_back(degree_bound(h, j));
  return out;
}

double expected_count(const Hypergraph& h, double p) {
  check_probability(p);
  return static_cast<double>(h.size()) * std::pow(p, static_cast<double>(h.uniformity()));
}

std::uint64_t induced_count(const Hypergraph& h, std::span<const Vertex> subset) {
  std::vector<char> present(h.ground_size() + 1, 0);
  for (Vertex v : subset) {
    if (v < 1 || v > h.ground_size()) throw ArgumentError("induced_count: element outside [1, N]");
    present[v] = 1;
  }
  std::uint64_t count = 0;
  for (const auto& e : h.edges()) {
    if (std::all_of(e.begin(), e.end(), [&](Vertex v) { return present[v] != 0; })) ++count;
  }
  return count;
}

SubsetSample sample_subset(std::uint32_t ground_size, double p, std::uint64_t seed,
                           std::uint64_t trial_index) {
  check_probability(p);
  SubsetSample sample{{}, p, seed, trial_index};
  CounterStream stream(seed, trial_index);
  for (Vertex v = 1; v <= ground_size; ++v) {
    if (stream.bernoulli(p)) sample.members.push_back(v);
  }
  return sample;
}

SubsetCensus::SubsetCensus(unsigned ground_size, std::uint64_t max_count)
    : ground_size_(ground_size),
      max_count_(max_count),
      table_((ground_size + 1) * (max_count + 1), 0) {}

SubsetCensus SubsetCensus::enumerate(unsigned ground_size,
                                     std::span<const std::uint64_t> edge_masks,
                                     const Guards& guards) {
  if (ground_size > guards.max_subset_enumeration || ground_size > 63) {
    throw CapacityError("subset enumeration over N = " + std::to_string(ground_size) +
                        " exceeds the guard of " + std::to_string(guards.max_subset_enumeration));
  }
  const std::uint64_t full = ground_size == 64 ? ~0ULL : ((std::uint64_t{1} << ground_size) - 1);
  std::vector<std::vector<std::uint64_t>> incident(ground_size);
  for (std::uint64_t m : edge_masks) {
    if (m & ~full) throw ArgumentError("edge mask outside the ground set");
    for (unsigned v = 0; v < ground_size; ++v) {
      if (m >> v & 1) incident[v].push_back(m);
    }
  }
  SubsetCensus census(ground_size, edge_masks.size());
  const std::uint64_t stride = census.max_count_ + 1;

  // Empty edges (possible only in degenerate families) are always inside S.
  std::uint64_t count = static_cast<std::uint64_t>(
      std::count(edge_masks.begin(), edge_masks.end(), std::uint64_t{0}));
  std::uint64_t subset = 0;
  unsigned size = 0;
  census.table_[count] += 1;

  // Reflected Gray code: step i flips the lowest set bit of i.
  const std::uint64_t steps = std::uint64_t{1} << ground_size;
  for (std::uint64_t i = 1; i < steps; ++i) {
    const unsigned v = static_cast<unsigned>(std::countr_zero(i));
    const std::uint64_t bit = std::uint64_t{1} << v;
    if (subset & bit) {
      for (std::uint64_t m : incident[v]) count -= (m & ~subset) == 0;
      subset &= ~bit;
      --size;
    } else {
      subset |= bit;
      ++size;
      for (std::uint64_t m : incident[v]) count += (m & ~subset) == 0;
    }
    census.table_[size * stride + count] += 1;
  }
  return census;
}

SubsetCensus SubsetCensus::enumerate(const Hypergraph& h, const Guards& guards) {
  if (h.ground_size() > guards.max_subset_enumeration) {
    throw CapacityError("exact enumeration over N = " + std::to_string(h.ground_size()) +
                        " exceeds the guard of " + std::to_string(guards.max_subset_enumeration));
  }
  const auto masks = h.edge_masks();
  return enumerate(h.ground_size(), masks, guards);
}

std::uint64_t SubsetCensus::subsets(unsigned size, std::uint64_t count) const {
  if (size > ground_size_ || count > max_count_) return 0;
  return table_[size * (max_count_ + 1) + count];
}

double SubsetCensus::tail(double p, double threshold) const {
  return tail_exact(p, threshold).to_double();
}

Dyadic SubsetCensus::tail_exact(double p, double threshold) const {
  check_probability(p);
  if (threshold <= 0.0) return Dyadic(1, 0);
  const double first = std::ceil(threshold);
  if (first > static_cast<double>(max_count_)) return {};
  const auto lo = static_cast<std::uint64_t>(first);
  const std::uint64_t stride = max_count_ + 1;
  const Dyadic yes = Dyadic::from_double(p);
  const Dyadic no = Dyadic(1, 0) - yes;
  // no_powers[j] = (1-p)^j
  std::vector<Dyadic> no_powers(ground_size_ + 1, Dyadic(1, 0));
  for (unsigned j = 1; j <= ground_size_; ++j) no_powers[j] = no_powers[j - 1] * no;
  Dyadic total;
  Dyadic yes_power(1, 0);
  for (unsigned s = 0; s <= ground_size_; ++s) {
    std::uint64_t hits = 0;
    for (std::uint64_t c = lo; c <= max_count_; ++c) hits += table_[s * stride + c];
    if (hits != 0) total = total + Dyadic(BigInt(hits), 0) * yes_power * no_powers[ground_size_ - s];
    yes_power = yes_power * yes;
  }
  return total;
}

double SubsetCensus::moment(double p, unsigned m) const {
  check_probability(p);
  const std::uint64_t stride = max_count_ + 1;
  CompensatedSum total;
  for (unsigned s = 0; s <= ground_size_; ++s) {
    const double weight = std::pow(p, s) * std::pow(1.0 - p, ground_size_ - s);
    if (weight == 0.0) continue;
    for (std::uint64_t c = 1; c <= max_count_; ++c) {
      const std::uint64_t n = table_[s * stride + c];
      if (n == 0) continue;
      total.add(static_cast<double>(n) * std::pow(static_cast<double>(c), m) * weight);
    }
  }
  return total.value();
}

double exact_tail(const Hypergraph& h, double p, double threshold, const Guards& guards) {
  return exact_tail_dyadic(h, p, threshold, guards).to_double();
}

Dyadic exact_tail_dyadic(const Hypergraph& h, double p, double threshold, const Guards& guards) {
  check_probability(p);
  if (threshold <= 0.0) return Dyadic(1, 0);
  return SubsetCensus::enumerate(h, guards).tail_exact(p, threshold);
}

namespace {

struct TupleExpansion {
  const std::vector<Edge>& edges;
  std::vector<unsigned> multiplicity;
  std::vector<std::uint64_t> by_union_size;
  unsigned union_size = 0;

  void recurse(unsigned remaining) {
    if (remaining == 0) {
      ++by_union_size[union_size];
      return;
    }
    for (const auto& e : edges) {
      for (Vertex v : e) union_size += multiplicity[v]++ == 0;
      recurse(remaining - 1);
      for (Vertex v : e) union_size -= --multiplicity[v] == 0;
    }
  }
};

}  // namespace

double exact_moment(const Hypergraph& h, double p, unsigned m, const Guards& guards) {
  check_probability(p);
  if (m < 1) throw ArgumentError("exact_moment: m must be positive");
  const long double tuples = std::pow(static_cast<long double>(h.size()), m);
  if (tuples > static_cast<long double>(guards.max_moment_tuples)) {
    throw CapacityError("exact_moment: |H|^m exceeds the guard");
  }
  if (h.empty()) return 0.0;
  TupleExpansion ex{h.edges(), std::vector<unsigned>(h.ground_size() + 1, 0),
                    std::vector<std::uint64_t>(h.ground_size() + 1, 0)};
  ex.recurse(m);
  CompensatedSum total;
  for (unsigned u = 0; u <= h.ground_size(); ++u) {
    if (ex.by_union_size[u] == 0) continue;
    total.add(static_cast<double>(ex.by_union_size[u]) * std::pow(p, static_cast<double>(u)));
  }
  return total.value();
}

}  // namespace tailkit

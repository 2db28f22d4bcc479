#include "tailkit/sim.hpp"

#include <algorithm>
#include <cmath>
#include <thread>
#include <vector>

#include "tailkit/errors.hpp"
#include "tailkit/hypergraph.hpp"
#include "tailkit/rng.hpp"

namespace tailkit {

namespace {

constexpr double kZ95 = 1.959963984540054;

}  // namespace

Graph sample_gnp(unsigned n, double p, std::uint64_t seed, std::uint64_t trial_index) {
  if (!(p >= 0.0 && p <= 1.0)) throw ArgumentError("probability must lie in [0, 1]");
  CounterStream stream(seed, trial_index);
  std::vector<Graph::EdgePair> edges;
  for (unsigned u = 0; u < n; ++u) {
    for (unsigned v = u + 1; v < n; ++v) {
      if (stream.bernoulli(p)) edges.emplace_back(u, v);
    }
  }
  return Graph(n, std::move(edges));
}

WilsonInterval wilson_interval(std::uint64_t hits, std::uint64_t trials) {
  if (trials == 0) throw ArgumentError("Wilson interval needs at least one trial");
  if (hits > trials) throw ArgumentError("hits exceed trials");
  const double n = static_cast<double>(trials);
  const double phat = static_cast<double>(hits) / n;
  const double z2 = kZ95 * kZ95;
  const double centre = (phat + z2 / (2 * n)) / (1 + z2 / n);
  const double half = kZ95 * std::sqrt(phat * (1 - phat) / n + z2 / (4 * n * n)) / (1 + z2 / n);
  WilsonInterval ci{std::max(0.0, centre - half), std::min(1.0, centre + half)};
  if (hits == 0) ci.low = 0.0;
  if (hits == trials) ci.high = 1.0;
  ci.low = std::min(ci.low, phat);
  ci.high = std::max(ci.high, phat);
  return ci;
}

TailEstimate monte_carlo_tail(const CountingModel& model, double threshold, std::uint64_t trials,
                              std::uint64_t seed, unsigned threads) {
  if (trials < 1) throw ArgumentError("monte carlo needs at least one trial");
  if (!model) throw ArgumentError("monte carlo needs a counting model");
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, trials));

  std::vector<std::uint64_t> hits(threads, 0);
  auto work = [&](unsigned worker) {
    const std::uint64_t begin = trials * worker / threads;
    const std::uint64_t end = trials * (worker + 1) / threads;
    std::uint64_t local = 0;
    for (std::uint64_t i = begin; i < end; ++i) local += model(seed, i) >= threshold;
    hits[worker] = local;
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }

  TailEstimate result;
  for (auto h : hits) result.hits += h;
  result.trials = trials;
  result.seed = seed;
  result.estimate = static_cast<double>(result.hits) / static_cast<double>(trials);
  const auto ci = wilson_interval(result.hits, trials);
  result.ci_low = ci.low;
  result.ci_high = ci.high;
  return result;
}

double exact_tail_rooted(const RootedGraph& g, unsigned n, double p, double threshold,
                         const Guards& guards) {
  return exact_tail_rooted_dyadic(g, n, p, threshold, guards).to_double();
}

Dyadic exact_tail_rooted_dyadic(const RootedGraph& g, unsigned n, double p, double threshold,
                                const Guards& guards) {
  if (!(p >= 0.0 && p <= 1.0)) throw ArgumentError("probability must lie in [0, 1]");
  const unsigned pairs = n * (n - (n > 0)) / 2;
  if (pairs > guards.max_rooted_pairs) {
    throw CapacityError("exact rooted tail over C(n,2) = " + std::to_string(pairs) +
                        " pairs exceeds the guard of " + std::to_string(guards.max_rooted_pairs));
  }
  if (threshold <= 0.0) return Dyadic(1, 0);
  if (n < g.vertex_count()) return {};

  std::vector<std::uint64_t> masks;
  for (const auto& copy : enumerate_rooted_copies(Graph::complete(n), g.root_count(), g)) {
    std::uint64_t mask = 0;
    for (const auto& [u, v] : copy.edges) mask |= std::uint64_t{1} << pair_index(n, u, v);
    masks.push_back(mask);
  }
  Guards census_guards = guards;
  census_guards.max_subset_enumeration = std::max(guards.max_subset_enumeration, pairs);
  return SubsetCensus::enumerate(pairs, masks, census_guards).tail_exact(p, threshold);
}

std::string_view to_string(Verdict::Side side) {
  switch (side) {
    case Verdict::Side::none:
      return "none";
    case Verdict::Side::lower:
      return "lower";
    case Verdict::Side::upper:
      return "upper";
  }
  return "?";
}

Verdict envelope_check(const BoundEnvelope& envelope, const Dyadic& exact) {
  const double truth = exact.to_double();
  if (const auto lower = certificate_probability(envelope)) {
    if (exact < *lower) return {false, Verdict::Side::lower, lower->to_double() - truth};
  } else if (envelope.lower_log_prob) {
    const double lower = std::exp(*envelope.lower_log_prob);
    if (Dyadic::from_double(lower) > exact) return {false, Verdict::Side::lower, lower - truth};
  }
  if (Dyadic::from_double(envelope.upper_tail_bound) < exact) {
    return {false, Verdict::Side::upper, truth - envelope.upper_tail_bound};
  }
  return {};
}

Verdict envelope_check(const BoundEnvelope& envelope, double exact) {
  Verdict verdict;
  if (envelope.lower_log_prob) {
    const double lower = std::exp(*envelope.lower_log_prob);
    if (lower > exact) return {false, Verdict::Side::lower, lower - exact};
  }
  if (exact > envelope.upper_tail_bound) {
    return {false, Verdict::Side::upper, exact - envelope.upper_tail_bound};
  }
  return verdict;
}

Verdict envelope_check(const BoundEnvelope& envelope, const TailEstimate& estimate) {
  Verdict verdict;
  if (envelope.lower_log_prob) {
    const double lower = std::exp(*envelope.lower_log_prob);
    if (lower > estimate.ci_high) return {false, Verdict::Side::lower, lower - estimate.ci_high};
  }
  if (envelope.upper_tail_bound < estimate.ci_low) {
    return {false, Verdict::Side::upper, estimate.ci_low - envelope.upper_tail_bound};
  }
  return verdict;
}

}  // namespace tailkit

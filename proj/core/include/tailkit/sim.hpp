#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>

#include "tailkit/graph.hpp"
#include "tailkit/moment_bounds.hpp"
#include "tailkit/numeric.hpp"
#include "tailkit/rooted.hpp"

namespace tailkit {

/// G(n, p): pair (u, v) in lexicographic order consumes the next uniform of
/// the (seed, trial_index) stream.
Graph sample_gnp(unsigned n, double p, std::uint64_t seed, std::uint64_t trial_index);

/// Empirical P(X >= threshold) with a 95% Wilson interval.
struct TailEstimate {
  std::uint64_t hits = 0;
  std::uint64_t trials = 0;
  double estimate = 0.0;
  double ci_low = 0.0;
  double ci_high = 1.0;
  std::uint64_t seed = 0;
  std::optional<double> exact;
};

struct WilsonInterval {
  double low = 0.0;
  double high = 1.0;
};

/// 95% Wilson score interval for `hits` successes out of `trials`.
WilsonInterval wilson_interval(std::uint64_t hits, std::uint64_t trials);

/// One realisation of the count for trial `trial_index`. Must be a pure
/// function of its arguments and safe to call concurrently.
using CountingModel = std::function<double(std::uint64_t seed, std::uint64_t trial_index)>;

/// Runs `trials` independent trials split into contiguous blocks over
/// `threads` workers (0 picks the hardware concurrency). The result depends
/// only on (model, threshold, trials, seed).
TailEstimate monte_carlo_tail(const CountingModel& model, double threshold, std::uint64_t trials,
                              std::uint64_t seed, unsigned threads = 0);

/// Exact P(X_G^R >= threshold) on G(n, p) by enumerating every edge subset of
/// K_n. Throws CapacityError when C(n, 2) exceeds guards.max_rooted_pairs.
double exact_tail_rooted(const RootedGraph& g, unsigned n, double p, double threshold,
                         const Guards& guards = {});

/// exact_tail_rooted without rounding: exact in the binary value of p.
Dyadic exact_tail_rooted_dyadic(const RootedGraph& g, unsigned n, double p, double threshold,
                                const Guards& guards = {});

struct Verdict {
  enum class Side { none, lower, upper };
  bool pass = true;
  Side side = Side::none;
  /// Amount by which the violated bound overshoots the truth (or the CI).
  double margin = 0.0;
};

std::string_view to_string(Verdict::Side side);

/// PASS iff p^certificate_size <= truth <= upper_tail_bound, compared
/// exactly. Envelopes with a log lower bound but no certificate size fall
/// back to exp(lower_log_prob).
Verdict envelope_check(const BoundEnvelope& envelope, const Dyadic& exact);
Verdict envelope_check(const BoundEnvelope& envelope, double exact);

/// FAIL only when a bound lies outside the confidence interval on its
/// violating side: exp(lower) > ci_high or upper < ci_low.
Verdict envelope_check(const BoundEnvelope& envelope, const TailEstimate& estimate);

}  // namespace tailkit

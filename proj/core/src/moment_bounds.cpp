#include "tailkit/moment_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "tailkit/errors.hpp"

namespace tailkit {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_sum_exp(const std::vector<double>& terms) {
  double hi = kNegInf;
  for (double x : terms) hi = std::max(hi, x);
  if (hi == kNegInf) return kNegInf;
  double s = 0.0;
  for (double x : terms) s += std::exp(x - hi);
  return hi + std::log(s);
}

}  // namespace

double log_moment_upper_bound(const Hypergraph& h, std::span<const std::uint64_t> degrees,
                              double p, unsigned m) {
  if (m < 1) throw ArgumentError("moment bound: m must be positive");
  if (!(p >= 0.0 && p <= 1.0)) throw ArgumentError("probability must lie in [0, 1]");
  const unsigned k = h.uniformity();
  if (degrees.size() != k + 1) throw ArgumentError("degree profile must hold Delta_0..Delta_k");
  if (h.empty() || p == 0.0) return kNegInf;
  const double log_p = std::log(p);
  const double log_mu = std::log(static_cast<double>(h.size())) + k * log_p;
  if (m == 1) return log_mu;

  // Any j-subset of the union of m-1 edges is one of at most C((m-1)k, j)
  // sets, each inside at most Delta_j further edges.
  const std::uint64_t union_bound = static_cast<std::uint64_t>(m - 1) * k;
  std::vector<double> terms;
  terms.reserve(k + 1);
  terms.push_back(std::log(static_cast<double>(h.size())) + k * log_p);
  for (unsigned j = 1; j <= k; ++j) {
    if (degrees[j] == 0 || j > union_bound) continue;
    terms.push_back(std::log(to_double(binomial(union_bound, j))) +
                    std::log(static_cast<double>(degrees[j])) + (k - j) * log_p);
  }
  return log_mu + static_cast<double>(m - 1) * log_sum_exp(terms);
}

double moment_upper_bound(const Hypergraph& h, double p, unsigned m) {
  if (m < 1) throw ArgumentError("moment bound: m must be positive");
  if (m == 1) return expected_count(h, p);
  const auto degrees = degree_profile(h);
  return std::exp(log_moment_upper_bound(h, degrees, p, m));
}

MarkovBound markov_tail_upper(const Hypergraph& h, double p, double t, unsigned m_max) {
  if (!(t > 1.0)) throw ArgumentError("markov bound: t must exceed 1");
  if (m_max < 1) throw ArgumentError("markov bound: m_max must be positive");
  const double mu = expected_count(h, p);
  if (!(mu > 0.0)) throw ArgumentError("markov bound: mu must be positive");

  const auto degrees = degree_profile(h);
  const double log_t_mu = std::log(t) + std::log(mu);
  MarkovBound best;
  best.log_bound = -std::log(t);
  best.optimal_m = 1;
  for (unsigned m = 2; m <= m_max; ++m) {
    const double candidate = log_moment_upper_bound(h, degrees, p, m) - m * log_t_mu;
    if (candidate < best.log_bound) {
      best.log_bound = candidate;
      best.optimal_m = m;
    }
  }
  // m = 1 is plain Markov: mu / (t mu) = 1/t.
  best.bound = best.optimal_m == 1 ? 1.0 / t : std::exp(best.log_bound);
  if (best.bound > 1.0) {
    best.bound = 1.0;
    best.log_bound = 0.0;
  }
  return best;
}

unsigned default_m_max(double mu, double q) {
  if (!(mu > 0.0) || !(q > 0.0)) return 1;
  const double m = std::ceil(2.0 * std::pow(mu, 1.0 / q));
  return static_cast<unsigned>(std::clamp(m, 1.0, 1e4));
}

ExponentScales exponent_scales(double mu, double q, unsigned k, double p) {
  if (!(p > 0.0 && p < 1.0)) throw ArgumentError("exponent scales need 0 < p < 1");
  if (!(q > 0.0 && q <= static_cast<double>(k))) {
    throw ArgumentError("exponent scales need 0 < q <= k");
  }
  if (!(mu >= 0.0)) throw ArgumentError("exponent scales need mu >= 0");
  const double root = std::pow(mu, 1.0 / q);
  ExponentScales s;
  s.lower = root * std::log(1.0 / p);
  const double lo = std::floor(q);
  const double hi = std::ceil(q);
  // For integer q both branches reduce to mu^{1/q}: p^{k*0} = 1 exactly.
  const double first = lo == 0.0 ? 0.0 : root * std::pow(p, k * (1.0 / lo - 1.0 / q));
  const double second = std::pow(mu, 1.0 / hi);
  s.upper = std::max(first, second);
  return s;
}

double certificate_tail_lower(const Hypergraph& h, std::span<const Vertex> gamma0, double p,
                              double t) {
  if (!(p > 0.0 && p < 1.0)) throw ArgumentError("certificate bound needs 0 < p < 1");
  if (!(t > 1.0)) throw ArgumentError("certificate bound: t must exceed 1");
  std::vector<Vertex> members(gamma0.begin(), gamma0.end());
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  const double need = t * expected_count(h, p);
  const std::uint64_t achieved = induced_count(h, members);
  if (static_cast<double>(achieved) < need) throw CertificateError(achieved, need);
  return static_cast<double>(members.size()) * std::log(p);
}

std::optional<std::vector<Vertex>> greedy_certificate(const Hypergraph& h, double p, double t,
                                                      unsigned budget,
                                                      std::span<const Vertex> initial) {
  if (!(t > 1.0)) throw ArgumentError("greedy certificate: t must exceed 1");
  const double need = t * expected_count(h, p);
  if (need > static_cast<double>(h.size())) {
    throw InfeasibleError("t * mu exceeds |H|: no vertex set hosts enough edges");
  }
  const std::uint32_t n = h.ground_size();
  std::vector<std::vector<std::size_t>> incident(n + 1);
  std::vector<unsigned> missing(h.size(), h.uniformity());
  for (std::size_t i = 0; i < h.size(); ++i) {
    for (Vertex v : h.edges()[i]) incident[v].push_back(i);
  }
  std::vector<char> chosen(n + 1, 0);
  std::vector<Vertex> members;
  std::uint64_t count = 0;
  for (Vertex v : initial) {
    if (v < 1 || v > n) throw ArgumentError("greedy certificate: initial vertex outside [1, N]");
    if (chosen[v]) continue;
    chosen[v] = 1;
    members.push_back(v);
    for (std::size_t e : incident[v]) count += --missing[e] == 0;
  }
  while (static_cast<double>(count) < need) {
    if (members.size() >= budget || members.size() == n) return std::nullopt;
    Vertex best = 0;
    std::uint64_t best_gain = 0;
    for (Vertex v = 1; v <= n; ++v) {
      if (chosen[v]) continue;
      std::uint64_t gain = 0;
      for (std::size_t e : incident[v]) gain += missing[e] == 1;
      if (best == 0 || gain > best_gain) {
        best = v;
        best_gain = gain;
      }
    }
    chosen[best] = 1;
    members.push_back(best);
    for (std::size_t e : incident[best]) --missing[e];
    count += best_gain;
  }
  std::sort(members.begin(), members.end());
  if (static_cast<double>(induced_count(h, members)) < need) {
    throw ConsistencyError("greedy certificate bookkeeping disagrees with induced_count");
  }
  return members;
}

std::optional<Dyadic> certificate_probability(const BoundEnvelope& envelope) {
  if (!envelope.certificate_size) return std::nullopt;
  return Dyadic::from_double(envelope.p).pow(static_cast<unsigned>(*envelope.certificate_size));
}

BoundEnvelope build_envelope(const Hypergraph& h, double p, double t, double q,
                             std::optional<unsigned> m_max,
                             std::optional<std::span<const Vertex>> certificate) {
  BoundEnvelope env;
  env.mu = expected_count(h, p);
  env.t = t;
  env.q = q;
  const unsigned m_limit = m_max.value_or(default_m_max(env.mu, q));
  const auto markov = markov_tail_upper(h, p, t, m_limit);
  env.upper_tail_bound = markov.bound;
  env.log_upper_tail_bound = markov.log_bound;
  env.optimal_m = markov.optimal_m;
  if (p > 0.0 && p < 1.0) {
    const auto scales = exponent_scales(env.mu, q, h.uniformity(), p);
    env.lower_exponent_scale = scales.lower;
    env.upper_exponent_scale = scales.upper;
  }
  env.in_interesting_range =
      env.mu >= 1.0 && std::log(t) + h.uniformity() * std::log(p) <= 0.0;
  env.p = p;
  if (certificate) {
    env.lower_log_prob = certificate_tail_lower(h, *certificate, p, t);
    env.certificate_size = std::set<Vertex>(certificate->begin(), certificate->end()).size();
  }
  return env;
}

}  // namespace tailkit

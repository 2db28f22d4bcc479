#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "tailkit/hypergraph.hpp"

namespace tailkit {

/// Result of optimising the Markov moment bound over m.
struct MarkovBound {
  double bound = 1.0;      ///< min_m E-bound / (t mu)^m, clipped to 1
  double log_bound = 0.0;  ///< natural log of `bound`
  unsigned optimal_m = 1;  ///< smallest minimiser
};

/// The two exponent scales of the upper-tail estimates.
struct ExponentScales {
  double lower = 0.0;  ///< mu^{1/q} ln(1/p)
  double upper = 0.0;  ///< mu^{1/q}, or the non-integer-q maximum
};

/// Two-sided finite-size envelope for P(X >= t mu).
struct BoundEnvelope {
  double mu = 0.0;
  double t = 0.0;
  double q = 0.0;
  double p = 0.0;
  std::optional<double> lower_log_prob;  ///< ln of a certificate probability
  /// Size of the certificate behind lower_log_prob: the bound is p^size.
  std::optional<std::uint64_t> certificate_size;
  double upper_tail_bound = 1.0;
  double log_upper_tail_bound = 0.0;
  unsigned optimal_m = 1;
  double lower_exponent_scale = 0.0;
  double upper_exponent_scale = 0.0;
  /// mu >= 1 and t <= p^{-k}: the regime where the tail bounds are informative.
  bool in_interesting_range = false;
};

/// ln of mu (B_0 p^k + sum_{j>=1} B_j p^{k-j})^{m-1} with B_0 = |H| and
/// B_j = C((m-1)k, j) Delta_j. `degrees` is Delta_0..Delta_k (see
/// degree_profile). Returns -inf when the bound is zero.
double log_moment_upper_bound(const Hypergraph& h, std::span<const std::uint64_t> degrees,
                              double p, unsigned m);

/// Rigorous upper bound on E X^m. Returns mu exactly for m = 1 and 0 for p = 0.
/// Throws ArgumentError for m < 1.
double moment_upper_bound(const Hypergraph& h, double p, unsigned m);

/// min over m in [1, m_max] of moment_upper_bound / (t mu)^m.
/// Throws ArgumentError for t <= 1 or mu = 0.
MarkovBound markov_tail_upper(const Hypergraph& h, double p, double t, unsigned m_max);

/// Default m_max = max(1, ceil(2 mu^{1/q})), capped at 10^4.
unsigned default_m_max(double mu, double q);

/// Throws ArgumentError unless 0 < p < 1 and 0 < q <= k.
ExponentScales exponent_scales(double mu, double q, unsigned k, double p);

/// ln P(Gamma_p contains gamma0) = |gamma0| ln p, after checking that gamma0
/// hosts at least t mu edges (CertificateError otherwise).
double certificate_tail_lower(const Hypergraph& h, std::span<const Vertex> gamma0, double p,
                              double t);

/// Greedy vertex set hosting at least t mu edges: repeatedly add the vertex
/// completing the most new edges, lowest index on ties, at most `budget`
/// vertices. Empty optional when the budget runs out. Throws InfeasibleError
/// when t mu > |H|. The search may start from a nonempty `initial` set, which
/// counts against the budget.
std::optional<std::vector<Vertex>> greedy_certificate(const Hypergraph& h, double p, double t,
                                                      unsigned budget,
                                                      std::span<const Vertex> initial = {});

/// p^certificate_size exactly, when the envelope carries a certificate.
std::optional<Dyadic> certificate_probability(const BoundEnvelope& envelope);

/// Assembles the Markov upper bound, exponent scales and (if given) the
/// certificate lower bound for one (H, p, t, q).
BoundEnvelope build_envelope(const Hypergraph& h, double p, double t, double q,
                             std::optional<unsigned> m_max = std::nullopt,
                             std::optional<std::span<const Vertex>> certificate = std::nullopt);

}  // namespace tailkit

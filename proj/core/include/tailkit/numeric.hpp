#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

namespace tailkit {

/// Exact integer for counts that can outgrow 64 bits (analytic bounds,
/// falling factorials).
using BigInt = boost::multiprecision::cpp_int;

/// Exact rational for alpha*, rooted densities and similar small fractions.
using Rational = boost::rational<std::int64_t>;

inline double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

inline double to_double(const BigInt& v) { return v.convert_to<double>(); }

/// Exact binary rational mantissa * 2^exponent. Every finite double is one,
/// so probabilities built from a double p by sums and products stay exact.
class Dyadic {
 public:
  Dyadic() = default;
  Dyadic(BigInt mantissa, std::int64_t exponent);
  /// Exact conversion; throws ArgumentError for non-finite input.
  static Dyadic from_double(double x);

  const BigInt& mantissa() const noexcept { return mantissa_; }
  std::int64_t exponent() const noexcept { return exponent_; }
  bool is_zero() const noexcept { return mantissa_ == 0; }

  /// Correctly rounded to nearest (ties away from the truncated value are
  /// resolved by a sticky bit).
  double to_double() const;

  friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator-(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator*(const Dyadic& a, const Dyadic& b);
  Dyadic pow(unsigned k) const;

  friend int compare(const Dyadic& a, const Dyadic& b);
  friend bool operator==(const Dyadic& a, const Dyadic& b) { return compare(a, b) == 0; }
  friend bool operator<(const Dyadic& a, const Dyadic& b) { return compare(a, b) < 0; }
  friend bool operator<=(const Dyadic& a, const Dyadic& b) { return compare(a, b) <= 0; }
  friend bool operator>(const Dyadic& a, const Dyadic& b) { return compare(a, b) > 0; }

 private:
  void normalise();
  BigInt mantissa_ = 0;
  std::int64_t exponent_ = 0;
};

/// Neumaier's variant of Kahan compensated summation.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      compensation_ += (sum_ - t) + x;
    } else {
      compensation_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const noexcept { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

/// Natural log of C(n, j) via lgamma; -inf when j > n.
inline double log_binomial(double n, double j) {
  if (j < 0 || j > n) return -std::numeric_limits<double>::infinity();
  return std::lgamma(n + 1) - std::lgamma(j + 1) - std::lgamma(n - j + 1);
}

/// Exact C(n, j).
BigInt binomial(std::uint64_t n, std::uint64_t j);

/// Exact falling factorial n (n-1) ... (n-j+1); zero when j > n.
BigInt falling_factorial(std::uint64_t n, std::uint64_t j);

/// Enumeration guards. Defaults give desk-scale runtimes;
/// `unlimited()` lifts all of them (hard representation limits still apply).
struct Guards {
  /// Largest ground set for full 2^N subset enumeration.
  unsigned max_subset_enumeration = 24;
  /// Largest |H|^m for tuple-expansion moments.
  std::uint64_t max_moment_tuples = 10'000'000;
  /// Largest N^q free-coordinate grid for solution enumeration.
  std::uint64_t max_solution_grid = 100'000'000;
  /// Largest e(G) for exhaustive edge-subset enumeration.
  unsigned max_subgraph_edges = 20;
  /// Largest C(n,2) for exact rooted tails.
  unsigned max_rooted_pairs = 24;

  static Guards unlimited();
  /// Defaults, or unlimited() when TAILKIT_GUARD_OVERRIDE=1.
  static Guards from_environment();
};

}  // namespace tailkit

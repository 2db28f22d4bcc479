#include "tailkit/numeric.hpp"

#include <algorithm>

#include <cstdlib>
#include <cstring>

#include "tailkit/errors.hpp"

namespace tailkit {

BigInt binomial(std::uint64_t n, std::uint64_t j) {
  if (j > n) return 0;
  if (j > n - j) j = n - j;
  BigInt result = 1;
  for (std::uint64_t i = 1; i <= j; ++i) {
    result *= n - j + i;
    result /= i;
  }
  return result;
}

Dyadic::Dyadic(BigInt mantissa, std::int64_t exponent)
    : mantissa_(std::move(mantissa)), exponent_(exponent) {
  normalise();
}

void Dyadic::normalise() {
  if (mantissa_ == 0) {
    exponent_ = 0;
    return;
  }
  const auto zeros = boost::multiprecision::lsb(boost::multiprecision::abs(mantissa_));
  mantissa_ >>= zeros;
  exponent_ += static_cast<std::int64_t>(zeros);
}

Dyadic Dyadic::from_double(double x) {
  if (!std::isfinite(x)) throw ArgumentError("cannot represent a non-finite value exactly");
  if (x == 0.0) return {};
  int exp = 0;
  const double frac = std::frexp(x, &exp);
  const auto mantissa = static_cast<std::int64_t>(std::ldexp(frac, 53));
  return Dyadic(BigInt(mantissa), static_cast<std::int64_t>(exp) - 53);
}

double Dyadic::to_double() const {
  if (mantissa_ == 0) return 0.0;
  const bool negative = mantissa_ < 0;
  BigInt magnitude = boost::multiprecision::abs(mantissa_);
  const auto bits = boost::multiprecision::msb(magnitude) + 1;
  std::int64_t exponent = exponent_;
  if (bits > 64) {
    const auto shift = bits - 64;
    const bool sticky = boost::multiprecision::lsb(magnitude) < shift;
    magnitude >>= shift;
    if (sticky) magnitude |= 1;
    exponent += static_cast<std::int64_t>(shift);
  }
  const double value = std::ldexp(magnitude.convert_to<std::uint64_t>() * 1.0,
                                  static_cast<int>(std::clamp<std::int64_t>(exponent, -100000, 100000)));
  return negative ? -value : value;
}

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const std::int64_t e = std::min(a.exponent_, b.exponent_);
  return Dyadic((a.mantissa_ << static_cast<unsigned>(a.exponent_ - e)) +
                    (b.mantissa_ << static_cast<unsigned>(b.exponent_ - e)),
                e);
}

Dyadic operator-(const Dyadic& a, const Dyadic& b) {
  return a + Dyadic(-b.mantissa_, b.exponent_);
}

Dyadic operator*(const Dyadic& a, const Dyadic& b) {
  return Dyadic(a.mantissa_ * b.mantissa_, a.exponent_ + b.exponent_);
}

Dyadic Dyadic::pow(unsigned k) const {
  Dyadic result(1, 0);
  for (unsigned i = 0; i < k; ++i) result = result * *this;
  return result;
}

int compare(const Dyadic& a, const Dyadic& b) {
  const Dyadic d = a - b;
  return d.mantissa_ > 0 ? 1 : (d.mantissa_ < 0 ? -1 : 0);
}

BigInt falling_factorial(std::uint64_t n, std::uint64_t j) {
  if (j > n) return 0;
  BigInt result = 1;
  for (std::uint64_t i = 0; i < j; ++i) result *= n - i;
  return result;
}

Guards Guards::unlimited() {
  Guards g;
  g.max_subset_enumeration = 63;
  g.max_moment_tuples = std::numeric_limits<std::uint64_t>::max();
  g.max_solution_grid = std::numeric_limits<std::uint64_t>::max();
  g.max_subgraph_edges = 62;
  g.max_rooted_pairs = 63;
  return g;
}

Guards Guards::from_environment() {
  const char* value = std::getenv("TAILKIT_GUARD_OVERRIDE");
  if (value != nullptr && std::strcmp(value, "1") == 0) return unlimited();
  return Guards{};
}

}  // namespace tailkit

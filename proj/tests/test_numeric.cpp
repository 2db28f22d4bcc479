#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "tailkit/errors.hpp"
#include "tailkit/hypergraph.hpp"
#include "tailkit/numeric.hpp"

using namespace tailkit;

TEST(Dyadic, RoundTripsDoubles) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const double x = std::ldexp(unit(rng), static_cast<int>(rng() % 400) - 200);
    EXPECT_EQ(Dyadic::from_double(x).to_double(), x);
  }
  EXPECT_EQ(Dyadic::from_double(std::numeric_limits<double>::denorm_min()).to_double(),
            std::numeric_limits<double>::denorm_min());
  EXPECT_TRUE(Dyadic::from_double(0.0).is_zero());
  EXPECT_THROW(Dyadic::from_double(NAN), ArgumentError);
}

TEST(Dyadic, NormalisesToOddMantissa) {
  const Dyadic d(BigInt(24), 0);
  EXPECT_EQ(d.mantissa(), 3);
  EXPECT_EQ(d.exponent(), 3);
  EXPECT_EQ(Dyadic(BigInt(3), 3), Dyadic::from_double(24.0));
}

TEST(Dyadic, ArithmeticIsExact) {
  const Dyadic half = Dyadic::from_double(0.5);
  const Dyadic third = Dyadic::from_double(1.0 / 3.0);
  EXPECT_EQ(half + half, Dyadic(1, 0));
  EXPECT_EQ(Dyadic(1, 0) - half, half);
  EXPECT_EQ(half.pow(10), Dyadic(1, -10));
  EXPECT_EQ(third.pow(0), Dyadic(1, 0));
  // 1/3 in binary times 3 is one ulp short of 1, which plain doubles hide.
  EXPECT_EQ((Dyadic(3, 0) * third).to_double(), 1.0);
  EXPECT_LT(Dyadic(3, 0) * third, Dyadic(1, 0));
}

TEST(Dyadic, OrderingAcrossExponents) {
  EXPECT_LT(Dyadic(-5, 10), Dyadic(1, -40));
  EXPECT_LT(Dyadic(1, -40), Dyadic(3, -41) + Dyadic(1, -80));
  EXPECT_GT(Dyadic(7, 2), Dyadic(27, 0));
  EXPECT_LE(Dyadic(), Dyadic());
}

TEST(Dyadic, RoundsToNearest) {
  // 1 + 2^-53 is a tie and rounds to even; adding 2^-100 breaks the tie upward.
  const Dyadic one(1, 0);
  EXPECT_EQ((one + Dyadic(1, -53)).to_double(), 1.0);
  EXPECT_EQ((one + Dyadic(1, -53) + Dyadic(1, -100)).to_double(), std::nextafter(1.0, 2.0));
  EXPECT_EQ((one + Dyadic(3, -54)).to_double(), std::nextafter(1.0, 2.0));
}

TEST(SubsetCensus, ExactTailMatchesRoundedTail) {
  const Hypergraph h(5, 3, {{1, 2, 3}, {2, 3, 4}, {3, 4, 5}, {1, 3, 5}});
  const auto census = SubsetCensus::enumerate(h);
  for (double p : {0.1, 0.3, 0.5, 0.77}) {
    for (double thr : {0.5, 1.0, 2.0, 3.5}) {
      EXPECT_EQ(census.tail_exact(p, thr).to_double(), census.tail(p, thr));
    }
  }
  // At p = 1/2 every subset weighs 2^-5.
  EXPECT_EQ(census.tail_exact(0.5, 1), Dyadic(BigInt(census.tail(0.5, 1) * 32), -5));
}

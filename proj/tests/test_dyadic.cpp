#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <limits>
#include <random>

#include "oracles.hpp"
#include "qrefine/dyadic.hpp"
#include "qrefine/error.hpp"

namespace qrefine {
namespace {

using testing::to_mpq;

std::string printf_g(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

TEST(Dyadic, NormalizesToOddMantissa) {
  const Dyadic d(BigInt(12), 3);
  EXPECT_EQ(d.mantissa(), 3);
  EXPECT_EQ(d.exponent(), 5);
  EXPECT_EQ(Dyadic(BigInt(0), 9), Dyadic());
}

TEST(Dyadic, FromDoubleRoundTrips) {
  for (double v : {0.0, 1.0, -0.375, 3216.990877275948, 1e-300, 4.9e-324, 1.7976931348623157e308}) {
    EXPECT_EQ(Dyadic::from_double(v).to_double(), v) << v;
  }
}

TEST(Dyadic, ParseDecimal) {
  EXPECT_EQ(Dyadic::parse_decimal("-12.375"), Dyadic(BigInt(-99), -3));
  EXPECT_EQ(Dyadic::parse_decimal("25e-2"), Dyadic(BigInt(1), -2));
  EXPECT_EQ(Dyadic::parse_decimal("1.5E3"), Dyadic(BigInt(1500), 0));
  EXPECT_EQ(Dyadic::parse_decimal("+0.0"), Dyadic());
}

TEST(Dyadic, ParseRejectsNonDyadic) {
  EXPECT_THROW(Dyadic::parse_decimal("0.1"), Error);
  EXPECT_THROW(Dyadic::parse_decimal("3e-2"), Error);
}

TEST(Dyadic, ParseRejectsGarbage) {
  for (const char* text : {"", "abc", "1.5x", "--1", "1e", "nan", "inf"}) {
    EXPECT_THROW(Dyadic::parse_decimal(text), Error) << text;
  }
}

TEST(Dyadic, ExactDecimal) {
  EXPECT_EQ(Dyadic::from_double(0.5).to_exact_decimal(), "0.5");
  EXPECT_EQ(Dyadic::from_double(-3.0).to_exact_decimal(), "-3");
  EXPECT_EQ(Dyadic(BigInt(1), -10).to_exact_decimal(), "0.0009765625");
  EXPECT_EQ(Dyadic().to_exact_decimal(), "0");
}

TEST(Dyadic, ExactDecimalReparses) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    const Dyadic d(BigInt(static_cast<std::int64_t>(rng())), static_cast<int>(rng() % 200) - 100);
    EXPECT_EQ(Dyadic::parse_decimal(d.to_exact_decimal()), d);
  }
}

TEST(Dyadic, SignificantMatchesPrintf) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const double v = u(rng) * std::ldexp(1.0, static_cast<int>(rng() % 120) - 60);
    for (int digits : {1, 6, 17, 18}) {
      EXPECT_EQ(Dyadic::from_double(v).to_significant(digits), printf_g(v, digits)) << v;
    }
  }
}

TEST(Dyadic, ToDoubleIsCorrectlyRounded) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 2000; ++i) {
    BigInt m(rng());
    m = (m << 64) | BigInt(rng());
    m >>= static_cast<unsigned>(rng() % 70);
    if (rng() & 1U) m = -m;
    const Dyadic d(m, static_cast<int>(rng() % 400) - 200);
    EXPECT_EQ(d.to_double(), testing::round_to_double(to_mpq(d))) << d.to_exact_decimal();
  }
}

TEST(Dyadic, ToDoubleTiesToEven) {
  // 2^53 + 1 sits halfway between two doubles.
  EXPECT_EQ(Dyadic(BigInt(1) << 53, 0).to_double(), 9007199254740992.0);
  EXPECT_EQ(Dyadic((BigInt(1) << 53) + 1, 0).to_double(), 9007199254740992.0);
  EXPECT_EQ(Dyadic((BigInt(1) << 53) + 3, 0).to_double(), 9007199254740996.0);
}

TEST(Dyadic, ToDoubleSubnormalAndOverflow) {
  EXPECT_EQ(Dyadic(BigInt(1), -1074).to_double(), std::numeric_limits<double>::denorm_min());
  EXPECT_EQ(Dyadic(BigInt(1), -1076).to_double(), 0.0);
  EXPECT_EQ(Dyadic(BigInt(3), -1076).to_double(), std::numeric_limits<double>::denorm_min());
  EXPECT_TRUE(std::isinf(Dyadic(BigInt(1), 1024).to_double()));
}

TEST(Dyadic, Arithmetic) {
  const Dyadic a = Dyadic::from_double(1.5);
  const Dyadic b = Dyadic::from_double(-0.25);
  EXPECT_EQ((a + b).to_double(), 1.25);
  EXPECT_EQ((a - b).to_double(), 1.75);
  EXPECT_EQ((a * b).to_double(), -0.375);
  EXPECT_LT(b, a);
}

TEST(DyadicVector, SharedExponentArithmetic) {
  const std::vector<double> x{1.0, 0.125};
  const std::vector<double> y{std::ldexp(1.0, -60), -2.0};
  DyadicVector v = DyadicVector::from_doubles(x);
  v += DyadicVector::from_doubles(y);
  EXPECT_EQ(v.component(0), Dyadic(BigInt(1), 0) + Dyadic(BigInt(1), -60));
  EXPECT_EQ(v.component(1).to_double(), -1.875);
  v -= DyadicVector::from_doubles(y);
  EXPECT_EQ(v, DyadicVector::from_doubles(x));
  EXPECT_EQ((-v).to_doubles(), (std::vector<double>{-1.0, -0.125}));
  EXPECT_TRUE(DyadicVector(3).is_zero());
}

TEST(DyadicVector, MantissasAt) {
  const DyadicVector v(std::vector<BigInt>{BigInt(3), BigInt(1)}, -2);
  EXPECT_EQ(v.mantissas_at(-4), (std::vector<BigInt>{BigInt(12), BigInt(4)}));
  EXPECT_THROW(v.mantissas_at(0), Error);
}

TEST(DyadicVector, LengthMismatchThrows) {
  DyadicVector v(2);
  EXPECT_THROW(v += DyadicVector(3), Error);
}

}  // namespace
}  // namespace qrefine

#include <gtest/gtest.h>

#include <random>

#include "tentlim/number.hpp"

using namespace tentlim;

TEST(Rational, ParsesFractionsAndDecimals) {
  EXPECT_EQ(Rational::parse("6/8"), Rational(3, 4));
  EXPECT_EQ(Rational::parse("1.75"), Rational(7, 4));
  EXPECT_EQ(Rational::parse("-0.5"), Rational(-1, 2));
  EXPECT_EQ(Rational::parse("2"), Rational(2));
  EXPECT_EQ(Rational(3, 8).str(), "3/8");
  EXPECT_THROW(Rational::parse("x/2"), Error);
  EXPECT_THROW(Rational(1, 0), DomainError);
}

TEST(Rational, FieldOperations) {
  Rational a(7, 4), b(-2, 3);
  EXPECT_EQ(a + b, Rational(13, 12));
  EXPECT_EQ(a * b, Rational(-7, 6));
  EXPECT_EQ(a / b, Rational(-21, 8));
  EXPECT_EQ(b.abs(), Rational(2, 3));
  EXPECT_EQ(b.sign(), Sign::negative);
  EXPECT_THROW(a / Rational(0), DomainError);
}

TEST(Quadratic, GoldenIdentity) {
  Quadratic s = Quadratic::golden();
  EXPECT_EQ(s * s, s + Quadratic(1));
  EXPECT_EQ(s.str(), "(1+sqrt5)/2");
  EXPECT_EQ((s / Quadratic(2)).str(), "(1+sqrt5)/4");
  EXPECT_EQ((s - Quadratic(1)).str(), "(-1+sqrt5)/2");
}

TEST(Quadratic, SignUsesNormComparison) {
  // 2 - sqrt5 < 0 and 3 - sqrt5 > 0
  EXPECT_EQ(Quadratic(Rational(2), Rational(-1), 5).sign(), Sign::negative);
  EXPECT_EQ(Quadratic(Rational(3), Rational(-1), 5).sign(), Sign::positive);
  EXPECT_EQ(Quadratic(Rational(0), Rational(0), 5).sign(), Sign::zero);
}

TEST(Quadratic, InverseAndParseRoundTrip) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> d(-9, 9);
  for (int i = 0; i < 200; ++i) {
    Quadratic q(Rational(d(rng), 1 + std::abs(d(rng))), Rational(d(rng), 1 + std::abs(d(rng))), 5);
    EXPECT_EQ(Quadratic::parse(q.str()), q) << q.str();
    if (q.sign() != Sign::zero) {
      EXPECT_EQ(q * q.inverse(), Quadratic(1)) << q.str();
    }
  }
  EXPECT_EQ(Quadratic::parse("-3sqrt5/2"), Quadratic(Rational(0), Rational(-3, 2), 5));
}

TEST(Quadratic, MixedFieldsRejected) {
  Quadratic a(Rational(0), Rational(1), 5), b(Rational(0), Rational(1), 3);
  try {
    (void)(a + b);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::field_mismatch);
  }
  EXPECT_THROW(Quadratic(Rational(0), Rational(1), 4), DomainError);
}

TEST(Tracked, RadiusEnclosesExactResult) {
  // Chains of ring operations against exact rationals.
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> d(1, 97);
  for (int trial = 0; trial < 100; ++trial) {
    Rational ex(d(rng), d(rng));
    Tracked tr(ex);
    for (int k = 0; k < 40; ++k) {
      Rational r(d(rng), d(rng));
      switch (k % 4) {
        case 0: ex = ex + r; tr = tr + Tracked(r); break;
        case 1: ex = ex * r; tr = tr * Tracked(r); break;
        case 2: ex = ex - r; tr = tr - Tracked(r); break;
        case 3: ex = ex / r; tr = tr / Tracked(r); break;
      }
      Rational err = (ex - Rational(mpq_class(tr.mid()))).abs();
      ASSERT_LE(err.to_double(), tr.radius()) << "trial " << trial << " step " << k;
    }
  }
}

TEST(Tracked, AmbiguousSignAndCompare) {
  Tracked a(0.5, 1e-3);
  EXPECT_EQ(a.sign(), Sign::positive);
  EXPECT_EQ((a - Tracked(0.5005, 0.0)).sign(), Sign::ambiguous);
  EXPECT_THROW(compare(a, Tracked(0.5005, 0.0)), PrecisionError);
  EXPECT_THROW(Tracked(1.0, 0.0) / Tracked(0.0, 1e-9), PrecisionError);
}

TEST(Helpers, PowersAndInversePowersOfTwo) {
  EXPECT_EQ(pow_int(Rational(3, 2), 4), Rational(81, 16));
  EXPECT_EQ(inv_pow2<Rational>(10), Rational(1, 1024));
  EXPECT_EQ(pow_int(Quadratic::golden(), 2), Quadratic::golden() + Quadratic(1));
}

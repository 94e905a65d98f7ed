#include <gtest/gtest.h>

#include "tentlim/tentmap.hpp"

using namespace tentlim;

namespace {

Slope<Rational> two() { return Slope<Rational>(Rational(2)); }
Slope<Quadratic> golden() { return Slope<Quadratic>(Quadratic::golden()); }

// (a + b sqrt5) / den, written out by hand
Quadratic q5(long a, long b, long den) { return Quadratic(Rational(a, den), Rational(b, den), 5); }

}  // namespace

TEST(Slope, RejectsOutsideRange) {
  EXPECT_THROW(Slope<Rational>(Rational(7, 5)), DomainError);  // 1.96 < 2
  EXPECT_THROW(Slope<Rational>(Rational(201, 100)), DomainError);
  EXPECT_NO_THROW(Slope<Rational>(Rational(142, 100)));
  EXPECT_NO_THROW(two());
  EXPECT_THROW(Slope<Quadratic>(Quadratic(Rational(0), Rational(1), 2)), DomainError);  // sqrt2 itself
}

TEST(Slope, DerivedConstants) {
  auto sl = Slope<Rational>(Rational(7, 4));
  EXPECT_EQ(sl.c1(), Rational(7, 8));
  EXPECT_EQ(sl.c2(), Rational(7, 4) * Rational(1, 8));
}

TEST(TentEval, Examples) {
  EXPECT_EQ(tent_eval(two(), Rational(1, 2)), Rational(1));
  EXPECT_EQ(tent_eval(two(), Rational(1)), Rational(0));
  // golden: T(c2) = c with c2 = (sqrt5 - 1)/4
  EXPECT_EQ(tent_eval(golden(), q5(-1, 1, 4)), Quadratic(Rational(1, 2)));
  EXPECT_THROW(tent_eval(two(), Rational(3, 2)), DomainError);
}

TEST(Preimages, Examples) {
  auto p = preimages(two(), Rational(1, 2));
  ASSERT_EQ(p.size(), 2u);
  EXPECT_EQ(p[0], Rational(1, 4));
  EXPECT_EQ(p[1], Rational(3, 4));
  auto q = preimages(two(), Rational(1));
  ASSERT_EQ(q.size(), 1u);
  EXPECT_EQ(q[0], Rational(1, 2));
  // golden, y = c: y/s = (sqrt5-1)/4; 1 - y/s = (5-sqrt5)/4 ~ 0.691 < s/2 ~ 0.809
  auto g = preimages(golden(), Quadratic(Rational(1, 2)));
  ASSERT_EQ(g.size(), 2u);
  EXPECT_EQ(g[0], q5(-1, 1, 4));
  EXPECT_EQ(g[1], q5(5, -1, 4));
  // golden, y near 0: 1 - y/s exceeds s/2 and is dropped
  auto h = preimages(golden(), Quadratic(Rational(1, 10)));
  EXPECT_EQ(h.size(), 1u);
}

TEST(Preimages, BranchConsistency) {
  for (auto sl : {two(), Slope<Rational>(Rational(7, 4)), Slope<Rational>(Rational(3, 2))}) {
    for (int k = 0; k <= 40; ++k) {
      Rational y = sl.c1() * Rational(k, 40);
      for (const auto& x : preimages(sl, y)) EXPECT_EQ(tent_eval(sl, x), y);
    }
  }
}

TEST(CriticalOrbit, Examples) {
  auto o = critical_orbit(two(), 4);
  EXPECT_EQ(o.points, (std::vector<Rational>{1, 0, 0, 0}));
  ASSERT_TRUE(o.cycle);
  EXPECT_EQ(*o.cycle, std::make_pair(std::size_t{2}, std::size_t{1}));
  EXPECT_FALSE(o.period);

  auto g = critical_orbit(golden(), 4);
  std::vector<Quadratic> want{q5(1, 1, 4), q5(-1, 1, 4), Quadratic(Rational(1, 2)), q5(1, 1, 4)};
  EXPECT_EQ(g.points, want);
  ASSERT_TRUE(g.period);
  EXPECT_EQ(*g.period, 3u);

  auto one = critical_orbit(Slope<Rational>(Rational(7, 4)), 1);
  EXPECT_EQ(one.points, std::vector<Rational>{Rational(7, 8)});
}

TEST(CriticalOrbit, CoreAbsorption) {
  for (auto sl : {Slope<Rational>(Rational(3, 2)), Slope<Rational>(Rational(7, 4)), Slope<Rational>(Rational(19, 10))}) {
    auto o = critical_orbit(sl, 40);
    for (std::size_t k = 2; k <= o.size(); ++k) {
      EXPECT_LE(sl.c2(), o.at(k));
      EXPECT_LE(o.at(k), sl.c1());
    }
  }
}

TEST(CriticalOrbit, TrackedBoundsEncloseExact) {
  for (auto [n, d] : {std::pair{7, 4}, std::pair{3, 2}, std::pair{19, 10}, std::pair{29, 20}}) {
    Slope<Rational> ex(Rational(n, d));
    Slope<Tracked> tr(Tracked(Rational(n, d)));
    auto oe = critical_orbit(ex, 30);
    auto ot = critical_orbit(tr, 30);
    for (std::size_t k = 1; k <= 30; ++k) {
      double err = std::fabs(oe.at(k).to_double() - ot.at(k).mid());
      // to_double of the exact value is itself off by an ulp
      EXPECT_LE(err, ot.at(k).radius() + 1e-16) << n << "/" << d << " k=" << k;
    }
  }
}

TEST(CriticalOrbit, TrackedThrowsWhenBudgetExhausted) {
  Slope<Tracked> tr(Tracked(Rational(19, 10)), 1e-6);
  EXPECT_THROW(critical_orbit(tr, 200), PrecisionError);
}

TEST(OmegaLimitDist, Examples) {
  EXPECT_EQ(omega_limit_dist(golden(), Quadratic(Rational(1, 2)), 1, 10), Quadratic(0));
  EXPECT_EQ(omega_limit_dist(two(), Rational(0), 2, 10), Rational(0));
  EXPECT_EQ(omega_limit_dist(two(), Rational(1, 3), 2, 10), Rational(1, 3));
}

TEST(OmegaLimitDist, MonotoneInWindowEnd) {
  Slope<Rational> sl(Rational(7, 4));
  Rational x(3, 5);
  Rational prev = omega_limit_dist(sl, x, 1, 2);
  for (std::size_t n2 = 3; n2 < 30; ++n2) {
    Rational cur = omega_limit_dist(sl, x, 1, n2);
    EXPECT_LE(cur, prev);
    prev = cur;
  }
}

TEST(CertifiedOmega, GoldenAndTwo) {
  auto g = certified_omega(golden());
  ASSERT_TRUE(g);
  EXPECT_EQ(*g, (std::vector<Quadratic>{q5(-1, 1, 4), Quadratic(Rational(1, 2)), q5(1, 1, 4)}));
  auto t = certified_omega(two());
  ASSERT_TRUE(t);
  EXPECT_EQ(*t, std::vector<Rational>{Rational(0)});
  EXPECT_FALSE(certified_omega(Slope<Rational>(Rational(7, 4)), 60));
}

#include <gtest/gtest.h>

#include <random>

#include "tentlim/inverse_limit.hpp"

using namespace tentlim;

namespace {

Slope<Rational> two() { return Slope<Rational>(Rational(2)); }
Slope<Rational> sev4() { return Slope<Rational>(Rational(7, 4)); }
Slope<Quadratic> golden() { return Slope<Quadratic>(Quadratic::golden()); }

// The golden cycle point with x_0 = c: backward orbit c, c2, c1, c, ...
ILPoint<Quadratic> golden_cycle_point() {
  auto sl = golden();
  return ILPoint<Quadratic>(sl, {sl.c()}, tail::Periodic<Quadratic>{{sl.c2(), sl.c1(), sl.c()}});
}

// Partial sums of the metric series, written independently of the library.
Rational partial_metric(const std::vector<Rational>& x, const std::vector<Rational>& y) {
  Rational sum(0), w(1);
  for (std::size_t k = 0; k < x.size(); ++k) {
    sum += w * (x[k] - y[k]).abs();
    w = w * Rational(1, 2);
  }
  return sum;
}

}  // namespace

TEST(ILPoint, ValidationRejectsInconsistentOrbits) {
  EXPECT_THROW(ILPoint<Rational>(two(), {Rational(1, 2), Rational(1, 3)}), DomainError);
  EXPECT_THROW(ILPoint<Rational>(two(), {Rational(3, 2)}), DomainError);
  EXPECT_NO_THROW(ILPoint<Rational>(two(), {Rational(1, 2), Rational(1, 4)}));
  auto sl = golden();
  EXPECT_THROW(ILPoint<Quadratic>(sl, {sl.c()}, tail::Periodic<Quadratic>{{sl.c1(), sl.c2(), sl.c()}}), DomainError);
}

TEST(ILPoint, TailExtension) {
  auto z = golden_cycle_point();
  auto sl = golden();
  std::vector<Quadratic> want{sl.c(), sl.c2(), sl.c1(), sl.c(), sl.c2(), sl.c1(), sl.c()};
  EXPECT_EQ(z.extended(6).trunc(), want);

  ILPoint<Rational> crit(two(), {Rational(0)}, tail::Critical{2});  // c_2 = 0 for s = 2
  EXPECT_EQ(crit.coordinate(1), Rational(1));
  EXPECT_EQ(crit.coordinate(2), Rational(1, 2));
  EXPECT_EQ(crit.coordinate(4), Rational(1, 8));

  ILPoint<Rational> br(sev4(), {Rational(1, 2)}, tail::Branch{"R"});
  EXPECT_EQ(br.coordinate(1), Rational(1) - Rational(2, 7));
  ILPoint<Rational> un(two(), {Rational(1, 2)});
  EXPECT_THROW(un.coordinate(1), DepthError);
}

TEST(ILPoint, NormalizedKeepsThePoint) {
  auto z = golden_cycle_point().extended(7);
  auto n = z.normalized();
  EXPECT_EQ(n.depth(), 0u);
  EXPECT_TRUE(same_point(n, z));
  auto a = fundamental_arc(two(), 0, 3).point(Rational(1, 16));
  EXPECT_TRUE(same_point(a.normalized(), a));
}

TEST(MetricDist, Examples) {
  auto zero = ILPoint<Rational>::zero(two());
  auto d0 = metric_dist(zero, zero);
  EXPECT_EQ(d0.value, Rational(0));
  EXPECT_EQ(d0.error, Rational(0));
  // y_{-k} = delta / 2^k: d = delta * sum 4^-k = 4 delta / 3
  Rational delta(1, 5);
  ILPoint<Rational> y(two(), {delta}, tail::Zero{});
  auto d = metric_dist(zero, y);
  EXPECT_EQ(d.value, delta * Rational(4, 3));
  EXPECT_EQ(d.error, Rational(0));
  // partial sums approach it from below
  std::vector<Rational> xs, ys;
  for (int k = 0; k < 40; ++k) {
    xs.push_back(0);
    ys.push_back(y.coordinate(k));
  }
  Rational ps = partial_metric(xs, ys);
  EXPECT_LT(ps, d.value);
  EXPECT_LT((d.value - ps).to_double(), 1e-20);
  // unspecified tails, identical truncations
  ILPoint<Rational> u1(two(), {Rational(1, 2), Rational(1, 4), Rational(1, 8)});
  auto du = metric_dist(u1, u1);
  EXPECT_EQ(du.value, Rational(0));
  EXPECT_EQ(du.error, Rational(1, 4) * Rational(2));
}

TEST(MetricDist, PeriodicClosedFormMatchesSeries) {
  auto sl = golden();
  auto z = golden_cycle_point();
  auto z1 = shift(z, 1);
  auto d = metric_dist(z, z1);
  EXPECT_EQ(d.error, Quadratic(0));
  Quadratic ps(0), w(1);
  for (std::size_t k = 0; k < 60; ++k) {
    ps = ps + w * (z.coordinate(k) - z1.coordinate(k)).abs();
    w = w * Quadratic(Rational(1, 2));
  }
  EXPECT_NEAR(ps.to_double(), d.value.to_double(), 1e-15);
  EXPECT_LT(ps, d.value);
}

TEST(MetricDist, MetricAxiomsOnRandomTriples) {
  auto sl = sev4();
  std::mt19937 rng(5);
  auto random_point = [&]() {
    int depth = 1 + static_cast<int>(rng() % 4);
    auto arc = fundamental_arc(sl, 0, static_cast<std::size_t>(depth));
    Rational u = sl.c() * Rational(static_cast<long>(rng() % 97), 96);
    return arc.point(u);
  };
  for (int t = 0; t < 60; ++t) {
    auto x = random_point(), y = random_point(), z = random_point();
    auto dxy = metric_dist(x, y).value, dyx = metric_dist(y, x).value;
    auto dxz = metric_dist(x, z).value, dyz = metric_dist(y, z).value;
    EXPECT_EQ(dxy, dyx);
    EXPECT_LE(dxz, dxy + dyz);
    EXPECT_EQ(metric_dist(x, x).value, Rational(0));
    if (!same_point(x, y)) {
      EXPECT_GT(dxy, Rational(0));
    }
  }
}

TEST(Shift, Examples) {
  auto zero = ILPoint<Rational>::zero(two());
  EXPECT_TRUE(same_point(shift(zero, 1), zero));
  auto z = golden_cycle_point();
  auto sl = golden();
  auto s1 = shift(z, 1);
  EXPECT_EQ(s1.coordinate(0), sl.c1());
  EXPECT_EQ(s1.coordinate(1), sl.c());
  EXPECT_TRUE(same_point(shift(z, 3), z));
  EXPECT_FALSE(same_point(s1, z));
  auto p = fundamental_arc(sev4(), 1, 3).point(Rational(1, 7));
  for (long r : {1L, 2L, 5L}) {
    EXPECT_TRUE(same_point(shift(shift(p, r), -r), p));
    EXPECT_TRUE(same_point(shift(shift(p, -r), r), p));
  }
  ILPoint<Rational> un(two(), {Rational(1, 2), Rational(1, 4)});
  EXPECT_THROW(shift(un, -2), DepthError);
}

TEST(Shift, ProjectionCompatibility) {
  auto x = fundamental_arc(sev4(), 2, 3).point(Rational(2, 9));
  auto sx = shift(x, 1);
  for (std::size_t k = 1; k < 12; ++k) EXPECT_EQ(sx.pi(k), x.pi(k - 1));
}

TEST(FundamentalArc, Examples) {
  auto a = fundamental_arc(two(), 0, 1);
  auto s1 = a.point(Rational(1, 2));
  EXPECT_EQ(s1.coordinate(0), Rational(1));
  EXPECT_EQ(s1.coordinate(1), Rational(1, 2));
  EXPECT_EQ(s1.coordinate(2), Rational(1, 4));
  EXPECT_TRUE(same_point(a.point(Rational(0)), ILPoint<Rational>::zero(two())));
  // pi_0 = T^2(u) on [0, 1/2] for s = 2: tent with peak at 1/4
  auto b = fundamental_arc(two(), 0, 2);
  for (int k = 0; k <= 16; ++k) {
    Rational u(k, 32);
    Rational want = u <= Rational(1, 4) ? Rational(4) * u : Rational(2) - Rational(4) * u;
    EXPECT_EQ(b.point(u).pi(0), want);
  }
}

TEST(FundamentalArc, ShiftNesting) {
  for (std::size_t n = 1; n <= 5; ++n) {
    auto an = fundamental_arc(sev4(), 1, n), an1 = fundamental_arc(sev4(), 1, n + 1);
    for (int k = 0; k <= 8; ++k) {
      Rational u = sev4().c() * Rational(k, 8);
      EXPECT_TRUE(same_point(shift(an.point(u), 1), an1.point(u)));
    }
  }
}

TEST(FundamentalArc, LocateRoundTrip) {
  auto a = fundamental_arc(sev4(), 0, 4);
  auto x = a.point(Rational(3, 10));
  auto u = a.locate(x);
  ASSERT_TRUE(u);
  EXPECT_EQ(*u, Rational(3, 10));
  auto b = fundamental_arc(sev4(), 0, 5);
  EXPECT_FALSE(a.locate(b.point(Rational(1, 2))));
}

TEST(ArcHausdorff, Examples) {
  auto a = fundamental_arc(two(), 0, 2);
  auto A = sample_arc<Rational>(a, 16);
  auto h = arc_hausdorff(A, A, 10);
  EXPECT_EQ(h.value, Rational(0));
  EXPECT_EQ(h.error, Rational(2) / Rational(1024));
  // same coordinates down to index 3, different tails beyond
  auto sl = sev4();
  Arc<Rational> za(sl, 3, Rational(1, 4), Rational(1, 2), tail::Zero{});
  Arc<Rational> ba(sl, 3, Rational(1, 4), Rational(1, 2), tail::Branch{"RL"});
  auto SA = sample_arc<Rational>(za, 8), SB = sample_arc<Rational>(ba, 8);
  auto hb = arc_hausdorff(SA, SB, 3);
  EXPECT_EQ(hb.value, Rational(0));
  EXPECT_EQ(hb.error, sl.s() / Rational(8));
  for (std::size_t i = 0; i < SA.size(); ++i) {
    auto d = metric_dist(SA[i], SB[i]);
    EXPECT_GT(d.value, Rational(0));
    EXPECT_LE(d.value + d.error, hb.error);
  }
}

TEST(ArcHausdorff, ShrinkingArcsConverge) {
  // [x_n, x] with x_n -> x on the fundamental arc: distance to {x} shrinks
  auto a = fundamental_arc(sev4(), 0, 4);
  Rational u(1, 5);
  std::vector<ILPoint<Rational>> target{a.point(u)};
  Rational prev(10);
  for (int n = 1; n <= 8; ++n) {
    Rational un = u + Rational(1, 1L << (n + 2));
    auto sub = a.sub(u, un);
    auto h = arc_hausdorff(sample_arc<Rational>(sub, 4), target, 30);
    EXPECT_LE(h.value, prev);  // flat while the subarc still spans a fold
    prev = h.value;
  }
  EXPECT_LT(prev.to_double(), 0.05);
}

TEST(ArcHausdorff, DenserSamplesTighten) {
  auto a = fundamental_arc(sev4(), 0, 3);
  auto full = sample_arc<Rational>(a, 256);
  Rational prev(10);
  for (std::size_t dens : {2u, 4u, 16u, 64u}) {
    auto h = arc_hausdorff(sample_arc<Rational>(a, dens), full, 12);
    EXPECT_LE(h.value, prev);
    prev = h.value;
  }
}

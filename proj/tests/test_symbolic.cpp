#include <gtest/gtest.h>

#include <random>

#include "tentlim/symbolic.hpp"

using namespace tentlim;

namespace {

Slope<Rational> rat(long n, long d) { return Slope<Rational>(Rational(n, d)); }
Slope<Quadratic> golden() { return Slope<Quadratic>(Quadratic::golden()); }

// Independent itinerary oracle: long double iteration, only trusted for
// short prefixes where no orbit point comes near c.
std::string float_itinerary(long double s, long double x, std::size_t n) {
  std::string w;
  for (std::size_t i = 0; i < n; ++i) {
    w += x < 0.5L ? '0' : '1';
    x = x <= 0.5L ? s * x : s * (1 - x);
  }
  return w;
}

// Reverse-and-shift brute force of the parity-lex order via the signed
// real-valued coding theta(w) = sum eps_i * 5^-i, eps_i = +-symbol.
long double theta(const std::string& w) {
  long double sum = 0, scale = 1;
  int sign = 1;
  for (char ch : w) {
    scale /= 5;
    int v = ch == '0' ? 0 : (ch == 'C' ? 1 : 2);
    sum += sign * v * scale;
    if (ch == '1') sign = -sign;
  }
  return sum;
}

}  // namespace

TEST(Itinerary, Examples) {
  EXPECT_EQ(itinerary(rat(2, 1), Rational(1), 4).finite(), "1000");
  EXPECT_EQ(itinerary(golden(), golden().c1(), 3).finite(), "10C");
  EXPECT_EQ(itinerary(rat(7, 4), Rational(0), 6).finite(), "000000");
}

TEST(Itinerary, AgreesWithFloatOracleOnShortPrefixes) {
  for (auto [n, d] : {std::pair{3, 2}, std::pair{7, 4}, std::pair{19, 10}, std::pair{8, 5}}) {
    Slope<Rational> sl = rat(n, d);
    for (int k = 0; k <= 30; ++k) {
      Rational x = sl.c1() * Rational(2 * k + 1, 62);
      EXPECT_EQ(itinerary(sl, x, 8).finite(),
                float_itinerary(static_cast<long double>(n) / d, x.to_double(), 8));
    }
  }
}

TEST(Itinerary, ShiftCompatibility) {
  Slope<Rational> sl = rat(7, 4);
  for (int k = 0; k <= 20; ++k) {
    Rational x = sl.c1() * Rational(k, 20);
    auto a = itinerary(sl, x, 21).finite();
    auto b = itinerary(sl, tent_eval(sl, x), 20).finite();
    EXPECT_EQ(a.substr(1), b);
  }
}

TEST(Itinerary, TrackedFlagsAmbiguousSymbol) {
  Slope<Tracked> sl(Tracked(1.618033988749895, 1e-12));
  auto w = kneading_sequence(sl, 3).finite();
  EXPECT_EQ(w.substr(0, 2), "10");
  EXPECT_EQ(w[2], '?');
}

TEST(Kneading, Examples) {
  EXPECT_EQ(kneading_sequence(rat(2, 1), 4).finite(), "1000");
  EXPECT_EQ(kneading_sequence(golden(), 6).finite(), "10C10C");
  EXPECT_EQ(kneading_sequence(rat(1415, 1000), 2).finite(), "10");
  EXPECT_EQ(resolve_critical("10C10C", '1'), "101101");
  // 100100 > 101101 after the odd prefix "10"
  EXPECT_EQ(resolve_critical_max("10C10C"), "100100");
}

TEST(KneadingOrder, MatchesSignedTernaryCoding) {
  std::mt19937 rng(3);
  const char syms[] = {'0', 'C', '1'};
  for (int t = 0; t < 2000; ++t) {
    std::string a, b;
    for (int i = 0; i < 10; ++i) {
      a += syms[rng() % 3];
      b += syms[rng() % 3];
    }
    int got = kneading_compare(a, b);
    long double ta = theta(a), tb = theta(b);
    int want = ta < tb ? -1 : (ta > tb ? 1 : 0);
    EXPECT_EQ(got > 0 ? 1 : (got < 0 ? -1 : 0), want) << a << " " << b;
  }
}

TEST(KneadingOrder, AdmissibilityAndMonotonicityOnGrid) {
  std::string prev;
  for (int k = 0; k <= 60; ++k) {
    Rational s = Rational(1415, 1000) + Rational(585, 1000) * Rational(k, 60);
    auto w = kneading_sequence(Slope<Rational>(s), 30).finite();
    EXPECT_TRUE(is_admissible(w)) << s << " " << w;
    if (!prev.empty()) {
      EXPECT_LE(kneading_compare(prev, w), 0) << s;
    }
    prev = w;
  }
}

TEST(KneadingOrder, InadmissibleExamples) {
  EXPECT_FALSE(is_admissible("0"));
  EXPECT_FALSE(is_admissible("1100"));  // shift "100" > "110"
  EXPECT_TRUE(is_admissible("1011"));
  EXPECT_TRUE(is_admissible("1000"));
  EXPECT_TRUE(is_admissible("10"));
}

TEST(SlopeFromKneading, UniversalPrefix) {
  auto est = slope_from_kneading(SymbolWord("10"), 1e-6);
  EXPECT_EQ(est.hi, Rational(2));
  EXPECT_LT(est.lo.to_double(), std::sqrt(2.0));
  EXPECT_NEAR(est.slope.s().mid(), (est.lo.to_double() + 2) / 2, 1e-12);
  ASSERT_TRUE(est.witness);
}

TEST(SlopeFromKneading, PrefixWithZeroTail) {
  // Length-4 prefix 1000 is shared by every slope in [1.83928..., 2].
  auto est = slope_from_kneading(SymbolWord("1000"), 1e-9);
  EXPECT_EQ(est.hi, Rational(2));
  EXPECT_NEAR(est.lo.to_double(), 1.8392867552141612, 1e-9);  // Python Fraction bisection
  EXPECT_LE(est.slope.s().radius(), 0.081);
}

TEST(SlopeFromKneading, IncreasingBlocksPrefix) {
  std::string pre = SymbolWord::increasing_blocks().prefix(12);
  ASSERT_EQ(pre, "100101101110");
  auto est = slope_from_kneading(SymbolWord(pre), 1e-9);
  // Python Fraction bisection bracket
  EXPECT_NEAR(est.lo.to_double(), 1.633256663080732, 1e-9);
  EXPECT_NEAR(est.hi.to_double(), 1.637525973391512, 1e-9);
  ASSERT_TRUE(est.witness);
  EXPECT_EQ(kneading_prefix_raw(*est.witness, 12), pre);
}

TEST(SlopeFromKneading, CriticalPrefixConvergesToGolden) {
  auto est = slope_from_kneading(SymbolWord("10C"), 1e-9);
  EXPECT_NEAR(est.slope.s().mid(), (1 + std::sqrt(5.0)) / 2, 1e-9);
  EXPECT_LE((est.hi - est.lo).to_double(), 1e-9);
}

TEST(SlopeFromKneading, Errors) {
  try {
    slope_from_kneading(SymbolWord("1100"), 1e-6);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::inadmissible_prefix);
  }
  // admissible, yet no slope in range realizes them (Python grid scan)
  for (const char* w : {"111111", "101010", "101110", "100100"}) {
    try {
      slope_from_kneading(SymbolWord(w), 1e-6);
      FAIL() << w;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::prefix_unresolvable) << w;
    }
  }
}

TEST(SymbolWord, BlocksTailLookupMatchesPrefix) {
  auto nu = SymbolWord::increasing_blocks();
  auto pre = nu.prefix(400);
  for (std::size_t i = 0; i < pre.size(); ++i) ASSERT_EQ(nu.at(i), pre[i]) << i;
  EXPECT_EQ(pre.substr(0, 21), "100101101110111101111");
}

TEST(TwoSidedWord, ShiftAndWindow) {
  TwoSidedWord w("", "0", "1", "1");  // 1^inf.01^inf
  EXPECT_EQ(w.window(2), "11.01");
  EXPECT_EQ(w.shifted(1).window(2), "10.11");
  EXPECT_EQ(w.shifted(3).shifted(-3).window(3), w.window(3));
}

TEST(TwoSidedLimitSet, IncreasingBlocksMatchesClaim) {
  auto nu = SymbolWord::increasing_blocks();
  for (std::size_t w = 1; w <= 6; ++w) {
    auto got = two_sided_limit_set(nu, w);
    std::set<std::string> want{TwoSidedWord("", "", "1", "1").window(w)};
    TwoSidedWord one_zero("", "0", "1", "1");
    for (long j = -static_cast<long>(w) - 2; j <= static_cast<long>(w) + 2; ++j) want.insert(one_zero.shifted(j).window(w));
    EXPECT_EQ(got, want) << "w=" << w;
  }
}

TEST(TwoSidedLimitSet, PeriodicAndEventuallyFixed) {
  auto per = two_sided_limit_set(SymbolWord("", PeriodicTail{"101"}), 2);
  EXPECT_EQ(per, (std::set<std::string>{"01.10", "10.11", "11.01"}));
  auto fixed = two_sided_limit_set(SymbolWord("1", PeriodicTail{"0"}), 1);
  EXPECT_EQ(fixed, std::set<std::string>{"0.0"});
}

TEST(TwoSidedLimitSet, ClosedUnderCenteredSubwords) {
  auto nu = SymbolWord::increasing_blocks();
  auto big = two_sided_limit_set(nu, 5);
  auto small = two_sided_limit_set(nu, 3);
  for (const auto& f : big) EXPECT_TRUE(small.count(f.substr(2, 7))) << f;
}

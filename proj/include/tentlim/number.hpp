#pragma once

// Number policies for tent-map arithmetic.
//
// Rational   exact rationals (GMP)
// Quadratic  exact a + b*sqrt(D), a and b rational, D a non-square integer
// Tracked    double midpoint with a rigorous absolute error radius
//
// All three expose the same small surface (ring operations, division,
// sign(), abs(), to_double(), str()) so the dynamics code is written once
// as templates. Exact types never report an ambiguous sign.

#include <gmpxx.h>

#include <cmath>
#include <compare>
#include <concepts>
#include <cstdint>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>
#include <string_view>

#include "tentlim/errors.hpp"

namespace tentlim {

enum class Sign { negative, zero, positive, ambiguous };

// ---------------------------------------------------------------------------
// Rational

class Rational {
 public:
  static constexpr bool exact = true;

  Rational() = default;
  template <std::integral I>
  Rational(I v) : q_(static_cast<long>(v)) {}  // NOLINT(google-explicit-constructor)
  Rational(long num, long den) {
    if (den == 0) throw DomainError("rational with zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
  }
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  /// Accepts "n", "n/d" and plain decimals such as "1.75" (taken exactly).
  static Rational parse(std::string_view text);

  const mpq_class& raw() const { return q_; }

  friend Rational operator+(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ + b.q_)); }
  friend Rational operator-(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ - b.q_)); }
  friend Rational operator*(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ * b.q_)); }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.q_ == 0) throw DomainError("division by zero");
    return Rational(mpq_class(a.q_ / b.q_));
  }
  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  Sign sign() const {
    int s = sgn(q_);
    return s < 0 ? Sign::negative : (s > 0 ? Sign::positive : Sign::zero);
  }
  Rational abs() const { return Rational(mpq_class(::abs(q_))); }
  double to_double() const { return q_.get_d(); }
  std::string str() const { return q_.get_str(); }

  mpz_class numerator() const { return q_.get_num(); }
  mpz_class denominator() const { return q_.get_den(); }

  bool is_integer() const { return q_.get_den() == 1; }

 private:
  mpq_class q_{0};
};

inline Rational Rational::parse(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw Error(ErrorCode::parse, "empty rational");
  try {
    auto dot = s.find('.');
    if (dot != std::string::npos) {
      std::string whole = s.substr(0, dot);
      std::string frac = s.substr(dot + 1);
      bool neg = !whole.empty() && whole[0] == '-';
      if (neg || (!whole.empty() && whole[0] == '+')) whole = whole.substr(1);
      if (whole.empty()) whole = "0";
      if (frac.find_first_not_of("0123456789") != std::string::npos ||
          whole.find_first_not_of("0123456789") != std::string::npos)
        throw Error(ErrorCode::parse, "bad decimal '" + s + "'");
      mpz_class num(whole + frac);
      mpz_class den;
      mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
      mpq_class q(num, den);
      q.canonicalize();
      return Rational(neg ? mpq_class(-q) : q);
    }
    if (s[0] == '+') s = s.substr(1);
    mpq_class q(s, 10);
    if (q.get_den() == 0) throw Error(ErrorCode::parse, "zero denominator in '" + std::string(text) + "'");
    q.canonicalize();
    return Rational(q);
  } catch (const std::invalid_argument&) {
    throw Error(ErrorCode::parse, "bad rational '" + std::string(text) + "'");
  }
}

inline std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

// ---------------------------------------------------------------------------
// Quadratic: a + b*sqrt(D)

class Quadratic {
 public:
  static constexpr bool exact = true;

  Quadratic() = default;
  template <std::integral I>
  Quadratic(I v) : a_(v) {}  // NOLINT(google-explicit-constructor)
  Quadratic(Rational a) : a_(std::move(a)) {}  // NOLINT(google-explicit-constructor)
  Quadratic(Rational a, Rational b, long radicand) : a_(std::move(a)), b_(std::move(b)), d_(radicand) {
    if (b_.sign() != Sign::zero) check_radicand(d_);
    if (b_.sign() == Sign::zero) d_ = 0;
  }

  /// (1 + sqrt5) / 2
  static Quadratic golden() { return Quadratic(Rational(1, 2), Rational(1, 2), 5); }

  /// Parses the canonical form produced by str(), e.g. "(1+sqrt5)/4",
  /// "-3sqrt5/2", "7/4".
  static Quadratic parse(std::string_view text);

  const Rational& rational_part() const { return a_; }
  const Rational& radical_part() const { return b_; }
  long radicand() const { return d_; }

  friend Quadratic operator+(const Quadratic& x, const Quadratic& y) {
    long d = common(x, y);
    return Quadratic(x.a_ + y.a_, x.b_ + y.b_, d);
  }
  friend Quadratic operator-(const Quadratic& x, const Quadratic& y) {
    long d = common(x, y);
    return Quadratic(x.a_ - y.a_, x.b_ - y.b_, d);
  }
  friend Quadratic operator*(const Quadratic& x, const Quadratic& y) {
    long d = common(x, y);
    return Quadratic(x.a_ * y.a_ + x.b_ * y.b_ * Rational(d), x.a_ * y.b_ + x.b_ * y.a_, d);
  }
  friend Quadratic operator/(const Quadratic& x, const Quadratic& y) { return x * y.inverse(); }
  Quadratic operator-() const { return Quadratic(-a_, -b_, d_); }

  Quadratic inverse() const {
    Rational norm = a_ * a_ - b_ * b_ * Rational(d_);
    if (norm.sign() == Sign::zero) throw DomainError("division by zero in quadratic field");
    return Quadratic(a_ / norm, -b_ / norm, d_);
  }

  friend bool operator==(const Quadratic& x, const Quadratic& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && (x.b_.sign() == Sign::zero || x.d_ == y.d_);
  }
  friend std::strong_ordering operator<=>(const Quadratic& x, const Quadratic& y) {
    switch ((x - y).sign()) {
      case Sign::negative: return std::strong_ordering::less;
      case Sign::positive: return std::strong_ordering::greater;
      default: return std::strong_ordering::equal;
    }
  }

  Sign sign() const {
    Sign sa = a_.sign(), sb = b_.sign();
    if (sb == Sign::zero) return sa;
    if (sa == Sign::zero || sa == sb) return sb;
    // opposite signs: compare a^2 with b^2 D
    auto c = (a_ * a_) <=> (b_ * b_ * Rational(d_));
    return c > 0 ? sa : sb;  // equality impossible for non-square D
  }
  Quadratic abs() const { return sign() == Sign::negative ? -*this : *this; }
  double to_double() const {
    return a_.to_double() + b_.to_double() * std::sqrt(static_cast<double>(d_));
  }
  std::string str() const;

 private:
  static void check_radicand(long d) {
    if (d < 2) throw DomainError("radicand must be an integer >= 2");
    long r = static_cast<long>(std::sqrt(static_cast<double>(d)));
    for (long k = std::max(0L, r - 1); k <= r + 1; ++k)
      if (k * k == d) throw DomainError("radicand " + std::to_string(d) + " is a perfect square");
  }
  static long common(const Quadratic& x, const Quadratic& y) {
    if (x.d_ == 0) return y.d_;
    if (y.d_ == 0 || x.d_ == y.d_) return x.d_;
    throw Error(ErrorCode::field_mismatch,
                "mixing sqrt" + std::to_string(x.d_) + " and sqrt" + std::to_string(y.d_));
  }

  Rational a_{0};
  Rational b_{0};
  long d_{0};
};

inline std::string Quadratic::str() const {
  if (b_.sign() == Sign::zero) return a_.str();
  mpz_class den;
  mpz_lcm(den.get_mpz_t(), a_.denominator().get_mpz_t(), b_.denominator().get_mpz_t());
  mpz_class big_a = a_.numerator() * (den / a_.denominator());
  mpz_class big_b = b_.numerator() * (den / b_.denominator());
  std::string radical = "sqrt" + std::to_string(d_);
  auto coeff = [&](const mpz_class& v) {
    mpz_class m = ::abs(v);
    return m == 1 ? radical : m.get_str() + radical;
  };
  std::string num;
  bool two_terms = big_a != 0;
  if (two_terms) {
    num = big_a.get_str();
    num += (big_b < 0 ? "-" : "+");
    num += coeff(big_b);
  } else {
    num = (big_b < 0 ? "-" : "") + coeff(big_b);
  }
  if (den == 1) return num;
  if (two_terms) return "(" + num + ")/" + den.get_str();
  return num + "/" + den.get_str();
}

inline Quadratic Quadratic::parse(std::string_view text) {
  std::string s(text);
  auto fail = [&]() -> Quadratic { throw Error(ErrorCode::parse, "bad quadratic '" + s + "'"); };
  if (s.find("sqrt") == std::string::npos) return Quadratic(Rational::parse(s));
  std::string body = s;
  mpz_class den = 1;
  auto slash = body.rfind('/');
  if (slash != std::string::npos && body.find("sqrt", slash) == std::string::npos) {
    den = mpz_class(body.substr(slash + 1));
    body = body.substr(0, slash);
  }
  if (!body.empty() && body.front() == '(') {
    if (body.back() != ')') return fail();
    body = body.substr(1, body.size() - 2);
  }
  // split into rational term and radical term
  auto pos = body.find("sqrt");
  std::size_t split = std::string::npos;
  for (std::size_t i = pos; i-- > 0;) {
    if ((body[i] == '+' || body[i] == '-') && i > 0) { split = i; break; }
  }
  std::string a_txt = split == std::string::npos ? "0" : body.substr(0, split);
  std::string b_txt = split == std::string::npos ? body : body.substr(split);
  auto rp = b_txt.find("sqrt");
  std::string coef = b_txt.substr(0, rp);
  long d = std::stol(b_txt.substr(rp + 4));
  if (coef.empty() || coef == "+") coef = "1";
  if (coef == "-") coef = "-1";
  if (coef[0] == '+') coef = coef.substr(1);
  mpq_class qa(mpz_class(a_txt), den), qb(mpz_class(coef), den);
  qa.canonicalize();
  qb.canonicalize();
  return Quadratic(Rational(qa), Rational(qb), d);
}

inline std::ostream& operator<<(std::ostream& os, const Quadratic& q) { return os << q.str(); }

// ---------------------------------------------------------------------------
// Tracked: double midpoint with an absolute error radius.
//
// Every operation adds the rounding error of the midpoint computation
// (|v| * 2^-bits) and of the radius update itself, so radius() is an upper
// bound on |true value - mid()| whenever the inputs' radii were.

class Tracked {
 public:
  static constexpr bool exact = false;
  static constexpr int max_bits = 53;

  Tracked() = default;
  template <std::integral I>
  Tracked(I v) : mid_(static_cast<double>(v)) {  // NOLINT(google-explicit-constructor)
    if (static_cast<I>(mid_) != v) rad_ = up(std::fabs(mid_) * unit());
  }
  Tracked(const Rational& r) : mid_(r.to_double()) {  // NOLINT(google-explicit-constructor)
    // mpq get_d truncates: error below one ulp
    rad_ = up(std::fabs(mid_) * 2.0 * unit());
    if (mid_ == 0.0 && r.sign() != Sign::zero) rad_ = std::numeric_limits<double>::min();
  }
  Tracked(double mid, double radius) : mid_(mid), rad_(radius) {
    if (!(radius >= 0.0)) throw DomainError("negative error radius");
  }

  double mid() const { return mid_; }
  double radius() const { return rad_; }

  friend Tracked operator+(const Tracked& x, const Tracked& y) {
    double v = x.mid_ + y.mid_;
    return Tracked(v, up(x.rad_ + y.rad_ + std::fabs(v) * unit()));
  }
  friend Tracked operator-(const Tracked& x, const Tracked& y) {
    double v = x.mid_ - y.mid_;
    return Tracked(v, up(x.rad_ + y.rad_ + std::fabs(v) * unit()));
  }
  friend Tracked operator*(const Tracked& x, const Tracked& y) {
    double v = x.mid_ * y.mid_;
    double r = std::fabs(x.mid_) * y.rad_ + std::fabs(y.mid_) * x.rad_ + x.rad_ * y.rad_ + std::fabs(v) * unit();
    return Tracked(v, up(r));
  }
  friend Tracked operator/(const Tracked& x, const Tracked& y) {
    double lo = std::fabs(y.mid_) - y.rad_;
    if (!(lo > 0.0)) throw PrecisionError("tracked division by an interval containing zero");
    double v = x.mid_ / y.mid_;
    double r = (x.rad_ + std::fabs(v) * y.rad_) / down(lo) + std::fabs(v) * unit();
    return Tracked(v, up(r));
  }
  Tracked operator-() const { return Tracked(-mid_, rad_); }

  Sign sign() const {
    if (mid_ - rad_ > 0.0) return Sign::positive;
    if (mid_ + rad_ < 0.0) return Sign::negative;
    if (mid_ == 0.0 && rad_ == 0.0) return Sign::zero;
    return Sign::ambiguous;
  }
  Tracked abs() const {
    if (sign() == Sign::ambiguous) {
      double hi = std::fabs(mid_) + rad_;
      return Tracked(hi / 2, up(hi / 2));
    }
    return Tracked(std::fabs(mid_), rad_);
  }
  double to_double() const { return mid_; }
  std::string str() const {
    std::ostringstream os;
    os.precision(17);
    os << mid_;
    os.precision(3);
    os << "~" << rad_;
    return os.str();
  }

  /// Interval hull of two tracked values.
  static Tracked hull(const Tracked& x, const Tracked& y) {
    double lo = std::min(x.mid_ - x.rad_, y.mid_ - y.rad_);
    double hi = std::max(x.mid_ + x.rad_, y.mid_ + y.rad_);
    double m = lo / 2 + hi / 2;
    return Tracked(m, up(std::max(hi - m, m - lo)));
  }

  /// Structural equality (same midpoint and radius); not a numeric test.
  friend bool operator==(const Tracked& x, const Tracked& y) { return x.mid_ == y.mid_ && x.rad_ == y.rad_; }

 private:
  static double unit() { return std::ldexp(1.0, -max_bits); }
  static double up(double x) { return x * (1.0 + 4.0 * unit()) + std::numeric_limits<double>::denorm_min(); }
  static double down(double x) { return x * (1.0 - 4.0 * unit()); }

  double mid_{0.0};
  double rad_{0.0};
};

inline std::ostream& operator<<(std::ostream& os, const Tracked& t) { return os << t.str(); }

// ---------------------------------------------------------------------------
// Generic helpers

template <class T>
concept Number = requires(const T& a, const T& b) {
  { a + b } -> std::convertible_to<T>;
  { a - b } -> std::convertible_to<T>;
  { a * b } -> std::convertible_to<T>;
  { a / b } -> std::convertible_to<T>;
  { a.sign() } -> std::same_as<Sign>;
  { a.abs() } -> std::convertible_to<T>;
  { a.to_double() } -> std::same_as<double>;
  { a.str() } -> std::same_as<std::string>;
  { T::exact } -> std::convertible_to<bool>;
};

template <Number Num>
inline constexpr const char* policy_name() {
  if constexpr (std::is_same_v<Num, Rational>) return "rational";
  else if constexpr (std::is_same_v<Num, Quadratic>) return "quadratic";
  else return "tracked";
}

/// Three-way comparison; throws PrecisionError when a tracked difference
/// straddles zero.
template <Number Num>
std::strong_ordering compare(const Num& a, const Num& b) {
  switch ((a - b).sign()) {
    case Sign::negative: return std::strong_ordering::less;
    case Sign::positive: return std::strong_ordering::greater;
    case Sign::zero: return std::strong_ordering::equal;
    case Sign::ambiguous: break;
  }
  throw PrecisionError("comparison unresolved at tracked precision: " + a.str() + " vs " + b.str());
}

/// Like compare() but returns Sign::ambiguous instead of throwing.
template <Number Num>
Sign compare_sign(const Num& a, const Num& b) {
  return (a - b).sign();
}

template <Number Num> bool lt(const Num& a, const Num& b) { return compare(a, b) < 0; }
template <Number Num> bool le(const Num& a, const Num& b) { return compare(a, b) <= 0; }
template <Number Num> bool eq(const Num& a, const Num& b) { return compare(a, b) == 0; }

template <Number Num>
const Num& min_of(const Num& a, const Num& b) { return lt(b, a) ? b : a; }
template <Number Num>
const Num& max_of(const Num& a, const Num& b) { return lt(a, b) ? b : a; }

template <Number Num>
Num pow_int(Num base, unsigned e) {
  Num r(1);
  while (e) {
    if (e & 1u) r = r * base;
    e >>= 1u;
    if (e) base = base * base;
  }
  return r;
}

/// 2^-k as an exact (or tracked) number.
template <Number Num>
Num inv_pow2(unsigned k) {
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, k);
  return Num(Rational(mpq_class(mpz_class(1), den)));
}

}  // namespace tentlim

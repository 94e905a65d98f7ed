#pragma once

// Itineraries, kneading sequences and the parity-lexicographic order.
//
// Symbols: '0' left of c, 'C' at c, '1' right of c, '?' when a tracked
// value cannot be placed relative to c.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "tentlim/tentmap.hpp"

namespace tentlim {

/// Repeats `word` forever.
struct PeriodicTail {
  std::string word;
  friend bool operator==(const PeriodicTail&, const PeriodicTail&) = default;
};

/// head, then sep + run^k for k = start, start+step, ...
/// ("10", '0', '1', 1, 1) gives 10 01 011 0111 ... = 100101101110...
struct BlocksTail {
  std::string head;
  char sep = '0';
  char run = '1';
  unsigned start = 1;
  unsigned step = 1;
  friend bool operator==(const BlocksTail&, const BlocksTail&) = default;
};

class SymbolWord {
 public:
  using Tail = std::variant<std::monostate, PeriodicTail, BlocksTail>;

  SymbolWord() = default;
  SymbolWord(std::string finite, Tail tail = {}) : finite_(std::move(finite)), tail_(std::move(tail)) {  // NOLINT
    for (char ch : finite_) check_symbol(ch);
    if (auto* p = std::get_if<PeriodicTail>(&tail_)) {
      if (p->word.empty()) throw DomainError("periodic tail must be nonempty");
      for (char ch : p->word) check_symbol(ch);
    }
    if (auto* b = std::get_if<BlocksTail>(&tail_)) {
      if (b->step == 0 && b->start == 0) throw DomainError("blocks tail with empty blocks");
      for (char ch : b->head) check_symbol(ch);
      check_symbol(b->sep);
      check_symbol(b->run);
    }
  }

  /// The kneading sequence 100101^2 01^3 01^4 ...
  static SymbolWord increasing_blocks() { return SymbolWord("", BlocksTail{"10", '0', '1', 1, 1}); }

  const std::string& finite() const { return finite_; }
  const Tail& tail() const { return tail_; }
  bool infinite() const { return !std::holds_alternative<std::monostate>(tail_); }
  std::size_t finite_length() const { return finite_.size(); }

  /// Symbol at index i; throws DepthError past the end of a finite word.
  char at(std::size_t i) const {
    if (i < finite_.size()) return finite_[i];
    i -= finite_.size();
    if (auto* p = std::get_if<PeriodicTail>(&tail_)) return p->word[i % p->word.size()];
    if (auto* b = std::get_if<BlocksTail>(&tail_)) {
      if (i < b->head.size()) return b->head[i];
      i -= b->head.size();
      for (std::uint64_t k = b->start;; k += b->step) {
        if (i == 0) return b->sep;
        if (i <= k) return b->run;
        i -= k + 1;
      }
    }
    throw DepthError("symbol index " + std::to_string(i + finite_.size()) + " past finite word");
  }

  /// First n symbols.
  std::string prefix(std::size_t n) const {
    std::string out;
    out.reserve(n);
    if (auto* b = std::get_if<BlocksTail>(&tail_)) {
      out = finite_.substr(0, n);
      if (out.size() < n) out += b->head.substr(0, n - out.size());
      for (std::uint64_t k = b->start; out.size() < n; k += b->step) {
        out += b->sep;
        out.append(std::min<std::uint64_t>(k, n - out.size()), b->run);
      }
      out.resize(n);
      return out;
    }
    for (std::size_t i = 0; i < n; ++i) out += at(i);
    return out;
  }

  std::string str() const {
    std::string out = finite_;
    if (auto* p = std::get_if<PeriodicTail>(&tail_)) out += "(" + p->word + ")^inf";
    if (std::holds_alternative<BlocksTail>(tail_)) out += prefix(finite_.size() + 16).substr(finite_.size()) + "...";
    return out;
  }

  friend bool operator==(const SymbolWord&, const SymbolWord&) = default;

 private:
  static void check_symbol(char ch) {
    if (ch != '0' && ch != '1' && ch != 'C' && ch != '?')
      throw Error(ErrorCode::parse, std::string("invalid symbol '") + ch + "'");
  }

  std::string finite_;
  Tail tail_;
};

// ---------------------------------------------------------------------------
// Itineraries

template <Number Num>
char symbol_of(const Slope<Num>& sl, const Num& x) {
  switch (compare_sign(x, sl.c())) {
    case Sign::negative: return '0';
    case Sign::positive: return '1';
    case Sign::zero: return 'C';
    case Sign::ambiguous: return '?';
  }
  return '?';
}

template <Number Num>
SymbolWord itinerary(const Slope<Num>& sl, Num x, std::size_t n) {
  if (x.sign() == Sign::negative || compare_sign(x, sl.right()) == Sign::positive)
    throw DomainError("itinerary: x outside [0, s/2]");
  std::string w;
  w.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) x = tent_eval(sl, x);
    w += symbol_of(sl, x);
  }
  return SymbolWord(std::move(w));
}

template <Number Num>
SymbolWord kneading_sequence(const Slope<Num>& sl, std::size_t n) {
  return itinerary(sl, sl.c1(), n);
}

// ---------------------------------------------------------------------------
// Parity-lexicographic order: 0 < C < 1, reversed after an odd number of 1s.

namespace detail {
inline int symbol_rank(char ch) {
  switch (ch) {
    case '0': return 0;
    case 'C': return 1;
    case '1': return 2;
  }
  throw PrecisionError("unresolved symbol in kneading comparison");
}
}  // namespace detail

/// Compares the first n symbols of a and b (n defaults to the shorter
/// length). Returns <0, 0, >0.
inline int kneading_compare(std::string_view a, std::string_view b, std::size_t n = SIZE_MAX) {
  n = std::min({n, a.size(), b.size()});
  bool odd = false;
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] != b[i]) {
      int d = detail::symbol_rank(a[i]) - detail::symbol_rank(b[i]);
      return odd ? -d : d;
    }
    if (a[i] == '1') odd = !odd;
    if (a[i] == '?') throw PrecisionError("unresolved symbol in kneading comparison");
  }
  return 0;
}

/// Shift-maximality: every shift of w is <= w on the overlapping length,
/// and w starts with 1.
inline bool is_admissible(std::string_view w) {
  if (w.empty() || w[0] != '1') return false;
  for (std::size_t k = 1; k < w.size(); ++k)
    if (kneading_compare(w.substr(k), w) > 0) return false;
  return true;
}

/// Replaces every C by `with` ('0' or '1'). The two choices are the one-sided
/// limits of the itinerary at a point that hits c.
inline std::string resolve_critical(std::string_view w, char with) {
  std::string out(w);
  std::replace(out.begin(), out.end(), 'C', with);
  return out;
}

/// The larger of the two one-sided readings in the kneading order.
inline std::string resolve_critical_max(std::string_view w) {
  std::string lo = resolve_critical(w, '0'), hi = resolve_critical(w, '1');
  return kneading_compare(lo, hi) >= 0 ? lo : hi;
}

// ---------------------------------------------------------------------------
// Slope identification

struct SlopeEstimate {
  Slope<Tracked> slope;
  /// Outer bracket [lo, hi] of the slopes whose kneading prefix equals the
  /// target (clamped to the search range).
  Rational lo, hi;
  /// A dyadic slope whose kneading prefix equals the target, if one was hit.
  std::optional<Rational> witness;
  unsigned evaluations = 0;
};

/// First n kneading symbols for a rational slope, without the range check.
inline std::string kneading_prefix_raw(const Rational& s, std::size_t n) {
  return kneading_sequence(Slope<Rational>::unchecked(s), n).finite();
}

/// Bisection on s over (sqrt2, 2] using monotonicity of the kneading
/// sequence in s. Returns the midpoint of the bracket with the half-width as
/// error radius.
inline SlopeEstimate slope_from_kneading(const SymbolWord& word, double eps) {
  if (!(eps > 0)) throw DomainError("slope_from_kneading: eps must be positive");
  const std::string& target = word.finite();
  const std::size_t n = target.size();
  if (n == 0 || target.find('?') != std::string::npos || !is_admissible(target))
    throw Error(ErrorCode::inadmissible_prefix, "prefix '" + target + "' is not shift-maximal");
  const bool has_c = target.find('C') != std::string::npos;

  unsigned evals = 0;
  std::optional<Rational> witness;
  auto cmp_at = [&](const Rational& s) {
    ++evals;
    int c = kneading_compare(kneading_prefix_raw(s, n), target);
    if (c == 0 && !witness) witness = s;
    return c;
  };

  const Rational bottom(1414213562373L, 1000000000000L);  // just below sqrt2
  const Rational top(2);
  Rational eps_q{mpq_class(eps)};

  auto bisect = [&](auto pred, Rational lo, Rational hi, const Rational& width) {
    // invariant: pred(lo) true, pred(hi) false
    while (hi - lo > width) {
      Rational mid = (lo + hi) * Rational(1, 2);
      if (pred(mid)) lo = mid; else hi = mid;
    }
    return std::make_pair(lo, hi);
  };
  auto below = [&](const Rational& s) { return cmp_at(s) < 0; };
  auto at_most = [&](const Rational& s) { return cmp_at(s) <= 0; };

  const int at_bottom = cmp_at(bottom);
  const int at_top = cmp_at(top);
  if (at_top < 0 || at_bottom > 0)
    throw Error(ErrorCode::prefix_unresolvable, "no slope in (sqrt2, 2] has kneading prefix '" + target + "'");
  const Rational width = eps_q * Rational(1, 4);
  Rational lo = at_bottom < 0 ? bisect(below, bottom, top, width).first : bottom;
  Rational hi = at_top <= 0 ? top : bisect(at_most, bottom, top, width).second;

  if (!witness && !has_c) {
    // keep narrowing toward the boundary from the inside until a slope with
    // exactly this prefix is hit
    Rational a = lo, b = hi;
    for (int i = 0; i < 256 && !witness && b - a > Rational(0); ++i) {
      Rational mid = (a + b) * Rational(1, 2);
      int c = cmp_at(mid);
      if (c < 0) a = mid; else if (c > 0) b = mid;
    }
    if (!witness)
      throw Error(ErrorCode::prefix_unresolvable, "no slope in (sqrt2, 2] has kneading prefix '" + target + "'");
  }
  if (has_c && hi - lo > eps_q)
    throw Error(ErrorCode::prefix_unresolvable, "bracket for '" + target + "' did not shrink below eps");

  Rational mid = (lo + hi) * Rational(1, 2);
  Tracked s(mid);
  s = Tracked(s.mid(), s.radius() + (hi - lo).to_double() * 0.5 * (1 + 1e-12));
  return SlopeEstimate{Slope<Tracked>::unchecked(s), lo, hi, witness, evals};
}

// ---------------------------------------------------------------------------
// Two-sided words

/// A bi-infinite (or finite) word with a dot. Symbols at positions i >= 0
/// lie right of the dot, i < 0 left of it. Finite parts sit next to the dot;
/// periodic tails repeat outward.
class TwoSidedWord {
 public:
  TwoSidedWord() = default;
  TwoSidedWord(std::string left, std::string right, std::string left_period = "", std::string right_period = "")
      : left_(std::move(left)), right_(std::move(right)), lper_(std::move(left_period)), rper_(std::move(right_period)) {}

  /// Symbol at position i relative to the dot.
  char at(long i) const {
    long j = i + offset_;
    if (j >= 0) {
      auto u = static_cast<std::size_t>(j);
      if (u < right_.size()) return right_[u];
      if (rper_.empty()) throw DepthError("two-sided word ends on the right");
      return rper_[(u - right_.size()) % rper_.size()];
    }
    auto u = static_cast<std::size_t>(-j - 1);  // 0 is the symbol just left of the dot
    if (u < left_.size()) return left_[left_.size() - 1 - u];
    if (lper_.empty()) throw DepthError("two-sided word ends on the left");
    std::size_t k = (u - left_.size()) % lper_.size();
    return lper_[lper_.size() - 1 - k];
  }

  /// sigma^k: moves the dot k places to the right.
  TwoSidedWord shifted(long k) const {
    TwoSidedWord w = *this;
    w.offset_ += k;
    return w;
  }

  /// Centered factor of radius r as "left.right".
  std::string window(std::size_t r) const {
    std::string out;
    for (long i = -static_cast<long>(r); i < 0; ++i) out += at(i);
    out += '.';
    for (long i = 0; i < static_cast<long>(r); ++i) out += at(i);
    return out;
  }

 private:
  std::string left_, right_, lper_, rper_;
  long offset_ = 0;
};

/// Centered radius-w factors "left.right" of nu occurring at dot positions
/// j >= tail_start within the first `length` symbols. Factors found only in
/// the transient head are excluded; on long prefixes this approximates the
/// set of limits of sigma^j(nu).
inline std::set<std::string> two_sided_limit_set(const SymbolWord& nu, std::size_t w, std::size_t length = 5000,
                                                 std::optional<std::size_t> tail_start = std::nullopt) {
  if (w < 1) throw DomainError("two_sided_limit_set: window must be >= 1");
  if (!nu.infinite()) throw DomainError("two_sided_limit_set: word needs an infinite tail");
  std::size_t start = std::max(tail_start.value_or(length / 2), w);
  std::string pre = nu.prefix(length);
  std::set<std::string> out;
  for (std::size_t j = start; j + w <= length; ++j)
    out.insert(pre.substr(j - w, w) + "." + pre.substr(j, w));
  return out;
}

}  // namespace tentlim

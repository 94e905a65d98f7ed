#pragma once

// Points and arcs of the inverse limit K_s = lim([0, s/2], T_s).
//
// A point is a finite backward orbit (x_0, x_{-1}, ..., x_{-m}) plus a
// descriptor for the coordinates beyond -m.

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tentlim/tentmap.hpp"

namespace tentlim {

namespace tail {
/// x_{-m-j} = x_{-m} / s^j (always the left preimage).
struct Zero {
  friend bool operator==(const Zero&, const Zero&) = default;
};
/// x_{-m-j} = cycle[(j-1) % k], where cycle[k-1] = x_{-m}.
template <class Num>
struct Periodic {
  std::vector<Num> cycle;
};
/// x_{-m-j} = c_{i-j} for j <= i (x_{-m} = c_i), then the zero branch below c.
struct Critical {
  std::size_t i = 0;
  friend bool operator==(const Critical&, const Critical&) = default;
};
/// Preimage choices repeated periodically: 'L' picks y/s, 'R' picks 1 - y/s.
struct Branch {
  std::string word;
  friend bool operator==(const Branch&, const Branch&) = default;
};
/// Any admissible extension; the point is known only to depth m.
struct Unspecified {
  friend bool operator==(const Unspecified&, const Unspecified&) = default;
};
}  // namespace tail

template <Number Num>
using Tail = std::variant<tail::Zero, tail::Periodic<Num>, tail::Critical, tail::Branch, tail::Unspecified>;

template <Number Num>
std::string tail_name(const Tail<Num>& t) {
  switch (t.index()) {
    case 0: return "zero";
    case 1: return "periodic";
    case 2: return "critical";
    case 3: return "branch";
    default: return "unspecified";
  }
}

template <Number Num>
class ILPoint {
 public:
  ILPoint(Slope<Num> slope, std::vector<Num> trunc, Tail<Num> tail = tail::Unspecified{})
      : slope_(std::move(slope)), trunc_(std::move(trunc)), tail_(std::move(tail)) {
    validate();
  }

  /// 0bar = (..., 0, 0, 0).
  static ILPoint zero(const Slope<Num>& sl) { return ILPoint(sl, {Num(0)}, tail::Zero{}); }

  /// The fixed point (..., q, q, q) with q = s/(1+s).
  static ILPoint fixed_point(const Slope<Num>& sl) {
    Num q = sl.s() / (Num(1) + sl.s());
    return ILPoint(sl, {q}, tail::Periodic<Num>{{q}});
  }

  const Slope<Num>& slope() const { return slope_; }
  const std::vector<Num>& trunc() const { return trunc_; }
  const Tail<Num>& tail() const { return tail_; }
  /// Index m of the deepest stored coordinate.
  std::size_t depth() const { return trunc_.size() - 1; }
  bool structured() const { return !std::holds_alternative<tail::Unspecified>(tail_); }

  /// x_{-k}.
  Num coordinate(std::size_t k) const {
    if (k <= depth()) return trunc_[k];
    return extended(k).trunc_[k];
  }

  /// pi_k.
  Num pi(std::size_t k) const { return coordinate(k); }

  /// Same point with coordinates stored down to index `to`.
  ILPoint extended(std::size_t to) const {
    if (to <= depth()) return *this;
    const std::size_t m = depth();
    std::vector<Num> tr = trunc_;
    tr.reserve(to + 1);
    Tail<Num> nt = tail_;
    const std::size_t extra = to - m;
    if (std::holds_alternative<tail::Unspecified>(tail_)) {
      throw DepthError("coordinate " + std::to_string(to) + " beyond depth " + std::to_string(m) +
                       " of a point with unspecified tail");
    } else if (std::holds_alternative<tail::Zero>(tail_)) {
      for (std::size_t j = 0; j < extra; ++j) tr.push_back(tr.back() / slope_.s());
    } else if (auto* p = std::get_if<tail::Periodic<Num>>(&tail_)) {
      const auto& cyc = p->cycle;
      const std::size_t k = cyc.size();
      for (std::size_t j = 1; j <= extra; ++j) tr.push_back(cyc[(j - 1) % k]);
      std::vector<Num> rot(k);
      for (std::size_t r = 0; r < k; ++r) rot[r] = cyc[(r + extra) % k];
      nt = tail::Periodic<Num>{std::move(rot)};
    } else if (auto* c = std::get_if<tail::Critical>(&tail_)) {
      // x_{-m-j} = c_{i-j}: recompute the orbit segment forward from c
      std::vector<Num> orbit{slope_.c()};
      for (std::size_t r = 1; r <= c->i; ++r) orbit.push_back(tent_eval(slope_, orbit.back()));
      for (std::size_t j = 1; j <= extra; ++j) {
        if (j <= c->i) tr.push_back(orbit[c->i - j]);
        else tr.push_back(tr.back() / slope_.s());
      }
      if (extra >= c->i) nt = tail::Zero{};
      else nt = tail::Critical{c->i - extra};
    } else if (auto* b = std::get_if<tail::Branch>(&tail_)) {
      const std::string& w = b->word;
      for (std::size_t j = 0; j < extra; ++j) {
        char dir = w[j % w.size()];
        Num y = tr.back() / slope_.s();
        if (dir == 'R') {
          y = Num(1) - y;
          if (compare_sign(y, slope_.right()) == Sign::positive)
            throw DomainError("branch tail leaves [0, s/2] at coordinate " + std::to_string(m + j + 1));
        }
        tr.push_back(std::move(y));
      }
      std::string rot(w.size(), ' ');
      for (std::size_t r = 0; r < w.size(); ++r) rot[r] = w[(r + extra) % w.size()];
      nt = tail::Branch{rot};
    }
    return ILPoint(slope_, std::move(tr), std::move(nt), NoCheck{});
  }

  /// Shortest truncation carrying the same point (periodic and zero tails
  /// absorb matching trailing coordinates).
  ILPoint normalized() const {
    std::vector<Num> tr = trunc_;
    Tail<Num> t = tail_;
    if (std::holds_alternative<tail::Zero>(t)) {
      // x_{-m} is redundant when it is the left preimage of x_{-m+1}
      while (tr.size() > 1 && tr[tr.size() - 2] == tr.back() * slope_.s()) tr.pop_back();
    } else if (auto* p = std::get_if<tail::Periodic<Num>>(&t)) {
      auto cyc = p->cycle;
      const std::size_t k = cyc.size();
      // dropping x_{-m} rotates it into the front of the cycle
      while (tr.size() > 1) {
        std::vector<Num> rot(k);
        rot[0] = tr.back();
        for (std::size_t r = 1; r < k; ++r) rot[r] = cyc[r - 1];
        if (!(rot[k - 1] == tr[tr.size() - 2])) break;
        tr.pop_back();
        cyc = std::move(rot);
      }
      t = tail::Periodic<Num>{std::move(cyc)};
    }
    return ILPoint(slope_, std::move(tr), std::move(t), NoCheck{});
  }

  std::string str() const {
    std::string out = "(";
    out += "..." + tail_name<Num>(tail_);
    for (std::size_t k = trunc_.size(); k-- > 0;) out += ", " + trunc_[k].str();
    return out + ")";
  }

 private:
  struct NoCheck {};
  ILPoint(Slope<Num> slope, std::vector<Num> trunc, Tail<Num> tail, NoCheck)
      : slope_(std::move(slope)), trunc_(std::move(trunc)), tail_(std::move(tail)) {}

  static bool maybe_equal(const Num& a, const Num& b) {
    Sign sg = compare_sign(a, b);
    return sg == Sign::zero || sg == Sign::ambiguous;
  }

  void validate() const {
    if (trunc_.empty()) throw DomainError("ILPoint needs at least x_0");
    for (std::size_t k = 0; k < trunc_.size(); ++k) {
      const Num& v = trunc_[k];
      if (v.sign() == Sign::negative || compare_sign(v, slope_.right()) == Sign::positive)
        throw DomainError("coordinate x_{-" + std::to_string(k) + "} = " + v.str() + " outside [0, s/2]");
      if (k > 0 && !maybe_equal(tent_eval(slope_, v), trunc_[k - 1]))
        throw DomainError("T(x_{-" + std::to_string(k) + "}) != x_{-" + std::to_string(k - 1) + "}");
    }
    if (auto* p = std::get_if<tail::Periodic<Num>>(&tail_)) {
      const auto& cyc = p->cycle;
      if (cyc.empty()) throw DomainError("empty periodic tail");
      if (!maybe_equal(cyc.back(), trunc_.back())) throw DomainError("periodic tail must end at x_{-m}");
      for (std::size_t r = 0; r < cyc.size(); ++r) {
        const Num& prev = r == 0 ? trunc_.back() : cyc[r - 1];
        if (!maybe_equal(tent_eval(slope_, cyc[r]), prev)) throw DomainError("periodic tail is not a backward orbit");
      }
    } else if (auto* c = std::get_if<tail::Critical>(&tail_)) {
      Num ci = slope_.c();
      for (std::size_t r = 0; r < c->i; ++r) ci = tent_eval(slope_, ci);
      if (!maybe_equal(ci, trunc_.back())) throw DomainError("critical tail requires x_{-m} = c_i");
    } else if (auto* b = std::get_if<tail::Branch>(&tail_)) {
      if (b->word.empty() || b->word.find_first_not_of("LR") != std::string::npos)
        throw DomainError("branch tail must be a nonempty word over {L,R}");
    }
  }

  Slope<Num> slope_;
  std::vector<Num> trunc_;
  Tail<Num> tail_;
};

// ---------------------------------------------------------------------------
// Metric

template <Number Num>
struct Distance {
  Num value;
  /// |true distance - value| <= error.
  Num error;
};

namespace detail {
template <Number Num>
Num weighted_sum(const ILPoint<Num>& x, const ILPoint<Num>& y, std::size_t from, std::size_t to) {
  Num sum(0);
  Num w = inv_pow2<Num>(static_cast<unsigned>(from));
  for (std::size_t k = from; k <= to; ++k) {
    sum = sum + w * (x.trunc()[k] - y.trunc()[k]).abs();
    w = w * Num(Rational(1, 2));
  }
  return sum;
}
}  // namespace detail

/// d(x, y) = sum_k 2^-k |x_{-k} - y_{-k}| with a rigorous tail error.
/// Zero/zero and periodic/periodic tails are summed in closed form.
template <Number Num>
Distance<Num> metric_dist(const ILPoint<Num>& x, const ILPoint<Num>& y, std::size_t extra = 64) {
  const auto& sl = x.slope();
  if (!x.structured() || !y.structured()) {
    std::size_t m = std::min(x.depth(), y.depth());
    if (x.structured()) m = y.depth();
    if (y.structured()) m = x.depth();
    auto xe = x.extended(m), ye = y.extended(m);
    return {detail::weighted_sum(xe, ye, 0, m), inv_pow2<Num>(static_cast<unsigned>(m)) * sl.s()};
  }
  const std::size_t D = std::max(x.depth(), y.depth());
  const bool zz = std::holds_alternative<tail::Zero>(x.tail()) && std::holds_alternative<tail::Zero>(y.tail());
  auto* px = std::get_if<tail::Periodic<Num>>(&x.tail());
  auto* py = std::get_if<tail::Periodic<Num>>(&y.tail());
  if (zz) {
    auto xe = x.extended(D), ye = y.extended(D);
    Num head = detail::weighted_sum(xe, ye, 0, D);
    Num delta = (xe.trunc()[D] - ye.trunc()[D]).abs();
    Num rest = inv_pow2<Num>(static_cast<unsigned>(D)) * delta / (Num(2) * sl.s() - Num(1));
    return {head + rest, Num(0)};
  }
  if (px && py) {
    const std::size_t L = std::lcm(px->cycle.size(), py->cycle.size());
    auto xe = x.extended(D + L), ye = y.extended(D + L);
    Num head = detail::weighted_sum(xe, ye, 0, D);
    Num block = detail::weighted_sum(xe, ye, D + 1, D + L);
    Num geom = Num(1) / (Num(1) - inv_pow2<Num>(static_cast<unsigned>(L)));
    return {head + block * geom, Num(0)};
  }
  const std::size_t K = D + extra;
  auto xe = x.extended(K), ye = y.extended(K);
  return {detail::weighted_sum(xe, ye, 0, K), inv_pow2<Num>(static_cast<unsigned>(K)) * sl.s()};
}

/// Exact equality when decidable from the representations.
template <Number Num>
bool same_point(const ILPoint<Num>& x, const ILPoint<Num>& y) {
  auto d = metric_dist(x, y);
  return d.value.sign() == Sign::zero && d.error.sign() == Sign::zero;
}

/// sigma^R. Forward steps prepend T(x_0); backward steps drop x_0.
template <Number Num>
ILPoint<Num> shift(const ILPoint<Num>& x, long r) {
  if (r == 0) return x;
  if (r > 0) {
    std::vector<Num> tr;
    tr.reserve(x.trunc().size() + static_cast<std::size_t>(r));
    Num v = x.trunc()[0];
    std::vector<Num> head;
    for (long i = 0; i < r; ++i) {
      v = tent_eval(x.slope(), v);
      head.push_back(v);
    }
    tr.assign(head.rbegin(), head.rend());
    tr.insert(tr.end(), x.trunc().begin(), x.trunc().end());
    return ILPoint<Num>(x.slope(), std::move(tr), x.tail());
  }
  const auto k = static_cast<std::size_t>(-r);
  ILPoint<Num> e = x.depth() >= k ? x : x.extended(k);  // throws on unspecified tails
  std::vector<Num> tr(e.trunc().begin() + static_cast<long>(k), e.trunc().end());
  return ILPoint<Num>(x.slope(), std::move(tr), e.tail());
}

// ---------------------------------------------------------------------------
// Arcs parametrized by one coordinate

/// The arc { x : x_{-M} = u in [lo, hi], coordinates beyond -M given by a
/// fixed zero or branch tail }. pi_M is a homeomorphism onto [lo, hi].
template <Number Num>
class Arc {
 public:
  Arc(Slope<Num> slope, std::size_t index, Num lo, Num hi, Tail<Num> tail = tail::Zero{})
      : slope_(std::move(slope)), index_(index), lo_(std::move(lo)), hi_(std::move(hi)), tail_(std::move(tail)) {
    if (compare(lo_, hi_) > 0) throw DomainError("arc with lo > hi");
    if (lo_.sign() == Sign::negative || compare(hi_, slope_.right()) > 0) throw DomainError("arc leaves [0, s/2]");
    if (!std::holds_alternative<tail::Zero>(tail_) && !std::holds_alternative<tail::Branch>(tail_))
      throw DomainError("arc tail must be zero or branch");
  }

  const Slope<Num>& slope() const { return slope_; }
  /// The parameter coordinate M.
  std::size_t index() const { return index_; }
  const Num& lo() const { return lo_; }
  const Num& hi() const { return hi_; }
  const Tail<Num>& tail() const { return tail_; }

  bool contains_param(const Num& u) const { return compare(lo_, u) <= 0 && compare(u, hi_) <= 0; }

  /// pi_k(point(u)) = T^{M-k}(u) for k <= M.
  Num project(const Num& u, std::size_t k) const {
    if (k > index_) throw DomainError("project: k beyond the parameter index");
    return tent_iterate(slope_, u, static_cast<unsigned>(index_ - k));
  }

  ILPoint<Num> point(const Num& u) const {
    if (!contains_param(u)) throw DomainError("arc parameter " + u.str() + " outside [lo, hi]");
    std::vector<Num> tr(index_ + 1);
    Num v = u;
    tr[index_] = v;
    for (std::size_t k = index_; k-- > 0;) {
      v = tent_eval(slope_, v);
      tr[k] = v;
    }
    return ILPoint<Num>(slope_, std::move(tr), tail_);
  }

  /// Parameter of x if x lies on the arc. Decided exactly: beyond index M
  /// both x and the arc follow periodic branch patterns, so agreement over
  /// one common period past both starts settles every deeper coordinate.
  /// Points with unspecified tails are never located.
  std::optional<Num> locate(const ILPoint<Num>& x) const {
    if (std::holds_alternative<tail::Unspecified>(x.tail())) return std::nullopt;
    Num u = x.coordinate(index_);
    if (!contains_param(u)) return std::nullopt;
    std::size_t start = std::max(index_, x.depth()), period = 1;
    if (auto* p = std::get_if<tail::Periodic<Num>>(&x.tail())) period = p->cycle.size();
    if (auto* c = std::get_if<tail::Critical>(&x.tail())) start = std::max(index_, x.depth() + c->i);
    if (auto* b = std::get_if<tail::Branch>(&x.tail())) period = b->word.size();
    if (auto* b = std::get_if<tail::Branch>(&tail_)) period = std::lcm(period, b->word.size());
    const std::size_t horizon = start + period + 1;
    auto mine = point(u).extended(horizon);
    auto theirs = x.extended(horizon);
    for (std::size_t k = index_ + 1; k <= horizon; ++k)
      if (compare(mine.trunc()[k], theirs.trunc()[k]) != 0) return std::nullopt;
    return u;
  }

  /// Subarc over [a, b].
  Arc sub(const Num& a, const Num& b) const {
    if (!contains_param(a) || !contains_param(b)) throw DomainError("subarc outside the arc");
    return Arc(slope_, index_, a, b, tail_);
  }

 private:
  Slope<Num> slope_;
  std::size_t index_;
  Num lo_, hi_;
  Tail<Num> tail_;
};

/// The arc [0bar, s_n] of the 0-composant seen through pi_p: parameter
/// u = x_{-(p+n)} in [0, c] with the zero tail.
template <Number Num>
class FundamentalArc : public Arc<Num> {
 public:
  FundamentalArc(const Slope<Num>& sl, std::size_t p, std::size_t n)
      : Arc<Num>(sl, p + n, Num(0), sl.c(), tail::Zero{}), p_(p), n_(n) {}
  std::size_t p() const { return p_; }
  std::size_t n() const { return n_; }

 private:
  std::size_t p_, n_;
};

template <Number Num>
FundamentalArc<Num> fundamental_arc(const Slope<Num>& sl, std::size_t p, std::size_t n) {
  return FundamentalArc<Num>(sl, p, n);
}

/// Uniform sample of an arc: `count` + 1 parameters from lo to hi.
template <Number Num>
std::vector<ILPoint<Num>> sample_arc(const Arc<Num>& a, std::size_t count, const std::vector<Num>& extra_params = {}) {
  std::vector<Num> us;
  for (std::size_t i = 0; i <= count; ++i) us.push_back(a.lo() + (a.hi() - a.lo()) * Num(Rational(static_cast<long>(i), static_cast<long>(std::max<std::size_t>(count, 1)))));
  for (const auto& u : extra_params)
    if (a.contains_param(u)) us.push_back(u);
  std::vector<ILPoint<Num>> out;
  out.reserve(us.size());
  for (const auto& u : us) out.push_back(a.point(u));
  return out;
}

/// Hausdorff distance between two finite point sets using the metric
/// truncated at depth m; the error term covers the dropped coordinates.
template <Number Num>
Distance<Num> arc_hausdorff(const std::vector<ILPoint<Num>>& A, const std::vector<ILPoint<Num>>& B, std::size_t m) {
  if (A.empty() || B.empty()) throw DomainError("arc_hausdorff of an empty sample");
  const auto& sl = A.front().slope();
  auto trunc_dist = [&](const ILPoint<Num>& x, const ILPoint<Num>& y) {
    return detail::weighted_sum(x.extended(m), y.extended(m), 0, m);
  };
  auto directed = [&](const auto& P, const auto& Q) {
    std::optional<Num> worst;
    for (const auto& x : P) {
      std::optional<Num> best;
      for (const auto& y : Q) {
        Num d = trunc_dist(x, y);
        if (!best || compare_sign(d, *best) == Sign::negative) best = d;
      }
      if (!worst || compare_sign(*best, *worst) == Sign::positive) worst = *best;
    }
    return *worst;
  };
  Num ab = directed(A, B), ba = directed(B, A);
  Num h = compare_sign(ab, ba) == Sign::negative ? ba : ab;
  return {h, inv_pow2<Num>(static_cast<unsigned>(m)) * sl.s()};
}

}  // namespace tentlim

#pragma once

// Tent map T_s(x) = min(sx, s(1-x)) on I = [0, s/2], sqrt2 < s <= 2.

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tentlim/number.hpp"

namespace tentlim {

template <Number Num>
class Slope {
 public:
  /// Default error budget for tracked runs before PrecisionError.
  static constexpr double default_threshold = 1.0 / 1024;

  explicit Slope(Num s, double threshold = default_threshold) : Slope(std::move(s), threshold, true) {}

  /// Skips the sqrt2 < s <= 2 check. Used by parameter searches that probe
  /// the boundary; do not build inverse-limit objects on such slopes.
  static Slope unchecked(Num s, double threshold = default_threshold) { return Slope(std::move(s), threshold, false); }

  const Num& s() const { return d_->s; }
  const Num& c() const { return d_->c; }
  const Num& c1() const { return d_->c1; }
  const Num& c2() const { return d_->c2; }
  /// Right end of I, equal to c1.
  const Num& right() const { return d_->c1; }
  double threshold() const { return d_->threshold; }
  std::string str() const { return d_->s.str(); }

  friend bool operator==(const Slope& a, const Slope& b) { return a.d_ == b.d_ || a.d_->s == b.d_->s; }

 private:
  struct Data {
    Num s, c, c1, c2;
    double threshold;
  };

  Slope(Num s, double threshold, bool check) {
    if (check) {
      if (compare(s, Num(0)) <= 0 || compare(s * s, Num(2)) <= 0 || compare(s, Num(2)) > 0)
        throw DomainError("slope " + s.str() + " outside (sqrt2, 2]");
    }
    Num c = Num(Rational(1, 2));
    Num c1 = s * c;
    Num c2 = s * (Num(1) - c1);
    d_ = std::make_shared<const Data>(Data{std::move(s), std::move(c), std::move(c1), std::move(c2), threshold});
  }

  std::shared_ptr<const Data> d_;
};

/// T_s(x) for x in [0,1].
template <Number Num>
Num tent_eval(const Slope<Num>& sl, const Num& x) {
  if (x.sign() == Sign::negative || (x - Num(1)).sign() == Sign::positive)
    throw DomainError("tent_eval: x = " + x.str() + " outside [0,1]");
  Sign side = compare_sign(x, sl.c());
  if constexpr (!Num::exact) {
    if (side == Sign::ambiguous) return Num::hull(sl.s() * x, sl.s() * (Num(1) - x));
  }
  if (side == Sign::positive) return sl.s() * (Num(1) - x);
  return sl.s() * x;
}

/// T_s^n(x).
template <Number Num>
Num tent_iterate(const Slope<Num>& sl, Num x, unsigned n) {
  for (unsigned i = 0; i < n; ++i) x = tent_eval(sl, x);
  return x;
}

/// T_s^{-1}(y) intersected with [0, s/2], sorted ascending. A single point
/// when y = c1.
template <Number Num>
std::vector<Num> preimages(const Slope<Num>& sl, const Num& y) {
  if (y.sign() == Sign::negative || compare(y, sl.right()) > 0)
    throw DomainError("preimages: y = " + y.str() + " outside [0, s/2]");
  Num left = y / sl.s();
  Num right = Num(1) - left;
  std::vector<Num> out{left};
  if (compare(left, right) != 0 && compare(right, sl.right()) <= 0) out.push_back(std::move(right));
  return out;
}

template <Number Num>
struct CriticalOrbit {
  /// points[i] = c_{i+1}
  std::vector<Num> points;
  /// Smallest k with T^k(c) = c, certified (exact policies only).
  std::optional<std::size_t> period;
  /// Eventual cycle (start index i >= 1, length L) with c_{i+L} = c_i,
  /// certified (exact policies only).
  std::optional<std::pair<std::size_t, std::size_t>> cycle;
  /// Tracked policy: smallest k with |c_k - c| within the error radius.
  /// A diagnostic, never a certificate.
  std::optional<std::size_t> period_within_tolerance;

  /// c_k for 1 <= k <= points.size().
  const Num& at(std::size_t k) const { return points.at(k - 1); }
  std::size_t size() const { return points.size(); }
};

template <Number Num>
void check_precision(const Slope<Num>& sl, const Num& v, const char* where) {
  if constexpr (!Num::exact) {
    if (v.radius() > sl.threshold())
      throw PrecisionError(std::string(where) + ": error radius " + std::to_string(v.radius()) +
                           " exceeds threshold " + std::to_string(sl.threshold()));
  }
}

template <Number Num>
CriticalOrbit<Num> critical_orbit(const Slope<Num>& sl, std::size_t n) {
  if (n < 1) throw DomainError("critical_orbit: N must be >= 1");
  CriticalOrbit<Num> orb;
  orb.points.reserve(n);
  Num x = sl.c();
  std::map<std::string, std::size_t> seen;  // exact value -> first index
  for (std::size_t k = 1; k <= n; ++k) {
    x = tent_eval(sl, x);
    check_precision(sl, x, "critical_orbit");
    orb.points.push_back(x);
    if constexpr (Num::exact) {
      if (!orb.period && x == sl.c()) orb.period = k;
      if (!orb.cycle) {
        auto [it, fresh] = seen.emplace(x.str(), k);
        if (!fresh) orb.cycle = std::make_pair(it->second, k - it->second);
      }
    } else {
      if (!orb.period_within_tolerance && compare_sign(x, sl.c()) == Sign::ambiguous)
        orb.period_within_tolerance = k;
    }
  }
  if constexpr (Num::exact) {
    // c periodic: the cycle starts at c_1 even if N was too short to see c_{k+1}
    if (orb.period && !orb.cycle) orb.cycle = std::make_pair(std::size_t{1}, *orb.period);
  }
  return orb;
}

/// min over n1 <= j <= n2 of |x - c_j| (c_0 = c).
template <Number Num>
Num omega_limit_dist(const Slope<Num>& sl, const Num& x, std::size_t n1, std::size_t n2) {
  if (n1 >= n2) throw DomainError("omega_limit_dist: need N1 < N2");
  if (x.sign() == Sign::negative || compare(x, sl.right()) > 0)
    throw DomainError("omega_limit_dist: x outside [0, s/2]");
  Num cj = sl.c();
  std::optional<Num> best;
  for (std::size_t j = 0; j <= n2; ++j) {
    if (j > 0) {
      cj = tent_eval(sl, cj);
      check_precision(sl, cj, "omega_limit_dist");
    }
    if (j < n1) continue;
    Num d = (x - cj).abs();
    if (!best || compare_sign(d, *best) == Sign::negative) best = d;
  }
  return *best;
}

/// omega(c) as an explicit finite set when the critical orbit is eventually
/// periodic within `max_steps` (exact policies only), sorted ascending.
template <Number Num>
std::optional<std::vector<Num>> certified_omega(const Slope<Num>& sl, std::size_t max_steps = 256) {
  if constexpr (!Num::exact) {
    return std::nullopt;
  } else {
    auto orb = critical_orbit(sl, max_steps);
    if (!orb.cycle) return std::nullopt;
    auto [start, len] = *orb.cycle;
    std::vector<Num> out;
    for (std::size_t i = 0; i < len; ++i) out.push_back(orb.at(start + i));
    std::sort(out.begin(), out.end());
    return out;
  }
}

template <Number Num>
struct CriticalPreimage {
  Num x;
  /// Smallest k with T^k(x) = c.
  std::size_t k;
};

/// The union of T^{-k}(c) over 0 <= k <= depth, intersected with [0, s/2],
/// sorted by x. Each point carries the smallest k reaching c.
template <Number Num>
std::vector<CriticalPreimage<Num>> critical_preimages(const Slope<Num>& sl, std::size_t depth,
                                                      std::size_t cap = std::size_t{1} << 27) {
  auto less = [](const Num& a, const Num& b) { return compare(a, b) < 0; };
  std::set<Num, decltype(less)> seen(less);
  std::vector<CriticalPreimage<Num>> out;
  std::vector<Num> frontier{sl.c()};
  seen.insert(sl.c());
  for (std::size_t k = 0; k <= depth && !frontier.empty(); ++k) {
    std::vector<Num> next;
    for (auto& v : frontier) {
      if (k < depth)
        for (auto& w : preimages(sl, v))
          if (seen.insert(w).second) next.push_back(std::move(w));
      out.push_back({std::move(v), k});
      if (out.size() > cap) throw Error(ErrorCode::search_exhausted, "critical preimage tree exceeds the cap");
    }
    frontier = std::move(next);
  }
  std::sort(out.begin(), out.end(), [&](const auto& a, const auto& b) { return less(a.x, b.x); });
  return out;
}

/// Exact membership in a sorted finite set.
template <Number Num>
bool contains_exact(const std::vector<Num>& sorted, const Num& x) {
  return std::binary_search(sorted.begin(), sorted.end(), x);
}

}  // namespace tentlim

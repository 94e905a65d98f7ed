#pragma once

// p-points, p-levels, folding patterns and salient points on fundamental
// arcs of the 0-composant.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tentlim/inverse_limit.hpp"

namespace tentlim {

/// Level in N_0, or nullopt for infinity (the basepoint 0bar).
using Level = std::optional<std::size_t>;

inline std::string level_str(const Level& l) {
  if (!l) return "∞";
  return *l < 10 ? std::to_string(*l) : "[" + std::to_string(*l) + "]";
}

template <Number Num>
struct PPoint {
  Num u;
  Level level;
};

/// Hard cap on enumerated points (2^26 + 1 is the s = 2, n = 26 count).
inline constexpr std::size_t max_ppoints = (std::size_t{1} << 26) + 1;

/// All u in [0, c] with T^j(u) = c for some 0 <= j <= n, sorted by u, each
/// with level n - (smallest such j), preceded by the basepoint u = 0 with
/// level infinity. A u that hits c for several j (c periodic) gets the
/// largest level.
template <Number Num>
std::vector<PPoint<Num>> enumerate_ppoints(const FundamentalArc<Num>& arc, std::size_t cap = max_ppoints) {
  const auto& sl = arc.slope();
  const std::size_t n = arc.n();
  std::vector<PPoint<Num>> out;
  out.push_back({Num(0), std::nullopt});
  for (auto& q : critical_preimages(sl, n, cap)) {
    if (compare(q.x, sl.c()) > 0) break;
    out.push_back({std::move(q.x), n - q.k});
  }
  if (out.size() > cap) throw Error(ErrorCode::search_exhausted, "p-point enumeration exceeds the cap");
  return out;
}

struct FoldingPattern {
  std::vector<Level> levels;

  /// Compact form, e.g. "∞01020103"; levels >= 10 in brackets.
  std::string str() const {
    std::string out;
    for (const auto& l : levels) out += level_str(l);
    return out;
  }
  std::size_t size() const { return levels.size(); }
  friend bool operator==(const FoldingPattern&, const FoldingPattern&) = default;
};

template <Number Num>
FoldingPattern folding_pattern(const std::vector<PPoint<Num>>& pts) {
  FoldingPattern fp;
  fp.levels.reserve(pts.size());
  for (const auto& q : pts) fp.levels.push_back(q.level);
  return fp;
}

template <Number Num>
FoldingPattern folding_pattern(const FundamentalArc<Num>& arc) {
  return folding_pattern(enumerate_ppoints(arc));
}

template <Number Num>
struct SalientPoint {
  std::size_t index;
  /// On the depth-N arc used for extraction.
  PPoint<Num> ppoint;
  ILPoint<Num> point;
};

/// s_1..s_N from the running maxima of the folding pattern of the (p, N)
/// arc. The leading level-0 entry (s_0) is skipped.
template <Number Num>
std::vector<SalientPoint<Num>> salient_points(const Slope<Num>& sl, std::size_t p, std::size_t count) {
  if (count < 1) throw DomainError("salient_points: N must be >= 1");
  auto arc = fundamental_arc(sl, p, count);
  auto pts = enumerate_ppoints(arc);
  std::vector<SalientPoint<Num>> out;
  std::optional<std::size_t> best;
  for (const auto& q : pts) {
    if (!q.level) continue;
    if (best && *q.level <= *best) continue;
    best = q.level;
    if (*q.level == 0) continue;
    out.push_back({out.size() + 1, q, arc.point(q.u)});
  }
  return out;
}

struct PLevelScan {
  /// Largest l with x_{-p-l} = c found.
  Level level;
  /// c recurs in a periodic tail: levels are unbounded.
  bool unbounded = false;
  /// The scan stopped at a finite depth without a certificate beyond it.
  bool partial = false;
};

/// p-level of a point by scanning its coordinates.
template <Number Num>
PLevelScan p_level(const ILPoint<Num>& x, std::size_t p, std::size_t branch_scan = 128) {
  const auto& sl = x.slope();
  PLevelScan r;
  std::size_t last = x.depth();
  const auto& t = x.tail();
  if (std::holds_alternative<tail::Zero>(t)) {
    last = x.depth() + 1;  // x/s^j = c only when x = c1 and j = 1
  } else if (auto* per = std::get_if<tail::Periodic<Num>>(&t)) {
    for (const auto& v : per->cycle)
      if (v == sl.c()) r.unbounded = true;
    last = x.depth() + per->cycle.size();
  } else if (auto* cr = std::get_if<tail::Critical>(&t)) {
    last = x.depth() + cr->i + 1;
  } else if (std::holds_alternative<tail::Branch>(t)) {
    last = x.depth() + branch_scan;
    r.partial = true;
  } else {
    r.partial = true;
  }
  if (r.unbounded) return r;
  auto e = x.extended(last);
  for (std::size_t k = p; k <= last; ++k)
    if (compare_sign(e.trunc()[k], sl.c()) == Sign::zero) r.level = k - p;
  return r;
}

struct CheckReport {
  bool ok = true;
  std::string detail;
  static CheckReport fail(std::string why) { return {false, std::move(why)}; }
};

/// sigma^R maps each p-point of the (p, n) arc to the p-point of the
/// (p, n+R) arc with the same parameter and level + R.
template <Number Num>
CheckReport level_shift_check(const FundamentalArc<Num>& arc, std::size_t r) {
  if (r == 0) return {};
  const auto& sl = arc.slope();
  FundamentalArc<Num> big(sl, arc.p(), arc.n() + r);
  auto small_pts = enumerate_ppoints(arc);
  auto big_pts = enumerate_ppoints(big);
  std::map<Num, Level, decltype([](const Num& a, const Num& b) { return compare(a, b) < 0; })> lv;
  for (const auto& q : big_pts) lv[q.u] = q.level;
  for (const auto& q : small_pts) {
    auto it = lv.find(q.u);
    if (it == lv.end()) return CheckReport::fail("u = " + q.u.str() + " is not a p-point of the deeper arc");
    Level want = q.level ? Level(*q.level + r) : std::nullopt;
    if (it->second != want)
      return CheckReport::fail("u = " + q.u.str() + ": level " + level_str(it->second) + ", expected " + level_str(want));
    if (!same_point(shift(arc.point(q.u), static_cast<long>(r)), big.point(q.u)))
      return CheckReport::fail("u = " + q.u.str() + ": shifted point is not on the deeper arc");
  }
  return {};
}

}  // namespace tentlim

#pragma once

// Folding points: the omega(c) criterion, the finite-scale p-point
// criterion, and the straight-line isotopy along fold-free arcs.

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tentlim/chains.hpp"

namespace tentlim {

enum class Verdict { folding, not_folding, undecided };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::folding: return "folding";
    case Verdict::not_folding: return "not-folding";
    case Verdict::undecided: return "undecided";
  }
  return "undecided";
}

template <Number Num>
struct PPointWitness {
  std::size_t level;
  ILPoint<Num> point;
  Distance<Num> distance;
};

template <Number Num>
struct FoldingVerdict {
  Verdict verdict = Verdict::undecided;
  /// Exact certificate (otherwise qualified by depth, window or radius).
  bool certified = false;
  /// Coordinates examined.
  std::size_t depth = 0;
  /// omega test: distance of each examined coordinate to omega(c).
  std::vector<double> omega_distances;
  /// p-point test: p-points of level >= K within the radius.
  std::vector<PPointWitness<Num>> witnesses;
  /// p-point test: no p-point of level above this lies within the radius
  /// (nullopt with a not-folding verdict: none of any level).
  std::optional<std::size_t> level_bound;
  std::string detail;
};

namespace detail {

template <Number Num>
bool member(const std::vector<Num>& sorted, const Num& x) {
  return std::binary_search(sorted.begin(), sorted.end(), x, [](const Num& a, const Num& b) { return compare(a, b) < 0; });
}

template <Number Num>
Num dist_to_set(const std::vector<Num>& set, const Num& x) {
  Num best = (x - set.front()).abs();
  for (const auto& y : set) {
    Num d = (x - y).abs();
    if (compare(d, best) < 0) best = d;
  }
  return best;
}

/// Start and period of the branch pattern of x's tail.
template <Number Num>
std::pair<std::size_t, std::size_t> tail_pattern(const ILPoint<Num>& x) {
  const auto& t = x.tail();
  if (auto* p = std::get_if<tail::Periodic<Num>>(&t)) return {x.depth(), p->cycle.size()};
  if (auto* c = std::get_if<tail::Critical>(&t)) return {x.depth() + c->i, 1};
  if (auto* b = std::get_if<tail::Branch>(&t)) return {x.depth(), b->word.size()};
  return {x.depth(), 1};
}

}  // namespace detail

/// Points all of whose coordinates lie in omega(c), when omega(c) is a
/// certified finite set on which backward orbits are unique. Sorted by x_0.
template <Number Num>
std::optional<std::vector<ILPoint<Num>>> certified_folding_points(const Slope<Num>& sl) {
  auto om = certified_omega(sl);
  if (!om) return std::nullopt;
  const auto& w = *om;
  // unique preimage of each element inside omega(c)
  std::vector<std::optional<std::size_t>> pre(w.size());
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = 0; j < w.size(); ++j)
      if (tent_eval(sl, w[j]) == w[i]) {
        if (pre[i]) return std::nullopt;
        pre[i] = j;
      }
  std::vector<ILPoint<Num>> out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    std::vector<std::size_t> path{i};
    while (true) {
      auto nxt = pre[path.back()];
      if (!nxt) break;  // the backward orbit leaves omega(c)
      auto it = std::find(path.begin(), path.end(), *nxt);
      if (it != path.end()) {
        const auto at = static_cast<std::size_t>(it - path.begin());
        std::vector<Num> tr, cyc;
        for (std::size_t k = 0; k <= at; ++k) tr.push_back(w[path[k]]);
        for (std::size_t k = at + 1; k < path.size(); ++k) cyc.push_back(w[path[k]]);
        cyc.push_back(w[path[at]]);
        if (cyc.size() == 1 && cyc.front().sign() == Sign::zero)
          out.push_back(ILPoint<Num>::zero(sl));
        else
          out.emplace_back(sl, std::move(tr), tail::Periodic<Num>{std::move(cyc)});
        break;
      }
      path.push_back(*nxt);
    }
  }
  return out;
}

/// x is folding iff every x_{-k} lies in omega(c). With a certified finite
/// omega(c) the verdict is exact for structured tails: once the tail's
/// branch pattern repeats, |omega| + 1 further periods either leave omega(c)
/// or force the tail to be periodic inside it. Otherwise each coordinate
/// 0..k is compared with c_j, N1 <= j <= N2, and only a negative verdict is
/// reported (uncertified).
template <Number Num>
FoldingVerdict<Num> folding_test_omega(const ILPoint<Num>& x, std::size_t k, std::size_t n1, std::size_t n2, double tol) {
  const auto& sl = x.slope();
  FoldingVerdict<Num> v;
  if (auto om = certified_omega(sl)) {
    std::size_t horizon = k;
    if (x.structured()) {
      auto [start, period] = detail::tail_pattern(x);
      horizon = std::max(k, start + (om->size() + 1) * period);
    } else {
      horizon = std::min(k, x.depth());
    }
    auto e = x.extended(horizon);
    for (std::size_t j = 0; j <= horizon; ++j) {
      const Num& y = e.trunc()[j];
      v.omega_distances.push_back(detail::dist_to_set(*om, y).to_double());
      v.depth = j + 1;
      if (!detail::member(*om, y)) {
        v.verdict = Verdict::not_folding;
        v.certified = true;
        v.detail = "x_{-" + std::to_string(j) + "} = " + y.str() + " is not in omega(c)";
        return v;
      }
    }
    if (x.structured()) {
      v.verdict = Verdict::folding;
      v.certified = true;
      v.detail = "every coordinate lies in omega(c)";
    } else {
      v.detail = "coordinates 0.." + std::to_string(horizon) + " lie in omega(c); tail unspecified";
    }
    return v;
  }
  for (std::size_t j = 0; j <= k; ++j) {
    Num d = omega_limit_dist(sl, x.coordinate(j), n1, n2);
    v.omega_distances.push_back(d.to_double());
    v.depth = j + 1;
    if (compare_sign(d, Num(Rational(mpq_class(tol)))) == Sign::positive) {
      v.verdict = Verdict::not_folding;
      v.detail = "x_{-" + std::to_string(j) + "} stays " + std::to_string(d.to_double()) + " from c_j, j in [" +
                 std::to_string(n1) + ", " + std::to_string(n2) + "]";
      return v;
    }
  }
  v.detail = "coordinates 0.." + std::to_string(k) + " within " + std::to_string(tol) + " of the orbit window";
  return v;
}

/// Finite-scale p-point criterion. Every p-point of level L has coordinates
/// x_{-k} = c_{p+L-k} for k <= p+L, which gives an exact lower bound on its
/// distance to x and a canonical witness. Levels K .. K+span-1 are searched
/// for witnesses within `radius`. When the critical orbit is finite, the
/// levels that can come within `radius` are bounded exactly.
template <Number Num>
FoldingVerdict<Num> folding_test_ppoints(const ILPoint<Num>& x, std::size_t p, std::size_t K, const Num& radius,
                                         std::size_t span = 64, std::size_t scan = 64) {
  const auto& sl = x.slope();
  FoldingVerdict<Num> v;
  const std::size_t top = p + K + span;
  std::vector<Num> cs{sl.c()};
  while (cs.size() <= std::max(top, scan)) cs.push_back(tent_eval(sl, cs.back()));
  auto ex = x.extended(std::max(top, scan));
  auto coord = [&](std::size_t k) -> const Num& { return ex.trunc().at(k); };

  // sum_{k <= n} 2^-k |x_{-k} - c_{n-k}|, shared by all level n - p p-points
  auto lower = [&](std::size_t n) {
    Num sum(0), w(1);
    for (std::size_t k = 0; k <= n; ++k) {
      sum = sum + w * (coord(k) - cs[n - k]).abs();
      w = w / Num(2);
    }
    return sum;
  };
  // follow x's branch sides for a while below the critical point
  auto witness = [&](std::size_t n) {
    std::vector<Num> tr;
    for (std::size_t k = 0; k <= n; ++k) tr.push_back(cs[n - k]);
    for (std::size_t k = n + 1; k <= n + 16 && k < ex.trunc().size(); ++k) {
      Num y = tr.back() / sl.s();
      if (compare(coord(k), sl.c()) > 0) y = Num(1) - y;
      tr.push_back(std::move(y));
    }
    return ILPoint<Num>(sl, std::move(tr), tail::Zero{});
  };

  std::vector<std::size_t> open;
  for (std::size_t L = K; L < K + span; ++L) {
    const std::size_t n = p + L;
    if (compare(lower(n), radius) > 0) continue;
    auto y = witness(n);
    auto d = metric_dist(x, y);
    if (compare(d.value + d.error, radius) <= 0) {
      auto lv = p_level(y, p).level;
      v.witnesses.push_back({lv ? *lv : L, std::move(y), d});
    } else {
      open.push_back(L);
    }
  }
  v.depth = top + 1;

  // orbit bound: a p-point of level L with p + L = n >= m has coordinates
  // c_n, ..., c_{n-m} in positions 0..m. With an eventually periodic orbit
  // these segments repeat in n, so finitely many n cover all n >= m; once
  // the smallest partial sum exceeds the radius every level >= m - p is out.
  std::optional<std::size_t> cutoff;
  if constexpr (Num::exact) {
    auto orb = critical_orbit(sl, 256);
    if (orb.cycle) {
      auto [start, len] = *orb.cycle;
      auto c_at = [&](std::size_t j) -> Num { return j == 0 ? sl.c() : orb.at(j < start ? j : start + (j - start) % len); };
      for (std::size_t m = 0; m <= scan && !cutoff; ++m) {
        std::optional<Num> best;
        for (std::size_t n = m; n < m + start + len; ++n) {
          Num sum(0), w(1);
          for (std::size_t k = 0; k <= m; ++k) {
            sum = sum + w * (coord(k) - c_at(n - k)).abs();
            w = w / Num(2);
          }
          if (!best || compare(sum, *best) < 0) best = sum;
        }
        if (compare(*best, radius) > 0) cutoff = m;
      }
    }
  }
  if (cutoff) {
    const std::size_t first_excluded = *cutoff > p ? *cutoff - p : 0;
    v.level_bound.reset();
    for (std::size_t L = 0; L < first_excluded; ++L)
      if (compare(lower(p + L), radius) <= 0) v.level_bound = L;
    v.verdict = Verdict::not_folding;
    v.certified = true;
    v.depth = std::max(v.depth, *cutoff + 1);
    v.detail = v.level_bound ? "p-points within radius have level <= " + std::to_string(*v.level_bound)
                             : "no p-point lies within radius";
    return v;
  }
  if (!v.witnesses.empty()) {
    v.verdict = Verdict::folding;
    v.detail = std::to_string(v.witnesses.size()) + " p-points of level >= " + std::to_string(K) + " within radius";
    return v;
  }
  if (!open.empty()) {
    v.detail = "levels with unresolved candidates: " + std::to_string(open.size());
    return v;
  }
  throw Error(ErrorCode::search_exhausted, "no witness at levels " + std::to_string(K) + ".." + std::to_string(K + span - 1) +
                                               " and no bound on higher levels");
}

// ---------------------------------------------------------------------------
// Isotopy along a fold-free arc

/// Carries the location of an arc's obstruction.
class ObstructionError : public Error {
 public:
  ObstructionError(std::string where, const std::string& what) : Error(ErrorCode::no_valid_depth, what), where_(std::move(where)) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

/// Smallest m with pi_m injective on the arc: T^{M-m} must not turn inside
/// (lo, hi), i.e. no interior u with T^j(u) = c for j < M - m.
template <Number Num>
std::size_t injective_depth(const Arc<Num>& arc) {
  const std::size_t M = arc.index();
  if (M == 0 || compare(arc.lo(), arc.hi()) == 0) return 0;
  std::optional<std::size_t> jmin;
  for (const auto& q : critical_preimages(arc.slope(), M - 1))
    if (compare(arc.lo(), q.x) < 0 && compare(q.x, arc.hi()) < 0 && (!jmin || q.k < *jmin)) jmin = q.k;
  return jmin ? M - *jmin : 0;
}

template <Number Num>
class IsotopyPath {
 public:
  IsotopyPath(Arc<Num> arc, std::size_t m)
      : arc_(std::move(arc)), m_(m), a_(arc_.project(arc_.lo(), m)), b_(arc_.project(arc_.hi(), m)) {}

  const Arc<Num>& arc() const { return arc_; }
  std::size_t m() const { return m_; }
  ILPoint<Num> source() const { return arc_.point(arc_.lo()); }
  ILPoint<Num> target() const { return arc_.point(arc_.hi()); }

  /// (1 - t) pi_m(x) + t pi_m(y).
  Num projected(const Num& t) const { return (Num(1) - t) * a_ + t * b_; }

  /// The arc parameter of H(x, t).
  Num param(const Num& t) const {
    if (t.sign() == Sign::negative || compare(t, Num(1)) > 0) throw DomainError("isotopy time outside [0, 1]");
    if (compare(arc_.lo(), arc_.hi()) == 0) return arc_.lo();
    return arc_.lo() + (projected(t) - a_) * (arc_.hi() - arc_.lo()) / (b_ - a_);
  }

  /// H(x, t) = (pi_m restricted to the arc)^{-1} of the interpolated value.
  ILPoint<Num> at(const Num& t) const { return arc_.point(param(t)); }

 private:
  Arc<Num> arc_;
  std::size_t m_;
  Num a_, b_;
};

/// The arc's certified folding points, if any, as parameters.
template <Number Num>
std::vector<Num> folding_points_on(const Arc<Num>& arc) {
  std::vector<Num> out;
  if (auto fps = certified_folding_points(arc.slope()))
    for (const auto& f : *fps)
      if (auto u = arc.locate(f)) out.push_back(*u);
  return out;
}

/// Path from arc.point(lo) to arc.point(hi). Arcs through a certified
/// folding point (at an end or inside) are rejected, as is an m for which
/// pi_m is not injective on the arc.
template <Number Num>
IsotopyPath<Num> build_isotopy(const Arc<Num>& arc, std::optional<std::size_t> m = std::nullopt) {
  auto fps = folding_points_on(arc);
  if (!fps.empty())
    throw ObstructionError(fps.front().str(), "arc contains a folding point at u = " + fps.front().str());
  const std::size_t need = injective_depth(arc);
  if (m) {
    if (*m > arc.index()) throw ObstructionError("", "m = " + std::to_string(*m) + " exceeds the arc index");
    if (*m < need) {
      // name an interior turning point of T^{M-m}
      std::string where;
      for (const auto& q : critical_preimages(arc.slope(), arc.index() - *m - 1))
        if (compare(arc.lo(), q.x) < 0 && compare(q.x, arc.hi()) < 0) {
          where = q.x.str();
          break;
        }
      throw ObstructionError(where, "pi_" + std::to_string(*m) + " folds the arc at u = " + where);
    }
    return IsotopyPath<Num>(arc, *m);
  }
  return IsotopyPath<Num>(arc, need);
}

/// x < y on the source arc implies h(x) < h(y) on the target arc, checked on
/// the given increasing parameters.
template <Number Num>
CheckReport orientation_check(const Arc<Num>& source, const std::vector<Num>& params,
                              const std::function<ILPoint<Num>(const ILPoint<Num>&)>& h, const Arc<Num>& target) {
  std::optional<Num> prev;
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (i > 0 && compare(params[i - 1], params[i]) >= 0) return CheckReport::fail("sample parameters are not increasing");
    auto v = target.locate(h(source.point(params[i])));
    if (!v) return CheckReport::fail("h(x) for u = " + params[i].str() + " is not on the target arc");
    if (prev && compare(*prev, *v) >= 0)
      return CheckReport::fail("order reversed between u = " + params[i - 1].str() + " and u = " + params[i].str());
    prev = v;
  }
  return {};
}

/// The arc joining x and h(x) is a single point or has no folding point.
template <Number Num>
CheckReport connecting_arc_check(const Arc<Num>& arc, const ILPoint<Num>& x, const ILPoint<Num>& hx) {
  auto a = arc.locate(x), b = arc.locate(hx);
  if (!a || !b) return CheckReport::fail("x or h(x) is not on the arc");
  if (compare(*a, *b) == 0) return {};
  auto sub = compare(*a, *b) < 0 ? arc.sub(*a, *b) : arc.sub(*b, *a);
  auto fps = folding_points_on(sub);
  if (!fps.empty()) return CheckReport::fail("connecting arc contains a folding point at u = " + fps.front().str());
  return {};
}

}  // namespace tentlim

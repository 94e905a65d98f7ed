#pragma once

// Natural chains: covers of K_s by links pi_p^{-1}(I^j) where the intervals
// I^j are cut at the critical preimages. Links are closed intervals sharing
// endpoints, indexed from 1.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "tentlim/ppoints.hpp"

namespace tentlim {

template <Number Num>
struct ChainLink {
  std::size_t index;  // 1-based
  Num left, right;
};

template <Number Num>
class NaturalChain {
 public:
  NaturalChain(Slope<Num> slope, std::size_t p, std::size_t refine, std::vector<Num> cuts)
      : slope_(std::move(slope)), p_(p), refine_(refine), cuts_(std::move(cuts)) {
    Num prev(0);
    std::size_t idx = 1;
    for (const auto& x : cuts_) {
      if (compare(x, prev) > 0) links_.push_back({idx++, prev, x});
      prev = x;
    }
    // the end link [last cut, s/2] is empty when c1 is itself a cut
    if (compare(slope_.right(), prev) > 0) links_.push_back({idx++, prev, slope_.right()});
  }

  const Slope<Num>& slope() const { return slope_; }
  std::size_t p() const { return p_; }
  /// Cuts come from depth p + refine.
  std::size_t refine() const { return refine_; }
  const std::vector<Num>& cuts() const { return cuts_; }
  const std::vector<ChainLink<Num>>& links() const { return links_; }
  std::size_t size() const { return links_.size(); }
  const ChainLink<Num>& link(std::size_t index) const { return links_.at(index - 1); }

  /// Index of the link whose interior contains y, or of the link to the
  /// right of y when y is a cut (left at s/2).
  std::size_t locate(const Num& y) const {
    auto it = std::upper_bound(links_.begin(), links_.end(), y,
                               [](const Num& v, const ChainLink<Num>& l) { return compare(v, l.left) < 0; });
    if (it == links_.begin()) throw DomainError("locate: value below 0");
    --it;
    return it->index;
  }

  /// Index of the link containing the open interval (a, b), a < b.
  std::size_t locate_open(const Num& a, const Num& b) const {
    std::size_t i = locate(a);
    if (compare(b, link(i).right) > 0) throw DomainError("interval crosses a cut");
    return i;
  }

 private:
  Slope<Num> slope_;
  std::size_t p_, refine_;
  std::vector<Num> cuts_;
  std::vector<ChainLink<Num>> links_;
};

/// Chain with cuts at all points of T^{-i}(c), i <= p + refine, in [0, s/2].
template <Number Num>
NaturalChain<Num> build_chain(const Slope<Num>& sl, std::size_t p, std::size_t refine = 0) {
  std::vector<Num> cuts;
  for (auto& q : critical_preimages(sl, p + refine)) cuts.push_back(std::move(q.x));
  return NaturalChain<Num>(sl, p, refine, std::move(cuts));
}

/// 2 s^p max_j |I^j|, an upper bound on the mesh of C_p.
template <Number Num>
Num mesh_bound(const NaturalChain<Num>& ch) {
  Num widest(0);
  for (const auto& l : ch.links()) {
    Num w = l.right - l.left;
    if (compare(w, widest) > 0) widest = w;
  }
  return Num(2) * pow_int(ch.slope().s(), static_cast<unsigned>(ch.p())) * widest;
}

/// Covering, adjacency and cut coverage for depth p.
template <Number Num>
CheckReport check_chain_axioms(const NaturalChain<Num>& ch) {
  const auto& L = ch.links();
  if (L.empty()) return CheckReport::fail("no links");
  if (L.front().left.sign() != Sign::zero) return CheckReport::fail("first link does not start at 0");
  if (compare(L.back().right, ch.slope().right()) != 0) return CheckReport::fail("last link does not end at s/2");
  for (std::size_t i = 0; i < L.size(); ++i) {
    if (L[i].index != i + 1) return CheckReport::fail("link indices are not consecutive");
    if (compare(L[i].left, L[i].right) >= 0) return CheckReport::fail("degenerate link " + std::to_string(i + 1));
    if (i + 1 < L.size() && compare(L[i].right, L[i + 1].left) != 0)
      return CheckReport::fail("links " + std::to_string(i + 1) + " and " + std::to_string(i + 2) + " do not meet");
  }
  // closed links meet iff their indices differ by at most one: neighbours
  // share an endpoint, and a link of positive width separates the others
  for (std::size_t i = 0; i + 2 < L.size(); ++i)
    if (compare(L[i].right, L[i + 2].left) >= 0) return CheckReport::fail("links " + std::to_string(i + 1) + " and " + std::to_string(i + 3) + " overlap");
  // every critical preimage of depth <= p is a link boundary
  for (const auto& q : critical_preimages(ch.slope(), ch.p())) {
    bool found = std::binary_search(ch.cuts().begin(), ch.cuts().end(), q.x,
                                    [](const Num& a, const Num& b) { return compare(a, b) < 0; });
    if (!found) return CheckReport::fail("critical preimage " + q.x.str() + " is not a cut");
    std::size_t i = ch.locate(q.x);
    bool boundary = compare(ch.link(i).left, q.x) == 0 || compare(ch.link(i).right, q.x) == 0;
    if (!boundary) return CheckReport::fail("critical preimage " + q.x.str() + " is not a link endpoint");
  }
  return {};
}

template <Number Num>
struct RefinementReport {
  bool ok = true;
  std::string detail;
  /// assignment[i] = index of the coarse link containing T(fine link i+1).
  std::vector<std::size_t> assignment;
};

/// For each fine link I, finds the coarse link containing T(I).
template <Number Num>
RefinementReport<Num> verify_refinement(const NaturalChain<Num>& fine, const NaturalChain<Num>& coarse) {
  RefinementReport<Num> r;
  if (!(fine.slope() == coarse.slope())) {
    r.ok = false;
    r.detail = "chains over different slopes";
    return r;
  }
  const auto& sl = fine.slope();
  for (const auto& l : fine.links()) {
    if (compare(l.left, sl.c()) < 0 && compare(sl.c(), l.right) < 0) {
      r.ok = false;
      r.detail = "fine link " + std::to_string(l.index) + " has c in its interior";
      return r;
    }
    Num a = tent_eval(sl, l.left), b = tent_eval(sl, l.right);
    if (compare(a, b) > 0) std::swap(a, b);
    std::size_t j = coarse.locate(a);
    if (compare(a, coarse.link(j).right) == 0 && j < coarse.size()) ++j;  // a is a cut: step into the next link
    const auto& cl = coarse.link(j);
    if (compare(cl.left, a) > 0 || compare(b, cl.right) > 0) {
      r.ok = false;
      r.detail = "T(fine link " + std::to_string(l.index) + ") = [" + a.str() + ", " + b.str() + "] lies in no coarse link";
      return r;
    }
    r.assignment.push_back(j);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Link sequences

template <Number Num>
struct LinkSequence {
  /// Links visited in order; consecutive entries differ by one.
  std::vector<std::size_t> indices;
  /// Parameters where the path crosses from one visited link into the next
  /// (indices.size() - 1 entries).
  std::vector<Num> breaks;
  Num lo, hi;

  std::size_t size() const { return indices.size(); }
  /// Parameter interval of the i-th visit.
  std::pair<Num, Num> visit(std::size_t i) const {
    return {i == 0 ? lo : breaks[i - 1], i + 1 == indices.size() ? hi : breaks[i]};
  }
};

/// Links visited by u -> pi_p(point(u)) for u in [lo, hi] on an arc with
/// parameter index M >= p. Touching a cut without crossing it does not
/// register a new link.
template <Number Num>
LinkSequence<Num> link_sequence(const Arc<Num>& arc, const NaturalChain<Num>& ch, const Num& lo, const Num& hi) {
  const auto& sl = arc.slope();
  if (!(sl == ch.slope())) throw DomainError("link_sequence: arc and chain use different slopes");
  if (ch.p() > arc.index()) throw DomainError("link_sequence: chain depth exceeds the arc index");
  if (compare(lo, hi) > 0 || !arc.contains_param(lo) || !arc.contains_param(hi))
    throw DomainError("link_sequence: parameter range outside the arc");
  const std::size_t d = arc.index() - ch.p();

  // turning points of T^d: u with T^k(u) = c for some k < d
  std::vector<Num> knots{lo};
  if (d > 0)
    for (auto& q : critical_preimages(sl, d - 1))
      if (compare(lo, q.x) < 0 && compare(q.x, hi) < 0) knots.push_back(std::move(q.x));
  knots.push_back(hi);

  LinkSequence<Num> seq{{}, {}, lo, hi};
  auto push = [&](std::size_t idx, const std::optional<Num>& at) {
    if (!seq.indices.empty() && seq.indices.back() == idx) return;
    if (!seq.indices.empty()) seq.breaks.push_back(*at);
    seq.indices.push_back(idx);
  };
  if (compare(lo, hi) == 0) {
    Num y = tent_iterate(sl, lo, static_cast<unsigned>(d));
    seq.indices.push_back(ch.locate(y));
    return seq;
  }
  const auto& cuts = ch.cuts();
  auto less = [](const Num& a, const Num& b) { return compare(a, b) < 0; };
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const Num &u0 = knots[i], &u1 = knots[i + 1];
    Num y0 = tent_iterate(sl, u0, static_cast<unsigned>(d));
    Num y1 = tent_iterate(sl, u1, static_cast<unsigned>(d));
    const bool up = compare(y0, y1) < 0;
    const Num& ylo = up ? y0 : y1;
    const Num& yhi = up ? y1 : y0;
    // cuts strictly inside (ylo, yhi), in travel order
    auto b = std::upper_bound(cuts.begin(), cuts.end(), ylo, less);
    auto e = std::lower_bound(cuts.begin(), cuts.end(), yhi, less);
    std::vector<Num> inner(b, e);
    if (!up) std::reverse(inner.begin(), inner.end());
    Num prev_y = y0;
    std::optional<Num> at;
    for (const auto& k : inner) {
      push(ch.locate_open(up ? prev_y : k, up ? k : prev_y), at);
      at = u0 + (k - y0) * (u1 - u0) / (y1 - y0);
      prev_y = k;
    }
    push(ch.locate_open(up ? prev_y : y1, up ? y1 : prev_y), at);
  }
  return seq;
}

template <Number Num>
LinkSequence<Num> link_sequence(const Arc<Num>& arc, const NaturalChain<Num>& ch) {
  return link_sequence(arc, ch, arc.lo(), arc.hi());
}

struct SymmetryResult {
  bool symmetric = false;
  /// k/2 for a visit sequence l^0..l^k; a half-integer when k is odd.
  double center = 0;
  bool has_center_visit() const { return symmetric && center == static_cast<double>(static_cast<std::size_t>(center)); }
};

inline SymmetryResult link_symmetric(const std::vector<std::size_t>& seq) {
  if (seq.empty()) throw DomainError("link_symmetric: empty sequence");
  SymmetryResult r;
  r.symmetric = std::equal(seq.begin(), seq.begin() + static_cast<long>(seq.size() / 2), seq.rbegin());
  r.center = static_cast<double>(seq.size() - 1) / 2.0;
  return r;
}

/// Highest-level p-point of a fundamental arc inside [a, b].
template <Number Num>
std::optional<PPoint<Num>> highest_ppoint(const std::vector<PPoint<Num>>& pts, const Num& a, const Num& b) {
  std::optional<PPoint<Num>> best;
  for (const auto& q : pts) {
    if (compare(q.u, a) < 0 || compare(q.u, b) > 0) continue;
    if (!best || (!q.level) || (best->level && *q.level > *best->level)) best = q;
  }
  return best;
}

template <Number Num>
struct SymmetricArc {
  Num lo, hi;
  std::vector<std::size_t> indices;
  /// Visit range [first, last] within the universe sequence.
  std::size_t first = 0, last = 0;
  /// Stopped at the far end of the universe arc rather than at a mismatch.
  /// Reaching u = 0 does not count: the basepoint ends the composant.
  bool boundary_limited = false;
  /// Highest-level p-point of the central visit (odd visit counts only).
  std::optional<PPoint<Num>> center;
};

/// Grows a palindrome of visits outward from the visit containing `at`.
template <Number Num>
SymmetricArc<Num> maximal_link_symmetric(const FundamentalArc<Num>& universe, const NaturalChain<Num>& ch, const Num& at) {
  if (ch.p() != universe.p()) throw DomainError("maximal_link_symmetric: chain depth differs from the arc's p");
  auto seq = link_sequence(universe, ch);
  auto pts = enumerate_ppoints(universe);
  // visits whose closed parameter interval holds `at` (two when `at` is a break)
  std::vector<std::size_t> starts;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    auto [a, b] = seq.visit(i);
    if (compare(a, at) <= 0 && compare(at, b) <= 0) starts.push_back(i);
  }
  if (starts.empty()) throw DomainError("maximal_link_symmetric: point not on the arc");
  std::optional<SymmetricArc<Num>> best;
  for (std::size_t c : starts) {
    std::size_t i = c, j = c;
    while (i > 0 && j + 1 < seq.size() && seq.indices[i - 1] == seq.indices[j + 1]) {
      --i;
      ++j;
    }
    SymmetricArc<Num> r{seq.visit(i).first, seq.visit(j).second,
                        {seq.indices.begin() + static_cast<long>(i), seq.indices.begin() + static_cast<long>(j) + 1},
                        i, j, j + 1 == seq.size(), std::nullopt};
    auto [ca, cb] = seq.visit(c);
    r.center = highest_ppoint(pts, ca, cb);
    if (!best || r.indices.size() > best->indices.size()) best = std::move(r);
  }
  return *best;
}

}  // namespace tentlim

#pragma once

// JSON, CSV and SVG renderings. Exact numbers are written as canonical
// strings so that outputs diff cleanly.

#include <nlohmann/json.hpp>

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "tentlim/folding.hpp"
#include "tentlim/symbolic.hpp"

namespace tentlim::io {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// JSON

/// {"finite": ..., "tail": {"kind": "none" | "periodic" | "increasing_blocks", ...}}
inline json to_json(const SymbolWord& w) {
  json t;
  if (auto* p = std::get_if<PeriodicTail>(&w.tail())) {
    t = {{"kind", "periodic"}, {"word", p->word}};
  } else if (auto* b = std::get_if<BlocksTail>(&w.tail())) {
    t = {{"kind", "increasing_blocks"}, {"head", b->head}, {"sep", std::string(1, b->sep)},
         {"run", std::string(1, b->run)}, {"start", b->start}, {"step", b->step}};
  } else {
    t = {{"kind", "none"}};
  }
  return {{"finite", w.finite()}, {"tail", t}};
}

inline SymbolWord word_from_json(const json& j) {
  std::string finite = j.value("finite", "");
  if (!j.contains("tail")) return SymbolWord(finite);
  const auto& t = j.at("tail");
  const std::string kind = t.value("kind", "none");
  auto one_char = [&](const char* key, char dflt) {
    std::string s = t.value(key, std::string(1, dflt));
    if (s.size() != 1) throw Error(ErrorCode::parse, std::string("tail field '") + key + "' must be one symbol");
    return s[0];
  };
  if (kind == "none") return SymbolWord(finite);
  if (kind == "periodic") return SymbolWord(finite, PeriodicTail{t.at("word").get<std::string>()});
  if (kind == "increasing_blocks")
    return SymbolWord(finite, BlocksTail{t.value("head", ""), one_char("sep", '0'), one_char("run", '1'),
                                         t.value("start", 1u), t.value("step", 1u)});
  throw Error(ErrorCode::parse, "unknown tail kind '" + kind + "'");
}

template <Number Num>
json strings(const std::vector<Num>& xs) {
  json a = json::array();
  for (const auto& x : xs) a.push_back(x.str());
  return a;
}

template <Number Num>
json to_json(const ILPoint<Num>& x) {
  json t = {{"kind", tail_name<Num>(x.tail())}};
  if (auto* p = std::get_if<tail::Periodic<Num>>(&x.tail())) t["cycle"] = strings(p->cycle);
  if (auto* c = std::get_if<tail::Critical>(&x.tail())) t["i"] = c->i;
  if (auto* b = std::get_if<tail::Branch>(&x.tail())) t["word"] = b->word;
  return {{"slope", x.slope().str()}, {"coordinates", strings(x.trunc())}, {"tail", t}};
}

template <Number Num>
json to_json(const CriticalOrbit<Num>& orb) {
  json j = {{"points", strings(orb.points)}};
  j["period"] = orb.period ? json(*orb.period) : json(nullptr);
  if (orb.cycle)
    j["cycle"] = {{"start", orb.cycle->first}, {"length", orb.cycle->second}};
  else
    j["cycle"] = nullptr;
  return j;
}

template <Number Num>
json to_json(const LinkSequence<Num>& seq) {
  return seq.indices;
}

template <Number Num>
json to_json(const FoldingVerdict<Num>& v) {
  json j = {{"verdict", verdict_name(v.verdict)}, {"certified", v.certified}, {"depth", v.depth}, {"detail", v.detail}};
  if (!v.omega_distances.empty()) j["omega_distances"] = v.omega_distances;
  if (!v.witnesses.empty()) {
    json ws = json::array();
    for (const auto& w : v.witnesses)
      ws.push_back({{"level", w.level}, {"distance", w.distance.value.str()}, {"error", w.distance.error.str()},
                    {"point", to_json(w.point)}});
    j["witnesses"] = ws;
  }
  j["level_bound"] = v.level_bound ? json(*v.level_bound) : json(nullptr);
  return j;
}

template <Number Num>
json to_json(const std::vector<SalientPoint<Num>>& sal) {
  json a = json::array();
  for (const auto& s : sal) a.push_back({{"index", s.index}, {"u", s.ppoint.u.str()}, {"level", *s.ppoint.level}});
  return a;
}

// ---------------------------------------------------------------------------
// CSV

/// Columns: index,left,right.
template <Number Num>
std::string chain_csv(const NaturalChain<Num>& ch) {
  std::ostringstream os;
  os << "index,left,right\n";
  for (const auto& l : ch.links()) os << l.index << ',' << l.left.str() << ',' << l.right.str() << '\n';
  return os.str();
}

/// Columns: t,u,pi_m,x_0,...,x_M (M the arc index).
template <Number Num>
std::string isotopy_csv(const IsotopyPath<Num>& H, std::size_t samples) {
  const std::size_t M = H.arc().index();
  std::ostringstream os;
  os << "t,u,pi_m";
  for (std::size_t k = 0; k <= M; ++k) os << ",x_" << k;
  os << '\n';
  for (std::size_t i = 0; i <= samples; ++i) {
    Num t(Rational(static_cast<long>(i), static_cast<long>(std::max<std::size_t>(samples, 1))));
    auto x = H.at(t);
    os << t.str() << ',' << H.param(t).str() << ',' << x.pi(H.m()).str();
    for (std::size_t k = 0; k <= M; ++k) os << ',' << x.coordinate(k).str();
    os << '\n';
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// SVG

namespace detail {
inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}
}  // namespace detail

/// One horizontal band per chain, links as alternating rectangles over
/// [0, s/2]; cuts are labeled when there are few enough to read.
template <Number Num>
std::string chain_svg(const std::vector<NaturalChain<Num>>& chains, double width = 960, double band = 36) {
  using detail::fmt;
  const double left = 70, top = 10;
  const double total_h = top + static_cast<double>(chains.size()) * (band + 24) + 10;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(width + left + 20) << "\" height=\"" << fmt(total_h)
     << "\" font-family=\"monospace\" font-size=\"9\">\n";
  for (std::size_t r = 0; r < chains.size(); ++r) {
    const auto& ch = chains[r];
    const double span = ch.slope().right().to_double();
    const double y = top + static_cast<double>(r) * (band + 24);
    os << "<text x=\"4\" y=\"" << fmt(y + band / 2 + 3) << "\">p=" << ch.p();
    if (ch.refine()) os << "+" << ch.refine();
    os << "</text>\n";
    for (const auto& l : ch.links()) {
      const double x0 = left + width * l.left.to_double() / span;
      const double x1 = left + width * l.right.to_double() / span;
      os << "<rect x=\"" << fmt(x0) << "\" y=\"" << fmt(y) << "\" width=\"" << fmt(x1 - x0) << "\" height=\"" << fmt(band)
         << "\" fill=\"" << (l.index % 2 ? "#9ecae1" : "#3182bd") << "\" stroke=\"#08306b\" stroke-width=\"0.5\"/>\n";
    }
    if (ch.cuts().size() <= 24)
      for (const auto& cut : ch.cuts())
        os << "<text x=\"" << fmt(left + width * cut.to_double() / span) << "\" y=\"" << fmt(y + band + 11)
           << "\" text-anchor=\"middle\">" << cut.str() << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

/// Barcode of a folding pattern: one bar per p-point, height by level.
inline std::string pattern_svg(const FoldingPattern& fp, double bar = 6, double unit = 12) {
  using detail::fmt;
  std::size_t top = 0;
  for (const auto& l : fp.levels)
    if (l) top = std::max(top, *l);
  const double h = unit * static_cast<double>(top + 2);
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(bar * static_cast<double>(fp.size()) + 4)
     << "\" height=\"" << fmt(h) << "\">\n";
  for (std::size_t i = 0; i < fp.size(); ++i) {
    const double lh = fp.levels[i] ? unit * static_cast<double>(*fp.levels[i] + 1) : h;
    os << "<rect x=\"" << fmt(2 + bar * static_cast<double>(i)) << "\" y=\"" << fmt(h - lh) << "\" width=\"" << fmt(bar - 1)
       << "\" height=\"" << fmt(lh) << "\" fill=\"" << (fp.levels[i] ? "#636363" : "#de2d26") << "\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace tentlim::io

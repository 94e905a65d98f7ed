// tentlim: command-line front end.
//
// Exit status: 0 success, 1 usage or parse error, 2 verification failure or
// a computation that could not be completed. Errors print "E_CODE: message"
// on stderr.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <variant>

#include "tentlim/tentlim.hpp"

namespace {

using namespace tentlim;
using io::json;

using AnySlope = std::variant<Slope<Rational>, Slope<Quadratic>, Slope<Tracked>>;

/// "7/4", "2", "1.75", "golden", "a,b,D", "(1+sqrt5)/2", "float:1.7[:bits]".
AnySlope parse_slope(const std::string& text) {
  if (text == "golden") return Slope<Quadratic>(Quadratic::golden());
  if (text.rfind("float:", 0) == 0) {
    std::string rest = text.substr(6);
    int bits = Tracked::max_bits;
    if (auto colon = rest.find(':'); colon != std::string::npos) {
      bits = std::stoi(rest.substr(colon + 1));
      rest = rest.substr(0, colon);
      if (bits < 1 || bits > Tracked::max_bits) throw Error(ErrorCode::parse, "bits must be in [1, 53]");
    }
    double v = std::stod(rest);
    return Slope<Tracked>(Tracked(v, std::fabs(v) * std::ldexp(1.0, -bits)));
  }
  if (auto c1 = text.find(','); c1 != std::string::npos) {
    auto c2 = text.find(',', c1 + 1);
    if (c2 == std::string::npos) throw Error(ErrorCode::parse, "quadratic slope must be a,b,D");
    return Slope<Quadratic>(
        Quadratic(Rational::parse(text.substr(0, c1)), Rational::parse(text.substr(c1 + 1, c2 - c1 - 1)), std::stol(text.substr(c2 + 1))));
  }
  if (text.find("sqrt") != std::string::npos) return Slope<Quadratic>(Quadratic::parse(text));
  return Slope<Rational>(Rational::parse(text));
}

template <Number Num>
Num parse_value(const std::string& text) {
  if constexpr (std::is_same_v<Num, Quadratic>) {
    return Quadratic::parse(text);
  } else {
    return Num(Rational::parse(text));
  }
}

struct VerificationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Relative --out paths land under $TENTLIM_OUTPUT_DIR when it is set.
void emit(const std::string& out, const std::string& text) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::filesystem::path path(out);
  if (path.is_relative())
    if (const char* dir = std::getenv("TENTLIM_OUTPUT_DIR"); dir && *dir) path = std::filesystem::path(dir) / path;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path);
  if (!f) throw Error(ErrorCode::domain, "cannot write " + path.string());
  f << text;
  std::cerr << "wrote " << path.string() << '\n';
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

struct Common {
  std::string slope;
  std::string format = "text";
  std::string out;
};

void add_common(CLI::App* sub, Common& c, bool needs_slope, std::vector<std::string> formats) {
  if (needs_slope) sub->add_option("--slope", c.slope, "slope: p/q, decimal, golden, a,b,D, float:x[:bits]")->required();
  sub->add_option("--format", c.format, "output format")->check(CLI::IsMember(formats));
  sub->add_option("--out", c.out, "output file (default stdout)");
}

template <class F>
void with_slope(const std::string& text, F&& f) {
  std::visit(std::forward<F>(f), parse_slope(text));
}

// ---------------------------------------------------------------------------

/// Largest gap left in [c2, c1] by c_1..c_n. Shrinking gaps suggest a dense
/// orbit; no finite n certifies density.
template <class Orbit, class Sl>
double largest_gap(const Orbit& orb, const Sl& sl) {
  std::vector<double> xs{sl.c2().to_double(), sl.c1().to_double()};
  for (const auto& x : orb.points) xs.push_back(x.to_double());
  std::sort(xs.begin(), xs.end());
  double gap = 0;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) gap = std::max(gap, xs[i + 1] - xs[i]);
  return gap;
}

void cmd_orbit(const Common& c, std::size_t n, bool density) {
  with_slope(c.slope, [&](const auto& sl) {
    auto orb = critical_orbit(sl, n);
    if (c.format == "json") {
      auto j = io::to_json(orb);
      if (density) j["largest_gap"] = largest_gap(orb, sl);
      return emit(c.out, dump(j));
    }
    std::ostringstream os;
    if (density) {
      os.precision(6);
      os << "largest gap in [c2, c1] after " << orb.size() << " points: " << largest_gap(orb, sl) << '\n';
      return emit(c.out, os.str());
    }
    os << "c_0 = " << sl.c().str() << '\n';
    for (std::size_t k = 1; k <= orb.size(); ++k) os << "c_" << k << " = " << orb.at(k).str() << '\n';
    if (orb.period)
      os << "periodic=" << *orb.period << '\n';
    else if (orb.cycle)
      os << "eventually periodic: start=" << orb.cycle->first << " length=" << orb.cycle->second << '\n';
    else if (orb.period_within_tolerance)
      os << "period within tolerance=" << *orb.period_within_tolerance << '\n';
    else
      os << "no cycle within " << n << " steps\n";
    emit(c.out, os.str());
  });
}

void cmd_kneading(const Common& c, std::size_t n) {
  with_slope(c.slope, [&](const auto& sl) {
    auto w = kneading_sequence(sl, n);
    emit(c.out, c.format == "json" ? dump(io::to_json(w)) : w.str() + "\n");
  });
}

void cmd_slope_from_kneading(const Common& c, const std::string& word, double eps) {
  auto est = slope_from_kneading(SymbolWord(word), eps);
  if (c.format == "json") {
    json j = {{"lo", est.lo.str()}, {"hi", est.hi.str()}, {"slope", est.slope.s().str()}, {"evaluations", est.evaluations}};
    j["witness"] = est.witness ? json(est.witness->str()) : json(nullptr);
    return emit(c.out, dump(j));
  }
  std::ostringstream os;
  os.precision(17);
  os << "interval [" << est.lo.to_double() << ", " << est.hi.to_double() << "]\n";
  os << "width " << (est.hi - est.lo).to_double() << '\n';
  os << "slope " << est.slope.s().str() << '\n';
  emit(c.out, os.str());
}

void cmd_fp(const Common& c, std::size_t p, std::size_t depth) {
  with_slope(c.slope, [&](const auto& sl) {
    auto pts = enumerate_ppoints(fundamental_arc(sl, p, depth));
    auto fp = folding_pattern(pts);
    if (c.format == "svg") return emit(c.out, io::pattern_svg(fp));
    if (c.format == "csv") {
      std::ostringstream os;
      os << "u,level\n";
      for (const auto& q : pts) os << q.u.str() << ',' << (q.level ? std::to_string(*q.level) : "inf") << '\n';
      return emit(c.out, os.str());
    }
    if (c.format == "json") {
      json lv = json::array();
      for (const auto& l : fp.levels) lv.push_back(l ? json(*l) : json(nullptr));
      return emit(c.out, dump({{"pattern", fp.str()}, {"levels", lv}}));
    }
    emit(c.out, fp.str() + "\n");
  });
}

void cmd_salient(const Common& c, std::size_t p, std::size_t n) {
  with_slope(c.slope, [&](const auto& sl) {
    auto sal = salient_points(sl, p, n);
    if (c.format == "json") return emit(c.out, dump(io::to_json(sal)));
    std::ostringstream os;
    for (const auto& s : sal) os << "s_" << s.index << " u=" << s.ppoint.u.str() << " level=" << *s.ppoint.level << '\n';
    emit(c.out, os.str());
  });
}

void cmd_chain(const Common& c, std::size_t p, std::size_t refine, bool verify) {
  with_slope(c.slope, [&](const auto& sl) {
    using Num = std::decay_t<decltype(sl.s())>;
    auto ch = build_chain(sl, p, refine);
    std::ostringstream report;
    bool failed = false;
    if (verify) {
      auto ax = check_chain_axioms(ch);
      report << "axioms: " << (ax.ok ? "ok" : "FAILED: " + ax.detail) << '\n';
      failed = !ax.ok;
      if (p + refine >= 1) {
        const std::size_t coarse_p = p + refine - 1;
        auto r = verify_refinement(ch, build_chain(sl, coarse_p));
        report << "refinement vs p=" << coarse_p << ": ";
        if (r.ok) {
          report << "verified (";
          for (std::size_t i = 0; i < r.assignment.size(); ++i) report << (i ? " " : "") << r.assignment[i];
          report << ")\n";
        } else {
          report << "FAILED: " << r.detail << '\n';
          failed = true;
        }
      }
      report << "mesh bound: " << mesh_bound(ch).str() << '\n';
    }
    if (c.format == "svg") {
      std::vector<NaturalChain<Num>> bands;
      for (std::size_t q = 0; q < p; ++q) bands.push_back(build_chain(sl, q));
      bands.push_back(ch);
      emit(c.out, io::chain_svg(bands));
      std::cerr << report.str();
    } else if (c.format == "csv") {
      emit(c.out, io::chain_csv(ch));
      std::cerr << report.str();
    } else if (c.format == "json") {
      json links = json::array();
      for (const auto& l : ch.links()) links.push_back({{"index", l.index}, {"left", l.left.str()}, {"right", l.right.str()}});
      emit(c.out, dump({{"p", p}, {"refine", refine}, {"links", links}}));
      std::cerr << report.str();
    } else {
      std::ostringstream os;
      os << "links=" << ch.size() << '\n';
      for (const auto& l : ch.links()) os << l.index << " [" << l.left.str() << ", " << l.right.str() << "]\n";
      emit(c.out, os.str() + report.str());
    }
    if (failed) throw VerificationFailure("chain verification failed");
  });
}

void cmd_linkseq(const Common& c, std::size_t p, std::size_t n) {
  with_slope(c.slope, [&](const auto& sl) {
    auto seq = link_sequence(fundamental_arc(sl, p, n), build_chain(sl, p));
    if (c.format == "json") return emit(c.out, dump(io::to_json(seq)));
    std::ostringstream os;
    for (std::size_t i = 0; i < seq.size(); ++i) os << (i ? " " : "") << seq.indices[i];
    emit(c.out, os.str() + "\n");
  });
}

void cmd_symmetric(const Common& c, std::size_t p, std::size_t l, std::size_t n) {
  with_slope(c.slope, [&](const auto& sl) {
    const std::size_t depth = n ? n : l + 4;
    if (l < 1 || l > depth) throw Error(ErrorCode::domain, "salient index out of range");
    FundamentalArc uni(sl, p, depth);
    auto ch = build_chain(sl, p);
    auto sal = salient_points(sl, p, depth);
    const auto& target = sal.at(l - 1);
    auto r = maximal_link_symmetric(uni, ch, target.ppoint.u);
    const bool centered = r.center && r.center->u == target.ppoint.u;
    if (c.format == "json") {
      json j = {{"salient", l}, {"u", target.ppoint.u.str()}, {"lo", r.lo.str()}, {"hi", r.hi.str()},
                {"links", r.indices}, {"boundary_limited", r.boundary_limited}, {"centered", centered}};
      j["center"] = r.center ? json({{"u", r.center->u.str()}, {"level", level_str(r.center->level)}}) : json(nullptr);
      emit(c.out, dump(j));
    } else {
      std::ostringstream os;
      os << "salient s_" << l << " u=" << target.ppoint.u.str() << '\n';
      os << "arc u in [" << r.lo.str() << ", " << r.hi.str() << "]\n";
      os << "links";
      for (auto i : r.indices) os << ' ' << i;
      os << '\n';
      if (r.center) os << "center u=" << r.center->u.str() << " level=" << level_str(r.center->level) << '\n';
      os << "boundary-limited: " << (r.boundary_limited ? "yes" : "no") << '\n';
      emit(c.out, os.str());
    }
    if (!centered) throw VerificationFailure("s_" + std::to_string(l) + " is not the center of its maximal symmetric arc");
  });
}

struct PointSpec {
  int folding_point = -1;
  std::string arc_point;  // "p,n,u"
};

template <Number Num>
ILPoint<Num> select_point(const Slope<Num>& sl, const PointSpec& ps) {
  if (ps.folding_point >= 0) {
    auto fps = certified_folding_points(sl);
    if (!fps) throw Error(ErrorCode::search_exhausted, "no certified folding points for this slope");
    if (static_cast<std::size_t>(ps.folding_point) >= fps->size()) throw Error(ErrorCode::domain, "folding point index out of range");
    return (*fps)[static_cast<std::size_t>(ps.folding_point)];
  }
  auto a = ps.arc_point.find(','), b = ps.arc_point.find(',', a + 1);
  if (a == std::string::npos || b == std::string::npos) throw Error(ErrorCode::parse, "--arc-point must be p,n,u");
  auto arc = fundamental_arc(sl, std::stoul(ps.arc_point.substr(0, a)), std::stoul(ps.arc_point.substr(a + 1, b - a - 1)));
  return arc.point(parse_value<Num>(ps.arc_point.substr(b + 1)));
}

void cmd_folding_test(const Common& c, const PointSpec& ps, const std::string& method, std::size_t depth, std::size_t n1,
                      std::size_t n2, double tol, std::size_t p, std::size_t K, const std::string& radius) {
  with_slope(c.slope, [&](const auto& sl) {
    using Num = std::decay_t<decltype(sl.s())>;
    auto x = select_point(sl, ps);
    auto v = method == "omega" ? folding_test_omega(x, depth, n1, n2, tol) : folding_test_ppoints(x, p, K, parse_value<Num>(radius));
    if (c.format == "json") {
      auto j = io::to_json(v);
      j["point"] = io::to_json(x);
      return emit(c.out, dump(j));
    }
    std::ostringstream os;
    os << "verdict=" << verdict_name(v.verdict) << " certified=" << (v.certified ? "yes" : "no") << " depth=" << v.depth << '\n';
    if (!v.witnesses.empty()) {
      os << "witness levels";
      for (const auto& w : v.witnesses) os << ' ' << w.level;
      os << '\n';
    }
    if (v.level_bound) os << "level bound " << *v.level_bound << '\n';
    os << v.detail << '\n';
    emit(c.out, os.str());
  });
}

void cmd_isotopy(const Common& c, std::size_t p, std::size_t n, const std::string& lo, const std::string& hi, int m,
                 std::size_t samples) {
  with_slope(c.slope, [&](const auto& sl) {
    using Num = std::decay_t<decltype(sl.s())>;
    auto arc = fundamental_arc(sl, p, n).sub(parse_value<Num>(lo), parse_value<Num>(hi));
    auto H = m >= 0 ? build_isotopy(arc, static_cast<std::size_t>(m)) : build_isotopy(arc);
    if (c.format == "csv") return emit(c.out, io::isotopy_csv(H, samples));
    if (c.format == "json") {
      json rows = json::array();
      for (std::size_t i = 0; i <= samples; ++i) {
        Num t(Rational(static_cast<long>(i), static_cast<long>(std::max<std::size_t>(samples, 1))));
        rows.push_back({{"t", t.str()}, {"u", H.param(t).str()}, {"pi_m", H.projected(t).str()}});
      }
      return emit(c.out, dump({{"m", H.m()}, {"samples", rows}}));
    }
    std::ostringstream os;
    os << "m=" << H.m() << '\n';
    for (std::size_t i = 0; i <= samples; ++i) {
      Num t(Rational(static_cast<long>(i), static_cast<long>(std::max<std::size_t>(samples, 1))));
      os << "t=" << t.str() << " u=" << H.param(t).str() << " pi_m=" << H.projected(t).str() << '\n';
    }
    emit(c.out, os.str());
  });
}

void cmd_two_sided(const Common& c, std::size_t window, std::size_t length, const std::string& word_json) {
  SymbolWord nu = word_json.empty() ? SymbolWord::increasing_blocks() : io::word_from_json(json::parse(word_json));
  auto set = two_sided_limit_set(nu, window, length);
  if (c.format == "json") return emit(c.out, dump(json(std::vector<std::string>(set.begin(), set.end()))));
  std::ostringstream os;
  for (const auto& w : set) os << w << '\n';
  emit(c.out, os.str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tent-map inverse limits: p-points, chains, folding points"};
  app.require_subcommand(1);
  Common c;

  std::size_t n = 8, p = 0, depth = 3, refine = 0, l = 1, K = 10, window = 3, length = 5000, samples = 8;
  std::size_t n1 = 0, n2 = 2000;
  double eps = 1e-9, tol = 1e-6;
  bool verify = false;
  int m = -1;
  std::string word, method = "omega", radius = "1/256", lo, hi, word_json;
  PointSpec ps;
  const std::vector<std::string> text_json{"text", "json"};

  auto* orbit = app.add_subcommand("orbit", "critical orbit c_0..c_n");
  add_common(orbit, c, true, text_json);
  orbit->add_option("--n", n, "orbit length");
  bool density = false;
  orbit->add_flag("--density", density, "report the largest gap of the orbit in [c2, c1] instead");

  auto* kneading = app.add_subcommand("kneading", "kneading sequence prefix");
  add_common(kneading, c, true, text_json);
  kneading->add_option("--n", n, "prefix length");

  auto* sfk = app.add_subcommand("slope-from-kneading", "slope interval realizing a kneading prefix");
  add_common(sfk, c, false, text_json);
  sfk->add_option("--word", word, "kneading prefix over {0,1,C}")->required();
  sfk->add_option("--eps", eps, "target interval width");

  auto* fp = app.add_subcommand("fp", "folding pattern of the fundamental arc");
  add_common(fp, c, true, {"text", "json", "csv", "svg"});
  fp->add_option("--depth", depth, "arc depth n");
  fp->add_option("--p", p, "projection index");

  auto* sal = app.add_subcommand("salient", "salient p-points s_1..s_n");
  add_common(sal, c, true, text_json);
  sal->add_option("--p", p, "projection index");
  sal->add_option("--n", n, "count");

  auto* chain = app.add_subcommand("chain", "natural chain C_p");
  add_common(chain, c, true, {"text", "json", "csv", "svg"});
  chain->add_option("--p", p, "depth");
  chain->add_option("--refine", refine, "extra cut depth");
  chain->add_flag("--verify", verify, "check the chain axioms and refinement of the next coarser chain");

  auto* linkseq = app.add_subcommand("linkseq", "links visited by the fundamental arc");
  add_common(linkseq, c, true, text_json);
  linkseq->add_option("--p", p, "chain depth");
  linkseq->add_option("--n", n, "arc depth");

  auto* sym = app.add_subcommand("symmetric", "maximal link-symmetric arc about a salient point");
  add_common(sym, c, true, text_json);
  sym->add_option("--p", p, "chain depth");
  sym->add_option("--l", l, "salient index");
  std::size_t universe = 0;
  sym->add_option("--n", universe, "universe arc depth (default l + 4)");

  auto* ft = app.add_subcommand("folding-test", "folding-point criteria");
  add_common(ft, c, true, text_json);
  ft->add_option("--method", method, "omega or ppoints")->check(CLI::IsMember({"omega", "ppoints"}));
  auto* fpo = ft->add_option("--folding-point", ps.folding_point, "index of a certified folding point");
  auto* apo = ft->add_option("--arc-point", ps.arc_point, "point p,n,u on a fundamental arc");
  fpo->excludes(apo);
  ft->add_option("--depth", depth, "coordinates to examine (omega)");
  ft->add_option("--n1", n1, "orbit window start (omega)");
  ft->add_option("--n2", n2, "orbit window end (omega)");
  ft->add_option("--tol", tol, "distance tolerance (omega, uncertified slopes)");
  ft->add_option("--p", p, "projection index (ppoints)");
  ft->add_option("--K", K, "minimum level (ppoints)");
  ft->add_option("--radius", radius, "metric radius (ppoints)");

  auto* iso = app.add_subcommand("isotopy", "straight-line isotopy along a subarc");
  add_common(iso, c, true, {"text", "json", "csv"});
  iso->add_option("--p", p, "projection index");
  iso->add_option("--n", n, "arc depth");
  iso->add_option("--lo", lo, "start parameter")->required();
  iso->add_option("--hi", hi, "end parameter")->required();
  iso->add_option("--m", m, "projection depth (default: smallest injective)");
  iso->add_option("--samples", samples, "number of time steps");

  auto* tsl = app.add_subcommand("two-sided-limits", "centered windows of the two-sided limit set");
  add_common(tsl, c, false, text_json);
  tsl->add_option("--window", window, "window radius");
  tsl->add_option("--length", length, "prefix length");
  tsl->add_option("--word-json", word_json, "one-sided word as JSON (default: the increasing-blocks word)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*orbit) cmd_orbit(c, n, density);
    if (*kneading) cmd_kneading(c, n);
    if (*sfk) cmd_slope_from_kneading(c, word, eps);
    if (*fp) cmd_fp(c, p, depth);
    if (*sal) cmd_salient(c, p, n);
    if (*chain) cmd_chain(c, p, refine, verify);
    if (*linkseq) cmd_linkseq(c, p, n);
    if (*sym) cmd_symmetric(c, p, l, universe);
    if (*ft) {
      if (ps.folding_point < 0 && ps.arc_point.empty()) throw CLI::RequiredError("--folding-point or --arc-point");
      cmd_folding_test(c, ps, method, depth, n1, n2, tol, p, K, radius);
    }
    if (*iso) cmd_isotopy(c, p, n, lo, hi, m, samples);
    if (*tsl) cmd_two_sided(c, window, length, word_json);
  } catch (const VerificationFailure& e) {
    std::cerr << "E_VERIFY: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << code_name(e.code()) << ": " << e.what() << '\n';
    return e.code() == ErrorCode::parse || e.code() == ErrorCode::domain ? 1 : 2;
  } catch (const CLI::Error& e) {
    std::cerr << "E_USAGE: " << e.what() << '\n';
    return 1;
  } catch (const json::exception& e) {
    std::cerr << "E_PARSE: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "E_PARSE: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

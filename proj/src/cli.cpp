#include "taut/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <array>
#include <cctype>
#include <numeric>
#include <optional>
#include <regex>
#include <sstream>

#include "taut/brauer.hpp"
#include "taut/error.hpp"
#include "taut/symprod.hpp"

namespace taut::cli {

using Json = nlohmann::ordered_json;

namespace {

enum class Format { Text, Latex, Json };

struct Options {
  std::string genus = "generic";
  std::optional<int> n;
  std::string format = "text";
  std::optional<std::string> flavor;
  int maxTerms = 1;

  std::optional<Rational> numericGenus() const {
    if (genus == "generic") return std::nullopt;
    return parseRational(genus);
  }
  Format fmt() const {
    if (format == "latex") return Format::Latex;
    if (format == "json") return Format::Json;
    return Format::Text;
  }
  Flavor flavorOr(Flavor fallback) const { return flavor ? parseFlavor(*flavor) : fallback; }
  int rank() const {
    if (genus == "generic") throw UsageError("this command needs an integer --g");
    const Rational g = parseRational(genus);
    if (g.get_den() != 1 || !g.get_num().fits_sint_p()) throw UsageError("--g must be an integer here");
    return static_cast<int>(g.get_num().get_si());
  }
};

// --- rendering -----------------------------------------------------------------

std::string decorName(std::uint8_t d) {
  switch (static_cast<Decor>(d)) {
    case Decor::Canonical:
      return "K";
    case Decor::Point:
      return "o";
    default:
      return "none";
  }
}

Json coeffJson(const RatFunc& c) { return Json{{"num", c.num().str()}, {"den", c.den().str()}}; }

Json classJson(const TautClass& c) {
  Json terms = Json::array();
  for (const auto& [m, x] : c.terms()) {
    Json partition = Json::array(), psi = Json::array(), decor = Json::array(), kappa = Json::array();
    for (const auto& block : m.blocks()) {
      partition.push_back(block);
      psi.push_back(m.psi[static_cast<std::size_t>(block.front() - 1)]);
      decor.push_back(decorName(m.decor[static_cast<std::size_t>(block.front() - 1)]));
    }
    for (int a = 1; a < kMaxKappa; ++a)
      for (int r = 0; r < m.kappa[static_cast<std::size_t>(a)]; ++r) kappa.push_back(a);
    terms.push_back(Json{{"partition", partition}, {"psi", psi}, {"kappa", kappa}, {"decor", decor},
                         {"coeff", coeffJson(x)}});
  }
  return Json{{"n", c.n()}, {"flavor", flavorName(c.flavor())}, {"terms", terms}};
}

TautClass atGenus(const TautClass& c, const Options& o) {
  if (auto g0 = o.numericGenus()) return specialize(c, *g0);
  return c;
}

RatFunc atGenus(const RatFunc& x, const Options& o) {
  if (auto g0 = o.numericGenus()) return RatFunc(x.eval(*g0));
  return x;
}

std::string scalarText(const RatFunc& x, const Options& o) {
  return o.fmt() == Format::Latex ? x.latex() : x.str();
}

std::string renderClass(const TautClass& raw, const Options& o) {
  const TautClass c = atGenus(raw, o);
  switch (o.fmt()) {
    case Format::Latex:
      return latex(c) + "\n";
    case Format::Json:
      return classJson(c).dump(2) + "\n";
    default:
      return str(c) + "\n";
  }
}

std::string dumpJson(const Json& j) { return j.dump(2) + "\n"; }

std::string boolText(bool b) { return b ? "true" : "false"; }

// --- class arguments -------------------------------------------------------------

std::optional<std::vector<int>> projectorVector(const std::string& text) {
  if (text.rfind("@pi:", 0) != 0) return std::nullopt;
  return weights::parseWeight(text.substr(4), 0);
}

Correspondence resolveCorrespondence(const std::string& text, int source, int target, Flavor flavor) {
  if (auto a = projectorVector(text)) {
    for (int x : *a)
      if (x < 0 || x > 2) throw UsageError("projector entries must be 0, 1 or 2");
    Correspondence c = kunnethProjector(*a, flavor);
    if (c.source != source || c.target != target)
      throw UsageError("projector shape " + std::to_string(c.source) + "|-" + std::to_string(c.target) +
                       " does not match --source/--target");
    return c;
  }
  return makeCorrespondence(source, target, resolveClass(text, source + target, flavor));
}

std::vector<std::string> splitOn(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

std::vector<int> parseShape(const std::string& s) {
  std::vector<int> out;
  for (const auto& part : splitOn(s, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::logic_error&) {
      throw UsageError("malformed shape '" + s + "'");
    }
  }
  return out;
}

// --- command bodies --------------------------------------------------------------

struct Args {
  std::vector<std::string> pos;
  int i = -1, l = -1, k = -1;
  int source = -1, target = -1;
  std::string shape;
  std::string sourceBlocks, targetClass, cycle;
  int alphabet = 3;
  std::string convention = "per-copy";
};

int factorCount(const Options& o, const std::string& text) {
  if (o.n) return *o.n;
  return text.find('@') == std::string::npos ? inferFactorCount(text) : -1;
}

const std::string& positional(const Args& a, std::size_t idx, const char* what) {
  if (a.pos.size() <= idx) throw UsageError(std::string("missing argument: ") + what);
  return a.pos[idx];
}

std::string cmdSimplify(const Options& o, const Args& a) {
  const std::string& e = positional(a, 0, "expression");
  return renderClass(resolveClass(e, factorCount(o, e), o.flavorOr(Flavor::Relative)), o);
}

std::string cmdAct(const Options& o, const Args& a) {
  int source = a.source, target = a.target;
  // a Kunneth projector fixes its own shape
  if (auto v = projectorVector(positional(a, 0, "correspondence"))) {
    if (source < 0) source = static_cast<int>(v->size());
    if (target < 0) target = static_cast<int>(v->size());
  }
  if (source < 0 || target < 0) throw UsageError("act needs --source and --target");
  const Flavor f = o.flavorOr(Flavor::Relative);
  const Correspondence gamma = resolveCorrespondence(positional(a, 0, "correspondence"), source, target, f);
  const TautClass alpha = resolveClass(positional(a, 1, "class"), source, f);
  return renderClass(act(gamma, alpha), o);
}

std::string cmdCompose(const Options& o, const Args& a) {
  const auto shape = parseShape(a.shape);
  if (shape.size() != 3) throw UsageError("compose needs --shape a,b,c (first: a|-b, second: b|-c)");
  const Flavor f = o.flavorOr(Flavor::Relative);
  const Correspondence second = resolveCorrespondence(positional(a, 0, "second"), shape[1], shape[2], f);
  const Correspondence first = resolveCorrespondence(positional(a, 1, "first"), shape[0], shape[1], f);
  return renderClass(compose(second, first).cls, o);
}

int intArg(const Args& a, std::size_t idx, const char* what) {
  const std::string& s = positional(a, idx, what);
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used == s.size()) return v;
  } catch (const std::logic_error&) {
  }
  throw UsageError(std::string("expected an integer for ") + what + ", got '" + s + "'");
}

std::string cmdRestrict(const Options& o, const Args& a) {
  const std::string& e = positional(a, 0, "expression");
  return renderClass(restrictToFiber(resolveClass(e, factorCount(o, e), Flavor::Relative)), o);
}

std::string cmdDeg(const Options& o, const Args& a) {
  const std::string& e = positional(a, 0, "expression");
  const TautClass c = resolveClass(e, factorCount(o, e), o.flavorOr(Flavor::Pointed));
  const TautClass p = c.flavor() == Flavor::Relative ? restrictToFiber(c) : c;
  const RatFunc d = atGenus(degree(p), o);
  if (o.fmt() == Format::Json) return dumpJson(Json{{"degree", coeffJson(d)}});
  return scalarText(d, o) + "\n";
}

std::string kunnethText(const std::vector<int>& a) {
  std::string s = "(";
  for (std::size_t i = 0; i < a.size(); ++i) s += (i ? "," : "") + std::to_string(a[i]);
  return s + ")";
}

std::string cmdLewis(const Options& o, const Args& a) {
  const std::string& e = positional(a, 0, "expression");
  const TautClass c = resolveClass(e, factorCount(o, e), o.flavorOr(Flavor::Relative));
  const LewisEstimate est = lewisLevelEstimate(c);
  if (o.fmt() == Format::Json) {
    Json comps = Json::array();
    for (const auto& k : est.nonzero)
      comps.push_back(Json{{"a", k.a}, {"weight", k.weight}, {"image", classJson(atGenus(k.image, o))}});
    Json hist = Json::array();
    for (auto [w, count] : est.histogram) hist.push_back(Json{{"weight", w}, {"count", count}});
    return dumpJson(Json{{"n", est.n}, {"codim", est.codim}, {"components", comps}, {"histogram", hist}});
  }
  std::string out;
  if (est.nonzero.empty()) out += "all Kunneth components vanish\n";
  for (const auto& k : est.nonzero) {
    const TautClass img = atGenus(k.image, o);
    out += "a=" + kunnethText(k.a) + " |a|=" + std::to_string(k.weight) + ": " +
           (o.fmt() == Format::Latex ? latex(img) : str(img)) + "\n";
  }
  out += "histogram:";
  for (auto [w, count] : est.histogram) out += " " + std::to_string(w) + ":" + std::to_string(count);
  return out + "\n";
}

// brauer

std::string cmdBrauerCompose(const Options& o, const Args& a) {
  const auto d2 = brauer::parseDiagram(positional(a, 0, "second diagram"));
  const auto d1 = brauer::parseDiagram(positional(a, 1, "first diagram"));
  const RatFunc delta = brauer::loopParameter(o.flavorOr(Flavor::Relative));
  const auto r = brauer::composeDiagrams(d2, d1, delta);
  const int loops = brauer::closedLoops(d2, d1);
  const RatFunc c = atGenus(r.coeff, o);
  if (o.fmt() == Format::Json)
    return dumpJson(Json{{"diagram", brauer::str(r.diagram)}, {"loops", loops}, {"coeff", coeffJson(c)}});
  return "loops: " + std::to_string(loops) + "\n" + scalarText(c, o) + " * " + brauer::str(r.diagram) + "\n";
}

std::string cmdBrauerRealize(const Options& o, const Args& a) {
  const auto d = brauer::parseDiagram(positional(a, 0, "diagram"));
  return renderClass(brauer::realize(d, o.flavorOr(Flavor::Relative)).cls, o);
}

std::string cmdBrauerSearch(const Options& o, const Args& a) {
  if (a.sourceBlocks.empty() || a.targetClass.empty()) throw UsageError("search needs --source and --target-class");
  const Flavor f = o.flavorOr(Flavor::Relative);
  std::vector<TautClass> blocks;
  for (const auto& b : splitOn(a.sourceBlocks, ';')) blocks.push_back(resolveClass(b, o.n ? *o.n : -1, f));
  const TautClass target = resolveClass(a.targetClass, -1, f);
  brauer::SearchOptions opts;
  opts.maxTerms = o.maxTerms;
  const auto r = brauer::searchCorrespondence(blocks, target, opts);
  if (o.fmt() == Format::Json) {
    Json sols = Json::array();
    for (const auto& s : r.solutions) {
      Json terms = Json::array();
      for (std::size_t t = 0; t < s.terms.size(); ++t)
        terms.push_back(Json{{"diagram", brauer::str(s.terms[t].diagram)},
                             {"coeff", coeffJson(atGenus(s.terms[t].coeff, o))},
                             {"orbit_size", s.orbitSizes[t]}});
      sols.push_back(terms);
    }
    return dumpJson(Json{{"enumerated", r.enumerated},
                         {"orbits", r.orbits},
                         {"zero_images", r.zeroImages},
                         {"distinct_images", r.distinctImages},
                         {"span_rank", r.spanRank},
                         {"target_in_span", r.targetInSpan},
                         {"solutions", sols}});
  }
  std::string out = "enumerated: " + std::to_string(r.enumerated) + "\norbits: " + std::to_string(r.orbits) +
                    "\nzero images: " + std::to_string(r.zeroImages) +
                    "\ndistinct nonzero images: " + std::to_string(r.distinctImages) +
                    "\nspan rank: " + std::to_string(r.spanRank) + "\ntarget in span: " + boolText(r.targetInSpan) +
                    "\nsolutions: " + std::to_string(r.solutions.size()) + "\n";
  for (const auto& s : r.solutions) {
    for (std::size_t t = 0; t < s.terms.size(); ++t)
      out += (t ? "  + " : "  ") + scalarText(atGenus(s.terms[t].coeff, o), o) + " * " +
             brauer::str(s.terms[t].diagram) + "  [orbit " + std::to_string(s.orbitSizes[t]) + "]\n";
    out += "\n";
  }
  return out;
}

// weights

weights::Weight weightArg(const Options& o, const Args& a) {
  return weights::parseWeight(positional(a, 0, "weight"), o.genus == "generic" ? 0 : o.rank());
}

Json weightJson(const weights::Weight& w) { return Json(w); }

std::string cmdBbw(const Options& o, const Args& a) {
  const auto lambda = weightArg(o, a);
  const auto r = weights::bbw(lambda);
  if (o.fmt() == Format::Json) {
    if (!r) return dumpJson(Json{{"regular", false}});
    return dumpJson(Json{{"regular", true}, {"degree", r->degree}, {"weight", weightJson(r->dominant)}});
  }
  if (!r) return "singular: lambda + rho = " + weights::weightText(lambda) + " + rho lies on a wall\n";
  return "degree: " + std::to_string(r->degree) + "\nweight: " + weights::weightText(r->dominant) + "\n";
}

std::string cmdKostant(const Options& o, const Args& a) {
  const auto lambda = weightArg(o, a);
  const int g = static_cast<int>(lambda.size());
  const int maxLen = g * g;
  std::vector<std::pair<int, std::vector<weights::Weight>>> rows;
  for (int i = 0; i <= maxLen; ++i) {
    if (a.i >= 0 && i != a.i) continue;
    auto ws = weights::kostant(lambda, i);
    if (!ws.empty() || a.i >= 0) rows.emplace_back(i, std::move(ws));
  }
  if (o.fmt() == Format::Json) {
    Json j = Json::array();
    for (const auto& [i, ws] : rows) j.push_back(Json{{"i", i}, {"weights", ws}});
    return dumpJson(j);
  }
  std::string out;
  for (const auto& [i, ws] : rows) {
    out += "H^" + std::to_string(i) + ":";
    for (const auto& w : ws) out += " (" + weights::weightText(w) + ")";
    out += "\n";
  }
  return out;
}

std::string cmdDim(const Options& o, const Args& a) {
  const auto d = weights::weylDim(weightArg(o, a));
  if (o.fmt() == Format::Json) return dumpJson(Json{{"dim", d.get_str()}});
  return d.get_str() + "\n";
}

std::string cmdTensor(const Options& o, const Args& a) {
  const auto ws = weights::tensorStandard(weightArg(o, a));
  if (o.fmt() == Format::Json) return dumpJson(Json(ws));
  std::string out;
  for (const auto& w : ws) out += weights::weightText(w) + "\n";
  return out;
}

std::string cmdDecomposePower(const Options& o, const Args&) {
  if (!o.n) throw UsageError("decompose-power needs --n");
  const auto table = weights::decomposePower(*o.n, o.rank());
  if (o.fmt() == Format::Json) {
    Json j = Json::array();
    for (auto it = table.rbegin(); it != table.rend(); ++it)
      j.push_back(Json{{"lambda", it->first},
                       {"multiplicity", it->second.multiplicity.get_str()},
                       {"twist", it->second.twist},
                       {"dim", weights::weylDim(it->first).get_str()}});
    return dumpJson(j);
  }
  std::string out;
  for (auto it = table.rbegin(); it != table.rend(); ++it)
    out += "(" + weights::weightText(it->first) + ") mult " + it->second.multiplicity.get_str() + " twist " +
           std::to_string(it->second.twist) + " dim " + weights::weylDim(it->first).get_str() + "\n";
  return out;
}

std::string cmdVanish(const Options& o, const Args& a) {
  if (a.i < 0 || a.l < 0) throw UsageError("vanish needs --i and --l");
  const int g = o.rank();
  const int r = weights::fakhruddinR(g, a.i, a.l);
  const bool v = weights::vanishes(g, a.i, a.l);
  const bool pure = weights::atPurityBoundary(g, a.i, a.l);
  if (o.fmt() == Format::Json) return dumpJson(Json{{"r", r}, {"vanishes", v}, {"pure", pure}});
  std::string out = "vanishes: " + boolText(v) + "\n";
  if (pure) {
    const int w2 = a.i + a.l;
    out += "pure of weight " + (w2 % 2 == 0 ? std::to_string(w2 / 2) : std::to_string(w2) + "/2") + "\n";
  }
  return out;
}

std::string cmdFirstNonvanish(const Options& o, const Args& a) {
  if (a.l < 0) throw UsageError("first-nonvanish needs --l");
  const int i = weights::firstNonvanishing(o.rank(), a.l);
  if (o.fmt() == Format::Json) return dumpJson(Json{{"first_nonvanishing", i}});
  return "first nonvanishing degree: " + std::to_string(i) + "\n";
}

std::string cmdLeray(const Options& o, const Args& a) {
  const int g = o.rank();
  std::vector<Placement> placed;
  if (!a.cycle.empty()) {
    const TautClass c = resolveClass(a.cycle, o.n ? *o.n : -1, Flavor::Relative);
    placed = lerayPlacement(lewisLevelEstimate(c), g);
  } else {
    if (!o.n || a.k < 0) throw UsageError("leray needs --n and --k, or --cycle");
    for (auto& p : weights::lerayPieces(g, *o.n, a.k)) placed.push_back({std::move(p), false});
  }
  if (o.fmt() == Format::Json) {
    Json j = Json::array();
    for (const auto& p : placed) {
      Json lambdas = Json::array();
      for (const auto& x : p.piece.lambdas)
        lambdas.push_back(Json{{"lambda", x.lambda},
                               {"multiplicity", x.multiplicity.get_str()},
                               {"lefschetz", x.lefschetz},
                               {"vanishes", x.vanishes},
                               {"pure", x.pure}});
      j.push_back(Json{{"i", p.piece.i},
                       {"alpha", p.piece.alpha},
                       {"fiber_degree", std::accumulate(p.piece.alpha.begin(), p.piece.alpha.end(), 0)},
                       {"component", p.hostsComponent},
                       {"lambdas", lambdas}});
    }
    return dumpJson(j);
  }
  std::string out;
  for (const auto& p : placed) {
    const int fiber = std::accumulate(p.piece.alpha.begin(), p.piece.alpha.end(), 0);
    out += (p.hostsComponent ? "* " : "  ") + std::string("H^") + std::to_string(p.piece.i) + "(M_g, R^" +
           std::to_string(fiber) + ") alpha=" + kunnethText(p.piece.alpha) + ":";
    for (const auto& x : p.piece.lambdas)
      out += " [" + weights::weightText(x.lambda) + "] x" + x.multiplicity.get_str() + " L^" +
             std::to_string(x.lefschetz) + (x.vanishes ? " vanishes" : "") + (x.pure ? " pure" : "");
    out += "\n";
  }
  return out;
}

// symprod

std::string cmdSymprodVerify(const Options& o, const Args& a) {
  if (!o.n) throw UsageError("symprod verify needs --n");
  if (a.convention != "per-copy" && a.convention != "distinct")
    throw UsageError("--convention must be per-copy or distinct");
  const auto r = symprod::verifyIdentity(*o.n, a.alphabet, a.convention == "distinct");
  if (o.fmt() == Format::Json)
    return dumpJson(Json{{"holds", r.holds},
                         {"checked", r.checked},
                         {"counterexample", r.counterexample ? Json(symprod::multisetText(*r.counterexample)) : Json()}});
  std::string out = "holds: " + boolText(r.holds) + "\nchecked: " + std::to_string(r.checked) + "\n";
  if (r.counterexample) out += "counterexample: " + symprod::multisetText(*r.counterexample) + "\n";
  return out;
}

std::string cmdSymprodDecompose(const Options& o, const Args& a) {
  const auto z = symprod::parseZeroCycle(positional(a, 0, "cycle"));
  const auto comps = symprod::decompose(z);
  const int level = symprod::lewisLevel(z);
  if (o.fmt() == Format::Json) {
    Json j = Json::array();
    for (std::size_t l = 0; l < comps.size(); ++l) j.push_back(Json{{"l", l}, {"component", symprod::str(comps[l])}});
    return dumpJson(Json{{"components", j}, {"level", level}});
  }
  std::string out;
  for (std::size_t l = 0; l < comps.size(); ++l) out += "l=" + std::to_string(l) + ": " + symprod::str(comps[l]) + "\n";
  return out + "level: " + std::to_string(level) + "\n";
}

}  // namespace

// --- public helpers -----------------------------------------------------------------

int inferFactorCount(const std::string& text) {
  static const std::regex call(R"((D|psi|K|o)\s*\(([^)]*)\))");
  int n = 0;
  for (auto it = std::sregex_iterator(text.begin(), text.end(), call); it != std::sregex_iterator(); ++it) {
    for (const auto& part : splitOn((*it)[2].str(), ',')) {
      try {
        n = std::max(n, std::stoi(part));
      } catch (const std::logic_error&) {
        // left for the parser to report
      }
    }
  }
  return n;
}

TautClass resolveClass(const std::string& text, int n, Flavor flavor) {
  static const std::regex fpRe(R"(@fp(\d+))"), fpnmRe(R"(@fpnm:(\d+):(\d+))");
  std::smatch m;
  const std::string t = text.substr(text.find_first_not_of(' ') == std::string::npos ? 0 : text.find_first_not_of(' '));
  std::optional<TautClass> named;
  if (std::regex_match(t, m, fpRe)) named = fp(std::stoi(m[1]));
  else if (std::regex_match(t, m, fpnmRe)) named = fpnm(std::stoi(m[1]), std::stoi(m[2]));
  else if (t == "@gs") named = gs();
  else if (t == "@zk") named = zk();
  else if (t == "@Y") named = grossSchoenY();
  else if (!t.empty() && t[0] == '@')
    throw UsageError("unknown named cycle '" + t + "' (expected @fp<N>, @fpnm:<N>:<M>, @gs, @zk or @Y)");
  if (named) {
    if (n >= 0 && named->n() != n)
      throw UsageError("named cycle " + t + " lives on " + std::to_string(named->n()) + " factors, not " +
                       std::to_string(n));
    if (named->flavor() != flavor && named->flavor() == Flavor::Relative) return restrictToFiber(*named);
    return *named;
  }
  return parseClass(text, n < 0 ? inferFactorCount(text) : n, flavor);
}

std::vector<Placement> lerayPlacement(const LewisEstimate& estimate, int g) {
  if (estimate.codim < 0) throw UsageError("Leray placement needs a nonzero homogeneous class");
  std::vector<Placement> out;
  for (auto& piece : weights::lerayPieces(g, estimate.n, 2 * estimate.codim)) {
    bool hosts = false;
    for (const auto& k : estimate.nonzero) hosts = hosts || k.a == piece.alpha;
    out.push_back({std::move(piece), hosts});
  }
  return out;
}

// --- dispatch ---------------------------------------------------------------------

Result run(const std::vector<std::string>& args) {
  CLI::App app{"Tautological cycles on fiber powers of the universal curve"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  Args a;
  app.add_option("--g", o.genus, "genus: rational or 'generic' (rank for weight commands)");
  app.add_option("--n", o.n, "factor count / tensor power / symmetric power");
  app.add_option("--format", o.format, "text, latex or json")->check(CLI::IsMember({"text", "latex", "json"}));
  app.add_option("--flavor", o.flavor, "relative or pointed")->check(CLI::IsMember({"relative", "pointed"}));
  app.add_option("--max-terms", o.maxTerms, "largest combination size in brauer search");

  std::vector<std::pair<CLI::App*, std::function<std::string()>>> commands;
  std::array<std::optional<std::string>, 2> raw;
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& desc, int positionals,
                  std::function<std::string()> body) {
    CLI::App* sub = parent->add_subcommand(name, desc);
    // One string per positional: CLI11 would split bracketed text such as
    // diagrams if they were collected into a vector option.
    for (int p = 0; p < positionals; ++p) sub->add_option("arg" + std::to_string(p + 1), raw[static_cast<std::size_t>(p)]);
    commands.emplace_back(sub, std::move(body));
    return sub;
  };

  leaf(&app, "simplify", "normalize an expression", 1, [&] { return cmdSimplify(o, a); });
  auto* actCmd = leaf(&app, "act", "apply a correspondence to a class", 2, [&] { return cmdAct(o, a); });
  actCmd->add_option("--source", a.source, "source factor count");
  actCmd->add_option("--target", a.target, "target factor count");
  leaf(&app, "compose", "compose two correspondences (second first)", 2, [&] { return cmdCompose(o, a); })
      ->add_option("--shape", a.shape, "a,b,c with first a|-b and second b|-c");
  leaf(&app, "fp", "pi_1^2 (Delta_12^N psi_1)", 1, [&] { return renderClass(fp(intArg(a, 0, "N")), o); });
  leaf(&app, "fpnm", "pi_1^N (Delta_1..N psi_1^M)", 2,
       [&] { return renderClass(fpnm(intArg(a, 0, "N"), intArg(a, 1, "M")), o); });
  leaf(&app, "gs", "pi_1^3 Delta_123", 0, [&] { return renderClass(gs(), o); });
  leaf(&app, "zk", "K x K - (2g-2) Delta_* K", 0, [&] { return renderClass(zk(), o); });
  leaf(&app, "restrict", "restrict a relative class to a fiber", 1, [&] { return cmdRestrict(o, a); });
  leaf(&app, "deg", "degree of a top-codimension pointed class", 1, [&] { return cmdDeg(o, a); });
  leaf(&app, "lewis-estimate", "nonzero Kunneth components", 1, [&] { return cmdLewis(o, a); });

  CLI::App* br = app.add_subcommand("brauer", "Brauer diagrams");
  br->require_subcommand(1);
  leaf(br, "compose", "compose diagrams (second first)", 2, [&] { return cmdBrauerCompose(o, a); });
  leaf(br, "realize", "realize a diagram as a correspondence", 1, [&] { return cmdBrauerRealize(o, a); });
  auto* search = leaf(br, "search", "search diagrams mapping source blocks to a target", 0,
                      [&] { return cmdBrauerSearch(o, a); });
  search->add_option("--source", a.sourceBlocks, "source blocks separated by ';'");
  search->add_option("--target-class", a.targetClass, "target class");

  leaf(&app, "bbw", "Borel-Weil-Bott", 1, [&] { return cmdBbw(o, a); });
  leaf(&app, "kostant", "Kostant weights", 1, [&] { return cmdKostant(o, a); })->add_option("--i", a.i, "degree");
  leaf(&app, "dim", "Weyl dimension", 1, [&] { return cmdDim(o, a); });
  leaf(&app, "tensor", "tensor with the standard representation", 1, [&] { return cmdTensor(o, a); });
  leaf(&app, "decompose-power", "decompose V^{(x)n}", 0, [&] { return cmdDecomposePower(o, a); });
  auto* van = leaf(&app, "vanish", "Fakhruddin vanishing", 0, [&] { return cmdVanish(o, a); });
  van->add_option("--i", a.i, "cohomological degree");
  van->add_option("--l", a.l, "|lambda|");
  leaf(&app, "first-nonvanish", "first nonvanishing degree", 0, [&] { return cmdFirstNonvanish(o, a); })
      ->add_option("--l", a.l, "|lambda|");
  auto* ler = leaf(&app, "leray", "Leray graded pieces", 0, [&] { return cmdLeray(o, a); });
  ler->add_option("--k", a.k, "total degree");
  ler->add_option("--cycle", a.cycle, "place the Kunneth components of this class");

  CLI::App* sp = app.add_subcommand("symprod", "symmetric products");
  sp->require_subcommand(1);
  auto* ver = leaf(sp, "verify", "check the pullback/pushforward identity", 0, [&] { return cmdSymprodVerify(o, a); });
  ver->add_option("--alphabet", a.alphabet, "number of points including o");
  ver->add_option("--convention", a.convention, "per-copy or distinct");
  leaf(sp, "decompose", "split a zero-cycle into kernel components", 1, [&] { return cmdSymprodDecompose(o, a); });

  Result res;
  std::vector<std::string> argvStore{"taut"};
  for (const auto& s : args) {
    // "-(g-4)^2" or "-{a,b}" would otherwise be taken for a flag; the
    // expression parsers skip the leading blank
    const bool exprLike = s.size() > 1 && s[0] == '-' && s[1] != '-' && s[1] != '.' &&
                          !std::isalnum(static_cast<unsigned char>(s[1]));
    argvStore.push_back(exprLike ? " " + s : s);
  }
  std::vector<char*> argv;
  for (auto& s : argvStore) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    res.out = app.help();
    return res;
  } catch (const CLI::CallForAllHelp&) {
    res.out = app.help("", CLI::AppFormatMode::All);
    return res;
  } catch (const CLI::ParseError& e) {
    res.code = kUsage;
    res.err = "error: " + std::string(e.what()) + "\n";
    return res;
  }

  try {
    for (const auto& r : raw) {
      if (!r) break;
      a.pos.push_back(*r);
    }
    for (auto& [sub, body] : commands) {
      if (sub->parsed()) {
        res.out = body();
        return res;
      }
    }
    throw UsageError("no command given");
  } catch (const UsageError& e) {
    res.code = kUsage;
    res.err = "error: " + std::string(e.what()) + "\n";
  } catch (const RefusalError& e) {
    res.code = kRefusal;
    res.err = "refused: " + std::string(e.what()) + "\n";
  } catch (const InvariantError& e) {
    res.code = kInvariant;
    res.err = "invariant violation: " + std::string(e.what()) + "\n";
  } catch (const std::exception& e) {
    res.code = kInvariant;
    res.err = "internal error: " + std::string(e.what()) + "\n";
  }
  res.out.clear();
  return res;
}

}  // namespace taut::cli

#include "lcembed/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace lcembed::io {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// nlohmann renders non-finite doubles as null; reports use strings instead.
ojson jnum(double v) {
  if (std::isnan(v)) return ojson("nan");
  if (std::isinf(v)) return ojson(v > 0 ? "inf" : "-inf");
  return ojson(v);
}

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw InputError(where + ": " + what);
}

const json& need(const json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) fail(where, std::string("missing field \"") + key + "\"");
  return *it;
}

double num(const json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number");
  return j.get<double>();
}

// Accepts a number or the string "inf".
double num_or_inf(const json& j, const std::string& where) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return kInf;
    fail(where, "expected a number or \"inf\", got \"" + s + "\"");
  }
  return num(j, where);
}

void check_keys(const json& j, std::initializer_list<const char*> allowed,
                const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed)
      if (it.key() == k) ok = true;
    if (!ok) fail(where, "unknown field \"" + it.key() + "\"");
  }
}

Complex complex_from(const json& j, const std::string& where) {
  check_keys(j, {"re", "im"}, where);
  const double re = num(need(j, "re", where), where + ".re");
  double im = 0.0;
  if (j.contains("im")) im = num(j["im"], where + ".im");
  return {re, im};
}

ojson complex_to(Complex z) {
  ojson j;
  j["re"] = jnum(z.real());
  j["im"] = jnum(z.imag());
  return j;
}

measure::Domain domain_from(const json& j, const std::string& where) {
  if (!j.is_string()) fail(where, "expected a domain string");
  const auto s = j.get<std::string>();
  if (s == "half-plane" || s == "halfplane") return measure::Domain::HalfPlane;
  if (s == "disc") return measure::Domain::Disc;
  if (s == "axis") return measure::Domain::Axis;
  fail(where, "unknown domain \"" + s + "\" (half-plane | disc | axis)");
}

const char* domain_name(measure::Domain d) {
  switch (d) {
    case measure::Domain::HalfPlane: return "half-plane";
    case measure::Domain::Disc: return "disc";
    default: return "axis";
  }
}

measure::RadialPiece radial_piece_from(const json& j, const std::string& where) {
  check_keys(j, {"from", "to", "power"}, where);
  measure::RadialPiece p;
  p.x0 = num_or_inf(need(j, "from", where), where + ".from");
  p.x1 = num_or_inf(need(j, "to", where), where + ".to");
  const json& pw = need(j, "power", where);
  check_keys(pw, {"c", "beta"}, where + ".power");
  p.power.c = num(need(pw, "c", where + ".power"), where + ".power.c");
  p.power.beta = num(need(pw, "beta", where + ".power"), where + ".power.beta");
  return p;
}

ojson radial_piece_to(const measure::RadialPiece& p) {
  if (!p.is_power())
    throw InputError("cannot serialize a tabulated density piece");
  ojson j;
  j["from"] = jnum(p.x0);
  j["to"] = std::isinf(p.x1) ? ojson("inf") : ojson(p.x1);
  j["power"] = {{"c", p.power.c}, {"beta", p.power.beta}};
  return j;
}

std::string verdict_name(cohn::Verdict v) {
  switch (v) {
    case cohn::Verdict::Bounded: return "bounded";
    case cohn::Verdict::Unbounded: return "unbounded";
    default: return "inconclusive";
  }
}

}  // namespace

measure::PositiveMeasure measure_from_json(const json& j) {
  const std::string where = "measure";
  check_keys(j, {"domain", "atoms", "radial", "planar"}, where);
  measure::PositiveMeasure mu;
  mu.domain = domain_from(need(j, "domain", where), where + ".domain");
  if (j.contains("atoms")) {
    if (!j["atoms"].is_array()) fail(where + ".atoms", "expected an array");
    int i = 0;
    for (const auto& a : j["atoms"]) {
      const std::string w = where + ".atoms[" + std::to_string(i++) + "]";
      check_keys(a, {"re", "im", "mass"}, w);
      measure::Atom atom;
      atom.location = complex_from(
          json{{"re", need(a, "re", w)},
               {"im", a.contains("im") ? a["im"] : json(0.0)}},
          w);
      atom.mass = num(need(a, "mass", w), w + ".mass");
      mu.atoms.push_back(atom);
    }
  }
  if (j.contains("radial")) {
    if (!j["radial"].is_array()) fail(where + ".radial", "expected an array");
    int i = 0;
    for (const auto& p : j["radial"])
      mu.radial.push_back(
          radial_piece_from(p, where + ".radial[" + std::to_string(i++) + "]"));
  }
  if (j.contains("planar")) {
    if (!j["planar"].is_array()) fail(where + ".planar", "expected an array");
    int i = 0;
    for (const auto& p : j["planar"]) {
      const std::string w = where + ".planar[" + std::to_string(i++) + "]";
      check_keys(p, {"re0", "re1", "im0", "im1", "density"}, w);
      measure::PlanarPiece q;
      q.re0 = num(need(p, "re0", w), w + ".re0");
      q.re1 = num(need(p, "re1", w), w + ".re1");
      q.im0 = num(need(p, "im0", w), w + ".im0");
      q.im1 = num(need(p, "im1", w), w + ".im1");
      q.density = num(need(p, "density", w), w + ".density");
      mu.planar.push_back(q);
    }
  }
  measure::validate(mu);
  return mu;
}

ojson measure_to_json(const measure::PositiveMeasure& mu) {
  ojson j;
  j["domain"] = domain_name(mu.domain);
  if (!mu.atoms.empty()) {
    j["atoms"] = ojson::array();
    for (const auto& a : mu.atoms) {
      ojson e;
      e["re"] = jnum(a.location.real());
      e["im"] = jnum(a.location.imag());
      e["mass"] = jnum(a.mass);
      j["atoms"].push_back(e);
    }
  }
  if (!mu.radial.empty()) {
    j["radial"] = ojson::array();
    for (const auto& p : mu.radial) j["radial"].push_back(radial_piece_to(p));
  }
  if (!mu.planar.empty()) {
    j["planar"] = ojson::array();
    for (const auto& p : mu.planar) {
      ojson e;
      e["re0"] = jnum(p.re0);
      e["re1"] = jnum(p.re1);
      e["im0"] = jnum(p.im0);
      e["im1"] = jnum(p.im1);
      e["density"] = jnum(p.density);
      j["planar"].push_back(e);
    }
  }
  return j;
}

zen::ZenBase zen_base_from_json(const json& j) {
  const std::string where = "zen_base";
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "hardy") return zen::ZenBase::hardy();
    if (s == "bergman") return zen::ZenBase::bergman();
    if (s.rfind("power:", 0) == 0) {
      const std::string arg = s.substr(6);
      size_t used = 0;
      double alpha = 0.0;
      try {
        alpha = std::stod(arg, &used);
      } catch (const std::exception&) {
        fail(where, "bad power preset parameter \"" + arg + "\"");
      }
      if (used != arg.size())
        fail(where, "bad power preset parameter \"" + arg + "\"");
      return zen::ZenBase::power(alpha);
    }
    fail(where, "unknown preset \"" + s + "\" (hardy | bergman | power:<alpha>)");
  }
  check_keys(j, {"atom_at_zero", "radial"}, where);
  zen::ZenBase base;
  if (j.contains("atom_at_zero"))
    base.atom_at_zero = num(j["atom_at_zero"], where + ".atom_at_zero");
  if (j.contains("radial")) {
    if (!j["radial"].is_array()) fail(where + ".radial", "expected an array");
    int i = 0;
    for (const auto& p : j["radial"])
      base.density.push_back(
          radial_piece_from(p, where + ".radial[" + std::to_string(i++) + "]"));
  }
  zen::validate(base);
  return base;
}

ojson zen_base_to_json(const zen::ZenBase& base) {
  ojson j;
  j["atom_at_zero"] = jnum(base.atom_at_zero);
  j["radial"] = ojson::array();
  for (const auto& p : base.density) j["radial"].push_back(radial_piece_to(p));
  return j;
}

inner::InnerFunction inner_from_json(const json& j) {
  const std::string where = "inner";
  check_keys(j, {"domain", "blaschke_zeros", "singular_T"}, where);
  inner::InnerFunction theta;
  theta.domain = domain_from(need(j, "domain", where), where + ".domain");
  if (j.contains("blaschke_zeros")) {
    if (!j["blaschke_zeros"].is_array())
      fail(where + ".blaschke_zeros", "expected an array");
    int i = 0;
    for (const auto& z : j["blaschke_zeros"]) {
      const std::string w =
          where + ".blaschke_zeros[" + std::to_string(i++) + "]";
      check_keys(z, {"re", "im", "mult"}, w);
      inner::BlaschkeZero bz;
      bz.z = complex_from(json{{"re", need(z, "re", w)},
                               {"im", z.contains("im") ? z["im"] : json(0.0)}},
                          w);
      if (z.contains("mult")) {
        if (!z["mult"].is_number_integer())
          fail(w + ".mult", "expected an integer");
        bz.mult = z["mult"].get<int>();
      }
      theta.zeros.push_back(bz);
    }
  }
  if (j.contains("singular_T"))
    theta.singular_T = num(j["singular_T"], where + ".singular_T");
  inner::validate(theta);
  return theta;
}

ojson inner_to_json(const inner::InnerFunction& theta) {
  ojson j;
  j["domain"] = domain_name(theta.domain);
  j["blaschke_zeros"] = ojson::array();
  for (const auto& z : theta.zeros) {
    ojson e;
    e["re"] = jnum(z.z.real());
    e["im"] = jnum(z.z.imag());
    e["mult"] = z.mult;
    j["blaschke_zeros"].push_back(e);
  }
  j["singular_T"] = jnum(theta.singular_T);
  return j;
}

admiss::DiagonalSystem system_from_json(const json& j) {
  const std::string where = "system";
  check_keys(j, {"modes", "weight", "T"}, where);
  admiss::DiagonalSystem sys;
  const json& modes = need(j, "modes", where);
  if (!modes.is_array()) fail(where + ".modes", "expected an array");
  int i = 0;
  for (const auto& m : modes) {
    const std::string w = where + ".modes[" + std::to_string(i++) + "]";
    check_keys(m, {"lambda", "b"}, w);
    admiss::Mode mode;
    mode.lambda = complex_from(need(m, "lambda", w), w + ".lambda");
    mode.b = complex_from(need(m, "b", w), w + ".b");
    sys.modes.push_back(mode);
  }
  sys.weight = zen_base_from_json(need(j, "weight", where));
  if (j.contains("T")) sys.T = num(j["T"], where + ".T");
  admiss::validate(sys);
  return sys;
}

ojson system_to_json(const admiss::DiagonalSystem& sys) {
  ojson j;
  j["modes"] = ojson::array();
  for (const auto& m : sys.modes) {
    ojson e;
    e["lambda"] = complex_to(m.lambda);
    e["b"] = complex_to(m.b);
    j["modes"].push_back(e);
  }
  j["weight"] = zen_base_to_json(sys.weight);
  j["T"] = jnum(sys.T);
  return j;
}

ojson criterion_report_to_json(const cohn::CriterionReport& rep) {
  ojson j;
  j["criterion"] = rep.criterion;
  j["constant"] = jnum(rep.sup_value);
  j["verdict"] = verdict_name(rep.verdict);
  j["tested_range"] = rep.tested_range;
  j["witnesses"] = ojson::array();
  for (const auto& w : rep.witness_points) j["witnesses"].push_back(complex_to(w));
  j["hypothesis_checks"] = ojson::array();
  for (const auto& h : rep.hypothesis_checks) {
    ojson e;
    e["name"] = h.name;
    e["passed"] = h.passed;
    e["note"] = h.note;
    j["hypothesis_checks"].push_back(e);
  }
  if (!rep.aux_name.empty()) {
    j["auxiliary"] = ojson();
    j["auxiliary"]["name"] = rep.aux_name;
    j["auxiliary"]["value"] = jnum(rep.aux_value);
  }
  if (!rep.extra_constants.empty()) {
    j["extra_constants"] = ojson();
    for (const auto& [k, v] : rep.extra_constants) j["extra_constants"][k] = jnum(v);
  }
  return j;
}

namespace {

struct AnalysisSpec {
  const char* kind;
  bool needs_measure;
  bool needs_inner;
  bool needs_base;
  bool needs_system;
  // empty string means the colon form takes no parameter
  const char* colon_param;
  std::set<std::string> object_params;
};

const std::vector<AnalysisSpec>& analysis_table() {
  static const std::vector<AnalysisSpec> t = {
      {"embedding-test", true, false, true, false, "", {"T"}},
      {"widom", true, false, false, false, "", {"x_min"}},
      {"power-weight", true, false, false, false, "alpha", {"alpha", "x_min"}},
      {"cohn-disc", true, true, false, false, "", {}},
      {"cohn-radial", true, true, false, false, "", {}},
      {"paley-wiener", true, false, false, false, "T", {"T"}},
      {"sector", true, true, false, false, "angle", {"angle"}},
      {"hankel-norm", true, false, false, false, "",
       {"T", "n", "grid", "gamma"}},
      {"toeplitz-check", true, false, false, false, "", {"T", "n"}},
      {"trace", true, true, false, false, "", {}},
      {"model-hankel", true, true, false, false, "", {}},
      {"admissibility", false, false, false, true, "", {}},
  };
  return t;
}

const AnalysisSpec& spec_for(const std::string& kind, const std::string& where) {
  for (const auto& s : analysis_table())
    if (kind == s.kind) return s;
  fail(where, "unknown analysis \"" + kind + "\"");
}

double parse_double(const std::string& s, const std::string& where) {
  size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    fail(where, "bad numeric parameter \"" + s + "\"");
  }
  if (used != s.size()) fail(where, "bad numeric parameter \"" + s + "\"");
  return v;
}

Analysis analysis_from(const json& j, const std::string& where) {
  Analysis a;
  a.params = json::object();
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    const auto colon = s.find(':');
    std::string arg;
    if (colon != std::string::npos) {
      arg = s.substr(colon + 1);
      s = s.substr(0, colon);
    }
    const auto& spec = spec_for(s, where);
    a.kind = s;
    if (!arg.empty()) {
      if (std::string(spec.colon_param).empty())
        fail(where, "analysis \"" + s + "\" takes no parameter");
      a.params[spec.colon_param] = parse_double(arg, where);
    } else if (!std::string(spec.colon_param).empty()) {
      fail(where, "analysis \"" + s + "\" needs a parameter, e.g. \"" + s +
                      ":1\"");
    }
    return a;
  }
  if (!j.is_object()) fail(where, "expected an analysis name or object");
  const json& kindj = need(j, "kind", where);
  if (!kindj.is_string()) fail(where + ".kind", "expected a string");
  a.kind = kindj.get<std::string>();
  const auto& spec = spec_for(a.kind, where);
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it.key() == "kind") continue;
    if (!spec.object_params.count(it.key()))
      fail(where, "analysis \"" + a.kind + "\" has no parameter \"" +
                      it.key() + "\"");
    a.params[it.key()] = it.value();
  }
  if (!std::string(spec.colon_param).empty() &&
      !a.params.contains(spec.colon_param))
    fail(where, "analysis \"" + a.kind + "\" needs parameter \"" +
                    std::string(spec.colon_param) + "\"");
  return a;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open file \"" + path + "\"");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw InputError("file \"" + path + "\" is not valid JSON: " + e.what());
  }
  return j;
}

}  // namespace

JobConfig job_from_json(const json& j, const std::string& config_dir) {
  const std::string where = "config";
  check_keys(j, {"measure", "inner", "zen_base", "system", "analyses", "output"},
             where);
  JobConfig c;
  if (j.contains("measure")) {
    const json& m = j["measure"];
    if (m.is_string()) {
      namespace fs = std::filesystem;
      fs::path p(m.get<std::string>());
      if (p.is_relative()) p = fs::path(config_dir) / p;
      c.mu = measure_from_json(load_json_file(p.string()));
    } else {
      c.mu = measure_from_json(m);
    }
  }
  if (j.contains("inner")) c.theta = inner_from_json(j["inner"]);
  if (j.contains("zen_base")) c.base = zen_base_from_json(j["zen_base"]);
  if (j.contains("system")) c.system = system_from_json(j["system"]);
  if (j.contains("output")) {
    if (!j["output"].is_string()) fail(where + ".output", "expected a path string");
    c.output_path = j["output"].get<std::string>();
  }
  if (j.contains("analyses")) {
    if (!j["analyses"].is_array()) fail(where + ".analyses", "expected an array");
    int i = 0;
    for (const auto& a : j["analyses"])
      c.analyses.push_back(analysis_from(
          a, where + ".analyses[" + std::to_string(i++) + "]"));
  }
  for (const auto& a : c.analyses) {
    const auto& spec = spec_for(a.kind, where);
    if (spec.needs_measure && !c.mu)
      fail(where, "analysis \"" + a.kind + "\" needs a measure");
    if (spec.needs_inner && !c.theta)
      fail(where, "analysis \"" + a.kind + "\" needs an inner function");
    if (spec.needs_base && !c.base)
      fail(where, "analysis \"" + a.kind + "\" needs a zen_base");
    if (spec.needs_system && !c.system)
      fail(where, "analysis \"" + a.kind + "\" needs a system");
  }
  return c;
}

namespace {

double param_num(const Analysis& a, const char* key, double fallback) {
  if (!a.params.contains(key)) return fallback;
  const json& v = a.params[key];
  if (!v.is_number())
    throw InputError("analysis \"" + a.kind + "\" parameter \"" + key +
                     "\": expected a number");
  return v.get<double>();
}

std::vector<double> param_list(const Analysis& a, const char* key,
                               double fallback) {
  if (!a.params.contains(key)) return {fallback};
  const json& v = a.params[key];
  if (v.is_number()) return {v.get<double>()};
  if (v.is_array()) {
    std::vector<double> out;
    for (const auto& e : v) {
      if (!e.is_number())
        throw InputError("analysis \"" + a.kind + "\" parameter \"" + key +
                         "\": expected numbers");
      out.push_back(e.get<double>());
    }
    if (out.empty())
      throw InputError("analysis \"" + a.kind + "\" parameter \"" + key +
                       "\": empty list");
    return out;
  }
  throw InputError("analysis \"" + a.kind + "\" parameter \"" + key +
                   "\": expected a number or list");
}

ojson witnesses_to_json(const std::vector<measure::SquareRatio>& ws) {
  ojson arr = ojson::array();
  for (const auto& w : ws) {
    ojson e;
    e["a"] = jnum(w.q.a);
    e["h"] = jnum(w.q.h);
    e["ratio"] = jnum(w.ratio);
    arr.push_back(e);
  }
  return arr;
}

ojson embedding_to_json(const zen::EmbeddingResult& r) {
  ojson j;
  j["bounded"] = r.bounded;
  j["constant"] = jnum(r.constant_k);
  j["T"] = jnum(r.T);
  j["witnesses"] = witnesses_to_json(r.witnesses);
  ojson d;
  d["sup"] = jnum(r.delta2.sup);
  d["satisfied"] = r.delta2.satisfied;
  d["exact"] = r.delta2.exact;
  j["doubling"] = d;
  return j;
}

std::string csv_num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct HankelRow {
  int n = 0;
  double T = 0.0;
  double norm = 0.0;
  double hs = 0.0;
  double trace = 0.0;
  bool converged = true;
};

ojson run_hankel_norm(const Analysis& a, const measure::PositiveMeasure& mu,
                      std::string* csv) {
  std::string grid = "graded";
  if (a.params.contains("grid")) {
    if (!a.params["grid"].is_string())
      throw InputError("analysis \"hankel-norm\" parameter \"grid\": expected "
                       "uniform | graded | log");
    grid = a.params["grid"].get<std::string>();
  }
  if (grid != "uniform" && grid != "graded" && grid != "log")
    throw InputError("analysis \"hankel-norm\" parameter \"grid\": expected "
                     "uniform | graded | log, got \"" + grid + "\"");
  const double gamma = param_num(a, "gamma", 2.0);
  const auto Ts = param_list(a, "T", 1.0);
  const auto ns = param_list(a, "n", 200.0);
  const auto h = ops::laplace_symbol_fn(mu);

  std::vector<HankelRow> rows;
  for (double T : Ts) {
    for (double nd : ns) {
      const int n = (int)nd;
      if (n <= 0 || nd != n)
        throw InputError("analysis \"hankel-norm\": n must be a positive integer");
      ops::QuadratureGrid g;
      if (grid == "uniform")
        g = ops::QuadratureGrid::uniform_composite(T, n);
      else if (grid == "graded")
        g = ops::QuadratureGrid::graded(T, n, gamma);
      else
        g = ops::QuadratureGrid::log_practical_infinity(T, n);
      const auto op = ops::discretize_hankel(h, g);
      const auto nr = ops::operator_norm(op);
      HankelRow row;
      row.n = n;
      row.T = T;
      row.norm = nr.norm;
      row.converged = nr.converged;
      try {
        const auto s = ops::hs_and_trace_norms(op);
        row.hs = s.hs;
        row.trace = s.trace;
      } catch (const InputError&) {
        row.hs = std::nan("");
        row.trace = std::nan("");
      }
      rows.push_back(row);
    }
  }

  ojson j;
  j["grid"] = grid;
  if (grid == "graded") j["gamma"] = jnum(gamma);
  j["rows"] = ojson::array();
  for (const auto& r : rows) {
    ojson e;
    e["n"] = r.n;
    e["T"] = jnum(r.T);
    e["norm"] = jnum(r.norm);
    e["hs"] = jnum(r.hs);
    e["trace"] = jnum(r.trace);
    e["converged"] = r.converged;
    j["rows"].push_back(e);
  }
  if (rows.size() > 1 && csv) {
    std::ostringstream os;
    os << "n,T,norm,hs,trace\n";
    for (const auto& r : rows)
      os << r.n << ',' << csv_num(r.T) << ',' << csv_num(r.norm) << ','
         << csv_num(r.hs) << ',' << csv_num(r.trace) << '\n';
    *csv = os.str();
  }
  return j;
}

ojson run_one(const Analysis& a, const JobConfig& c, std::string* csv) {
  if (a.kind == "embedding-test") {
    const double T = param_num(a, "T", 1.0);
    return embedding_to_json(zen::finite_time_embedding_test(*c.mu, *c.base, T));
  }
  if (a.kind == "widom") {
    const double x_min = param_num(a, "x_min", 1.0);
    const auto r = measure::widom_constant(*c.mu, x_min);
    ojson j;
    j["constant"] = jnum(r.sup);
    j["finite"] = r.finite;
    j["witness_x"] = jnum(r.witness_x);
    j["growth_exponent"] = jnum(r.growth_exponent);
    j["x_min"] = jnum(x_min);
    return j;
  }
  if (a.kind == "power-weight") {
    const double alpha = param_num(a, "alpha", 0.0);
    const double x_min = param_num(a, "x_min", 1.0);
    const auto r = measure::power_weight_constant(*c.mu, alpha, x_min);
    ojson j;
    j["alpha"] = jnum(alpha);
    j["constant"] = jnum(r.sup);
    j["finite"] = r.finite;
    j["witness_x"] = jnum(r.witness_x);
    j["growth_exponent"] = jnum(r.growth_exponent);
    j["x_min"] = jnum(x_min);
    return j;
  }
  if (a.kind == "cohn-disc") return criterion_report_to_json(cohn::cohn_test_disc(*c.mu, *c.theta));
  if (a.kind == "cohn-radial") {
    if (c.theta->domain == measure::Domain::Disc)
      return criterion_report_to_json(cohn::radial_test_disc(*c.mu, *c.theta));
    return criterion_report_to_json(cohn::radial_test_halfplane(*c.mu, *c.theta));
  }
  if (a.kind == "paley-wiener") {
    const double T = param_num(a, "T", 1.0);
    auto j = criterion_report_to_json(cohn::paley_wiener_test(*c.mu, T));
    j["T"] = jnum(T);
    return j;
  }
  if (a.kind == "sector") {
    const double angle = param_num(a, "angle", 0.0);
    auto j = criterion_report_to_json(cohn::sector_test(*c.mu, *c.theta, angle));
    j["half_angle"] = jnum(angle);
    return j;
  }
  if (a.kind == "hankel-norm") return run_hankel_norm(a, *c.mu, csv);
  if (a.kind == "toeplitz-check") {
    const double T = param_num(a, "T", 1.0);
    const int n = (int)param_num(a, "n", 200.0);
    const auto h = ops::laplace_symbol_fn(*c.mu);
    const auto g = ops::QuadratureGrid::uniform_composite(T, n);
    const auto hop = ops::discretize_hankel(h, g);
    const auto top = ops::toeplitz_via_reversal(h, g);
    const double hn = ops::operator_norm(hop).norm;
    const double tn = ops::operator_norm(top).norm;
    ojson j;
    j["T"] = jnum(T);
    j["n"] = n;
    j["hankel_norm"] = jnum(hn);
    j["toeplitz_norm"] = jnum(tn);
    j["difference"] = jnum(std::abs(hn - tn));
    return j;
  }
  if (a.kind == "trace") {
    ojson j;
    j["value"] = jnum(ops::trace_from_measure(*c.mu, *c.theta));
    j["convention"] =
        "integrand (1 - |theta(s)|^2) / (2 Re s) on the time side, fixed by "
        "the rank-one calibration; squared-numerator variants are rejected";
    return j;
  }
  if (a.kind == "model-hankel") {
    const auto op = ops::model_hankel_finite(*c.mu, *c.theta);
    ojson j;
    j["norm"] = jnum(ops::operator_norm(op).norm);
    try {
      const auto s = ops::hs_and_trace_norms(op);
      j["hs"] = jnum(s.hs);
      j["trace"] = jnum(s.trace);
    } catch (const InputError&) {
      j["hs"] = jnum(std::nan(""));
      j["trace"] = jnum(std::nan(""));
    }
    j["gram_condition"] = jnum(op.gram_condition);
    if (!op.warning.empty()) j["warning"] = op.warning;
    return j;
  }
  if (a.kind == "admissibility") {
    const auto r = admiss::admissibility_test(*c.system);
    ojson j;
    j["admissible"] = r.admissible;
    j["constant"] = jnum(r.constant);
    j["growth_slope"] = jnum(r.growth_slope);
    j["profile"] = ojson::array();
    for (const auto& [h, ratio] : r.growth_profile) {
      ojson e;
      e["h"] = jnum(h);
      e["ratio"] = jnum(ratio);
      j["profile"].push_back(e);
    }
    j["embedding"] = embedding_to_json(r.embedding);
    return j;
  }
  throw InputError("unknown analysis \"" + a.kind + "\"");
}

}  // namespace

RunOutcome run_job(const JobConfig& config) {
  RunOutcome out;
  out.report["schema_version"] = 1;
  ojson inputs;
  if (config.mu) inputs["measure"] = measure_to_json(*config.mu);
  if (config.theta) inputs["inner"] = inner_to_json(*config.theta);
  if (config.base) inputs["zen_base"] = zen_base_to_json(*config.base);
  if (config.system) inputs["system"] = system_to_json(*config.system);
  out.report["inputs"] = inputs;
  out.report["analyses"] = ojson::array();

  int idx = 0;
  for (const auto& a : config.analyses) {
    ++idx;
    ojson entry;
    entry["kind"] = a.kind;
    std::string csv;
    try {
      ojson payload = run_one(a, config, &csv);
      entry["status"] = "ok";
      for (auto it = payload.begin(); it != payload.end(); ++it)
        entry[it.key()] = it.value();
      if (!csv.empty()) {
        char name[64];
        std::snprintf(name, sizeof(name), "analysis_%02d_%s.csv", idx,
                      a.kind.c_str());
        std::string fname(name);
        for (auto& ch : fname)
          if (ch == ':') ch = '_';
        out.csv_tables[fname] = csv;
        entry["table"] = fname;
      }
    } catch (const HypothesisError& e) {
      entry["status"] = "hypothesis-violation";
      entry["error"] = e.what();
      out.exit_code = 2;
    } catch (const InputError& e) {
      entry["status"] = "error";
      entry["error"] = e.what();
      if (out.exit_code != 2) out.exit_code = 1;
    } catch (const std::exception& e) {
      entry["status"] = "error";
      entry["error"] = e.what();
      if (out.exit_code != 2) out.exit_code = 1;
    }
    out.report["analyses"].push_back(entry);
  }
  return out;
}

std::string render_report(const ojson& report) { return report.dump(2) + "\n"; }

std::vector<std::pair<std::string, std::string>> preset_descriptions() {
  return {
      {"hardy", "unit point mass at 0; weight w(t) = 2*pi"},
      {"bergman", "Lebesgue measure on [0, inf); weight w(t) = pi/t"},
      {"power:<alpha>",
       "density r^(2*alpha - 1) on [0, inf), alpha > 0; weight w(t) = "
       "2*pi*Gamma(2*alpha)/(2t)^(2*alpha)"},
  };
}

}  // namespace lcembed::io

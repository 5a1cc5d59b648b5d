#include "cubint/manifest.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fstream>
#include <sstream>

namespace cubint {

namespace pt = boost::property_tree;

namespace {

std::string trim(std::string s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  s = s.substr(b, e - b + 1);
  if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front()) s = s.substr(1, s.size() - 2);
  return s;
}

pt::ptree read_ini(const std::string& text) {
  std::istringstream is(text);
  pt::ptree tree;
  try {
    pt::read_ini(is, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ManifestError(std::string("malformed manifest: ") + e.what());
  }
  return tree;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ManifestError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Expr expr_at(const pt::ptree& t, const std::string& key, const std::string& section, bool required = true) {
  auto v = t.get_optional<std::string>(key);
  if (!v) {
    if (required) throw ManifestError("[" + section + "] missing key '" + key + "'");
    return 0;
  }
  std::string s = trim(*v);
  try {
    return parse(s);
  } catch (const SyntaxError& e) {
    throw ManifestError("[" + section + "] " + key + ": " + e.what());
  }
}

std::pair<double, double> range(const pt::ptree& t, const std::string& key, std::pair<double, double> def) {
  auto v = t.get_optional<std::string>(key);
  if (!v) return def;
  std::string s = trim(*v);
  auto c = s.find(',');
  if (c == std::string::npos) throw ManifestError("[domain] " + key + " must be 'lo, hi'");
  try {
    return {std::stod(s.substr(0, c)), std::stod(s.substr(c + 1))};
  } catch (const std::exception&) {
    throw ManifestError("[domain] " + key + ": not a number pair");
  }
}

template <class T>
T number(const pt::ptree& t, const std::string& key, T def, const std::string& section) {
  auto v = t.get_optional<std::string>(key);
  if (!v) return def;
  std::istringstream is(trim(*v));
  T r;
  if (!(is >> r) || !is.eof()) throw ManifestError("[" + section + "] " + key + ": not a number");
  return r;
}

}  // namespace

Manifest parse_manifest(const std::string& text) {
  pt::ptree tree = read_ini(text);
  Manifest m;

  auto ms = tree.get_child_optional("metric");
  if (!ms) throw ManifestError("missing [metric] section");
  std::string mk = trim(ms->get<std::string>("kind", "isothermal"));
  if (mk == "isothermal") {
    m.metric = Metric::isothermal(expr_at(*ms, "lambda", "metric"), number<int>(*ms, "orientation", 1, "metric"));
  } else if (mk == "general") {
    m.metric = Metric::general(expr_at(*ms, "g11", "metric"), expr_at(*ms, "g12", "metric", false),
                               expr_at(*ms, "g22", "metric"), number<int>(*ms, "orientation", 1, "metric"));
  } else if (mk == "null") {
    m.metric = Metric::null(expr_at(*ms, "lambda", "metric"));
  } else {
    throw ManifestError("[metric] unknown kind '" + mk + "'");
  }
  if (m.metric.orientation != 1 && m.metric.orientation != -1)
    throw ManifestError("[metric] orientation must be 1 or -1");

  auto cs = tree.get_child_optional("codifferential");
  std::string def = mk == "null" ? "null-pair" : mk == "general" ? "general-real" : "isothermal-complex";
  std::string ck = cs ? trim(cs->get<std::string>("kind", def)) : def;
  pt::ptree empty;
  const pt::ptree& c = cs ? *cs : empty;
  if (ck == "isothermal-complex") {
    if (mk != "isothermal") throw ManifestError("isothermal-complex codifferential needs an isothermal metric");
    m.A = Codifferential::complex(CExpr(expr_at(c, "re", "codifferential", false), expr_at(c, "im", "codifferential", false)));
  } else if (ck == "general-real") {
    if (mk == "null") throw ManifestError("general-real codifferential needs a Riemannian metric");
    SymTensor3 t;
    const char* keys[4] = {"a111", "a112", "a122", "a222"};
    for (int n = 0; n < 4; ++n) t.c[n] = expr_at(c, keys[n], "codifferential", false);
    m.A = Codifferential::real(t);
  } else if (ck == "null-pair") {
    if (mk != "null") throw ManifestError("null-pair codifferential needs a null metric");
    m.A = Codifferential::null_pair(expr_at(c, "a1", "codifferential", false), expr_at(c, "a2", "codifferential", false));
  } else {
    throw ManifestError("[codifferential] unknown kind '" + ck + "'");
  }

  const pt::ptree& d = tree.get_child("domain", empty);
  auto [x0, x1] = range(d, "x", {-1, 1});
  auto [y0, y1] = range(d, "y", {-1, 1});
  if (!(x0 < x1) || !(y0 < y1)) throw ManifestError("[domain] degenerate box");
  m.box = {x0, x1, y0, y1};
  m.cfg.samples = number<int>(d, "samples", m.cfg.samples, "domain");
  m.cfg.seed = number<std::uint64_t>(d, "seed", m.cfg.seed, "domain");
  if (m.cfg.samples < 1) throw ManifestError("[domain] samples must be positive");

  const pt::ptree& t = tree.get_child("tolerances", empty);
  m.cfg.abs_tol = number<double>(t, "abs", m.cfg.abs_tol, "tolerances");
  m.cfg.rel_tol = number<double>(t, "rel", m.cfg.rel_tol, "tolerances");
  m.cfg.seeds = number<int>(t, "seeds", m.cfg.seeds, "tolerances");
  if (m.cfg.seeds < 1) throw ManifestError("[tolerances] seeds must be positive");
  return m;
}

Manifest load_manifest(const std::string& path) { return parse_manifest(read_file(path)); }

SymTensor3 parse_integral(const std::string& text) {
  pt::ptree tree = read_ini(text);
  SymTensor3 t;
  const char* keys[4] = {"t111", "t112", "t122", "t222"};
  for (int n = 0; n < 4; ++n) t.c[n] = expr_at(tree, keys[n], "integral");
  return t;
}

SymTensor3 load_integral(const std::string& path) { return parse_integral(read_file(path)); }

}  // namespace cubint

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "cubint/report.hpp"

using namespace cubint;

namespace {

constexpr int kCompatible = 0, kIncompatible = 1, kUndetermined = 2, kInputError = 64;

void emit(Json j, const char* command) {
  Json out;
  out["report_version"] = kReportVersion;
  out["command"] = command;
  for (auto& [k, v] : j.items()) out[k] = v;
  std::cout << out.dump(2) << "\n";
}

int check(const std::string& path) {
  Manifest m = load_manifest(path);
  DecideOptions opt;
  opt.zero = m.cfg;
  Verdict v = decide(m.metric, m.A, m.box, opt);
  Json j = to_json(v);
  j["config"] = config_json(m);
  emit(j, "check");
  if (v.compatible()) return kCompatible;
  return v.status == Verdict::Incompatible ? kIncompatible : kUndetermined;
}

int invariants(const std::string& path, const std::string& at, bool symbolic) {
  if (at.empty() == !symbolic) throw CLI::ValidationError("invariants", "exactly one of --at and --symbolic is required");
  std::optional<std::pair<double, double>> pt;
  if (!at.empty()) {
    auto c = at.find(',');
    try {
      if (c == std::string::npos) throw std::invalid_argument(at);
      pt = std::pair{std::stod(at.substr(0, c)), std::stod(at.substr(c + 1))};
    } catch (const std::exception&) {
      throw CLI::ValidationError("--at", "expected x,y");
    }
  }
  Manifest m = load_manifest(path);
  require_holomorphic(m.metric, m.A, m.box, m.cfg);
  Invariants inv(m.metric, m.A);
  Json j = invariants_json(inv, m.box, m.cfg, pt);
  j["config"] = config_json(m);
  emit(j, "invariants");
  return 0;
}

int verify(const std::string& path, const std::string& integral) {
  Manifest m = load_manifest(path);
  SymTensor3 F = load_integral(integral);
  Certificate c = certify(F, m.metric, m.box, m.cfg);
  Json j{{"F", to_json(F)}, {"certificate", to_json(c)}, {"config", config_json(m)}};
  emit(j, "verify");
  if (c.all_zero()) return kCompatible;
  return c.any_nonzero() ? kIncompatible : kUndetermined;
}

struct GeodesicArgs {
  PhasePoint start;
  int steps = 10000;
  double dt = 1e-3, threshold = 1e-8;
  std::string csv, integral;
};

int geodesic(const std::string& path, const GeodesicArgs& a) {
  Manifest m = load_manifest(path);
  std::optional<SymTensor3> F;
  if (!a.integral.empty()) F = load_integral(a.integral);
  GeodesicTrajectory t = integrate_geodesic(m.metric, a.start, a.steps, a.dt);
  DriftReport d = conservation_report(t, m.metric, F);
  if (!a.csv.empty()) {
    if (a.csv == "-") {
      write_csv(std::cerr, t, m.metric, F);
    } else {
      std::ofstream os(a.csv);
      if (!os) throw ManifestError("cannot write '" + a.csv + "'");
      write_csv(os, t, m.metric, F);
    }
  }
  bool ok = d.max_dH < a.threshold && (!d.max_dF || *d.max_dF < a.threshold);
  Json j{{"integrator", t.integrator}, {"dt", t.dt}, {"steps", a.steps}, {"threshold", a.threshold},
         {"drift", to_json(d)}, {"within_threshold", ok}};
  if (!t.error.empty()) j["error"] = t.error;
  emit(j, "geodesic");
  if (!t.error.empty()) return kUndetermined;
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decide existence of cubic integrals for surface metrics"};
  app.require_subcommand(1);

  std::string manifest, at, integral;
  bool symbolic = false;
  GeodesicArgs ga;

  auto* c = app.add_subcommand("check", "run the decision flowchart");
  c->add_option("manifest", manifest, "manifest file")->required();

  auto* i = app.add_subcommand("invariants", "report the invariants");
  i->add_option("manifest", manifest, "manifest file")->required();
  i->add_option("--at", at, "evaluate at x,y");
  i->add_flag("--symbolic", symbolic, "print expressions");

  auto* v = app.add_subcommand("verify", "certify a cubic integral candidate");
  v->add_option("manifest", manifest, "manifest file")->required();
  v->add_option("--integral", integral, "file with t111, t112, t122, t222")->required();

  auto* g = app.add_subcommand("geodesic", "integrate the geodesic flow and report drift");
  g->add_option("manifest", manifest, "manifest file")->required();
  g->add_option("--x0", ga.start.x)->required();
  g->add_option("--y0", ga.start.y)->required();
  g->add_option("--px0", ga.start.px)->required();
  g->add_option("--py0", ga.start.py)->required();
  g->add_option("--steps", ga.steps)->check(CLI::PositiveNumber);
  g->add_option("--dt", ga.dt)->check(CLI::PositiveNumber);
  g->add_option("--threshold", ga.threshold);
  g->add_option("--csv", ga.csv, "trajectory CSV path ('-' for stderr)");
  g->add_option("--integral", ga.integral, "also track this cubic integral");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (*c) return check(manifest);
    if (*i) return invariants(manifest, at, symbolic);
    if (*v) return verify(manifest, integral);
    return geodesic(manifest, ga);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
  } catch (const HolomorphicityViolated& e) {
    std::cerr << "HolomorphicityViolated: " << e.what() << "\n";
  } catch (const ManifestError& e) {
    std::cerr << "manifest error: " << e.what() << "\n";
  } catch (const ChartMismatch& e) {
    std::cerr << "ChartMismatch: " << e.what() << "\n";
  } catch (const EvalDomainError& e) {
    std::cerr << "evaluation error: " << e.what() << "\n";
  }
  return kInputError;
}

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <json.hpp>
#include <string>

#include "doctest.h"

namespace {

struct Run {
  int code = -1;
  std::string out;
  nlohmann::json json() const { return nlohmann::json::parse(out); }
};

std::string data(const std::string& f) { return std::string(CUBINT_DATA) + "/" + f; }

Run run(const std::string& args) {
  std::string cmd = std::string(CUBINT_EXE) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

}  // namespace

TEST_CASE("check: constant curvature") {
  for (const char* f : {"sphere.ini", "flat_a1.ini"}) {
    Run r = run(std::string("check ") + data(f));
    CHECK(r.code == 0);
    auto j = r.json();
    CHECK(j["report_version"] == 1);
    CHECK(j["status"] == "CompatibleConstCurvature");
    CHECK(j["trace"][0]["box"] == "input");
  }
}

TEST_CASE("check: Killing fixture") {
  Run r = run("check " + data("killing.ini"));
  CHECK(r.code == 0);
  auto j = r.json();
  CHECK(j["status"] == "CompatibleKilling");
  std::vector<std::string> boxes;
  for (const auto& s : j["trace"]) boxes.push_back(s["box"]);
  for (const char* b : {"phi2_zero", "D_zero", "phi2star_zero", "Dstar_zero"})
    CHECK(std::find(boxes.begin(), boxes.end(), b) != boxes.end());
  CHECK(j["config"]["seed"] == 20240917);
}

TEST_CASE("check: incompatible, formula, undetermined") {
  Run r = run("check " + data("quartic.ini"));
  CHECK(r.code == 1);
  auto j = r.json();
  CHECK(j["status"] == "Incompatible");
  CHECK(j["witness"]["value"].get<double>() != 0);

  r = run("check " + data("quartic_zero.ini"));
  CHECK(r.code == 0);
  j = r.json();
  CHECK(j["status"] == "CompatibleWithFormula");
  CHECK(j["F"]["t111"] == "0");
  CHECK(j["certificate"]["all_zero"] == true);

  r = run("check " + data("offdomain.ini"));
  CHECK(r.code == 2);
  CHECK(r.json()["status"] == "Undetermined");

  r = run("check " + data("normal_form.ini"));
  CHECK(r.code == 1);
  CHECK(r.json()["failed"] == "phi1");
}

TEST_CASE("check: input errors") {
  CHECK(run("check " + data("nonholo.ini")).code == 64);
  CHECK(run("check " + data("bad_syntax.ini")).code == 64);
  CHECK(run("check " + data("missing.ini")).code == 64);
  CHECK(run("frobnicate").code == 64);
  CHECK(run("").code == 64);
}

TEST_CASE("invariants") {
  Run r = run("invariants " + data("sphere.ini") + " --at 0,0");
  CHECK(r.code == 0);
  auto j = r.json();
  std::map<std::string, nlohmann::json> v;
  for (const auto& e : j["invariants"]) v[e["name"]] = e["value"];
  CHECK(v["phi0"].get<double>() == doctest::Approx(1));
  for (const char* n : {"phi1", "phi2", "phi3"}) CHECK(v[n].get<double>() == doctest::Approx(0));

  r = run("invariants " + data("quartic_zero.ini") + " --symbolic");
  CHECK(r.code == 0);
  j = r.json();
  CHECK(j["kay_defined"] == true);
  int seen = 0;
  for (const auto& e : j["invariants"]) {
    std::string n = e["name"];
    if (n[0] == 'D' || n[0] == 'G' || n[0] == 'K') {
      CHECK(e["value"] == "0");
      ++seen;
    }
  }
  CHECK(seen > 10);

  CHECK(run("invariants " + data("sphere.ini")).code == 64);
  CHECK(run("invariants " + data("sphere.ini") + " --at 0,0 --symbolic").code == 64);
  CHECK(run("invariants " + data("sphere.ini") + " --at zero").code == 64);
}

TEST_CASE("verify") {
  Run r = run("verify " + data("killing.ini") + " --integral " + data("py3.txt"));
  CHECK(r.code == 0);
  CHECK(r.json()["certificate"]["all_zero"] == true);
  r = run("verify " + data("flat.ini") + " --integral " + data("xpx3.txt"));
  CHECK(r.code == 1);
  bool nonzero = false;
  auto j = r.json();
  for (const auto& c : j["certificate"]["coefficients"]) nonzero = nonzero || c["verdict"]["kind"] == "NonZero";
  CHECK(nonzero);
  CHECK(run("verify " + data("flat.ini") + " --integral " + data("missing.txt")).code == 64);
}

TEST_CASE("geodesic") {
  Run r = run("geodesic " + data("sphere.ini") + " --x0 0.1 --y0 0.2 --px0 0.7 --py0 -0.3 --steps 10000 --dt 1e-3");
  CHECK(r.code == 0);
  auto j = r.json();
  CHECK(j["drift"]["max_dH"].get<double>() < 1e-8);
  CHECK(j["within_threshold"] == true);

  r = run("geodesic " + data("sphere.ini") + " --x0 0.1 --y0 0.2 --px0 0.7 --py0 -0.3 --steps 100 --dt 0.2");
  CHECK(r.code == 1);

  r = run("geodesic " + data("offdomain.ini") + " --x0 0.05 --y0 0 --px0 -1 --py0 0 --steps 1000 --dt 0.01");
  CHECK(r.code == 2);
  CHECK(r.json().contains("error"));

  CHECK(run("geodesic " + data("sphere.ini") + " --x0 0 --y0 0 --px0 1 --py0 0 --dt -1").code == 64);
}

TEST_CASE("reports are reproducible") {
  Run a = run("check " + data("quartic.ini")), b = run("check " + data("quartic.ini"));
  CHECK(a.out == b.out);
}

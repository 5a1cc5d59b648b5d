#include "cubint/manifest.hpp"
#include "doctest.h"

using namespace cubint;

TEST_CASE("manifest parsing") {
  Manifest m = parse_manifest(R"ini(
[metric]
kind = general
g11 = "1"
g22 = "exp(2*x)"
orientation = -1

[domain]
x = 0, 2
y = -1, 3
samples = 16
seed = 7

[tolerances]
abs = 1e-12
)ini");
  CHECK(m.metric.kind == Metric::General);
  CHECK(m.metric.g12.is_zero());
  CHECK(m.metric.orientation == -1);
  CHECK(m.A.kind == Codifferential::GeneralReal);
  CHECK(m.A.is_zero());
  CHECK(m.box.x1 == 2);
  CHECK(m.box.y0 == -1);
  CHECK(m.cfg.samples == 16);
  CHECK(m.cfg.seed == 7);
  CHECK(m.cfg.abs_tol == 1e-12);
  CHECK(m.cfg.rel_tol == ZeroTestConfig{}.rel_tol);

  Manifest n = parse_manifest("[metric]\nkind = null\nlambda = 1 + x*y\n[codifferential]\nkind = null-pair\na1 = x^3\n");
  CHECK(n.A.kind == Codifferential::NullPair);
  CHECK(n.A.a2.is_zero());
}

TEST_CASE("manifest errors") {
  CHECK_THROWS_AS(parse_manifest("[domain]\nx = 0, 1\n"), ManifestError);
  CHECK_THROWS_AS(parse_manifest("[metric]\nkind = sphere\n"), ManifestError);
  CHECK_THROWS_AS(parse_manifest("[metric]\nkind = isothermal\n"), ManifestError);
  CHECK_THROWS_AS(parse_manifest("[metric]\nlambda = \"1 +\"\n"), ManifestError);
  CHECK_THROWS_AS(parse_manifest("[metric]\nlambda = 1\n[domain]\nx = 1, 1\n"), ManifestError);
  CHECK_THROWS_AS(parse_manifest("[metric]\nlambda = 1\n[domain]\nx = 1\n"), ManifestError);
  CHECK_THROWS_AS(parse_manifest("[metric]\nlambda = 1\n[codifferential]\nkind = null-pair\n"), ManifestError);
  CHECK_THROWS_AS(parse_manifest("[metric]\nkind = null\nlambda = 1\n[codifferential]\nkind = general-real\n"),
                  ManifestError);
  CHECK_THROWS_AS(parse_manifest("[metric]\nlambda = 1\n[tolerances]\nabs = small\n"), ManifestError);
  CHECK_THROWS_AS(parse_manifest("[metric\nlambda = 1\n"), ManifestError);
}

TEST_CASE("integral files") {
  SymTensor3 t = parse_integral("t111 = \"x\"\nt112 = 0\nt122 = 0\nt222 = \"y^2\"\n");
  CHECK(t.c[0] == Expr::x());
  CHECK(t.c[3] == pow(Expr::y(), 2));
  CHECK_THROWS_AS(parse_integral("t111 = 1\n"), ManifestError);
}

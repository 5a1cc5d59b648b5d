#include "cubint/invariants.hpp"
#include "cubint/tensorcoords.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace cubint;
using testsupport::zero;

namespace {
const Expr X = Expr::x(), Y = Expr::y();

bool tzero(const SymTensor3& t, const Box& b = {}) {
  for (const auto& c : t.c)
    if (!zero(c, b)) return false;
  return true;
}

SymTensor3 random_tensor(std::mt19937_64& rng) {
  SymTensor3 t;
  for (auto& c : t.c) c = testsupport::random_poly(rng, 2, 3);
  return t;
}

std::vector<Metric> metrics() {
  return {Metric::isothermal(1), Metric::isothermal(4 / pow(1 + X * X + Y * Y, 2)),
          Metric::isothermal(1 + X * X + pow(Y, 4)), Metric::general(1 + X * X, X * Y / 4, 1 + Y * Y),
          Metric::general(1, 0, exp(2 * X))};
}

SymTensor3 ahat_of(const CExpr& a, const Metric& g) { return real_part(Codifferential::complex(a), g); }

// (J alpha)_j = alpha_l J^l_j
Vec2 Jform(const IndexGeometry& ig, const Vec2& a) {
  return {a[0] * ig.J(0, 0) + a[1] * ig.J(1, 0), a[0] * ig.J(0, 1) + a[1] * ig.J(1, 1)};
}
}  // namespace

TEST_CASE("split of py^3 in the flat chart") {
  Metric g = Metric::isothermal(1);
  SymTensor3 F;
  F.c[3] = 1;
  auto [A, B] = split_AB(F, g);
  CHECK(tzero(A + B - F));
  // a = 8 (A111 + i A112) is a positive multiple of -i
  CHECK(zero(A.c[0]));
  CHECK(eval_at(A.c[1], 0, 0) < 0);
  CHECK(tzero(A - ahat_of(CExpr(0, 8 * A.c[1]), g)));
}

TEST_CASE("split projectors") {
  std::mt19937_64 rng(71);
  auto ms = metrics();
  for (int n = 0; n < 20; ++n) {
    const Metric& g = ms[n % ms.size()];
    SymTensor3 F = random_tensor(rng);
    auto [A, B] = split_AB(F, g);
    CHECK(tzero(A + B - F));
    auto [AA, AB] = split_AB(A, g);
    auto [BA, BB] = split_AB(B, g);
    CHECK(tzero(AA - A));
    CHECK(tzero(AB));
    CHECK(tzero(BA));
    CHECK(tzero(BB - B));
  }
}

TEST_CASE("pure type is fixed") {
  Metric g = Metric::isothermal(1 + X * X);
  SymTensor3 A = ahat_of(CExpr(1), g);
  auto [a, b] = split_AB(A, g);
  CHECK(tzero(a - A));
  CHECK(tzero(b));
}

TEST_CASE("type [3,0] relation on random 1-forms") {
  std::mt19937_64 rng(73);
  for (const auto& g : metrics()) {
    IndexGeometry ig(g);
    auto [A, B] = split_AB(random_tensor(rng), g);
    Vec2 a1{testsupport::random_poly(rng, 1, 2), testsupport::random_poly(rng, 1, 2)};
    Vec2 a2{testsupport::random_poly(rng, 1, 2), testsupport::random_poly(rng, 1, 2)};
    Vec2 a3{testsupport::random_poly(rng, 1, 2), testsupport::random_poly(rng, 1, 2)};
    CHECK(zero(evaluate(A, Jform(ig, a1), Jform(ig, a2), a3) + evaluate(A, a1, a2, a3)));
    // B is of type [2,1]: the three J-pair terms sum to -F(a1,a2,a3)
    Expr s = evaluate(B, Jform(ig, a1), Jform(ig, a2), a3) + evaluate(B, Jform(ig, a1), a2, Jform(ig, a3)) +
             evaluate(B, a1, Jform(ig, a2), Jform(ig, a3));
    CHECK(zero(s - evaluate(B, a1, a2, a3)));
  }
}

TEST_CASE("split commutes with a change of chart") {
  // flat metric in polar coordinates (r, t) and in the isothermal chart (u, t), r = e^u
  Metric polar = Metric::general(1, 0, X * X);
  Metric iso = Metric::isothermal(exp(2 * X));
  std::mt19937_64 rng(79);
  SymTensor3 F = random_tensor(rng);
  auto [A, B] = split_AB(F, polar);
  for (double r : {0.7, 1.3}) {
    double t = 0.4, u = std::log(r);
    // contravariant components pick up du/dr = 1/r per r-index
    SymTensor3 Fu;
    for (int n = 0; n < 4; ++n) Fu.c[n] = Expr(mpq_class(eval_at(F.c[n], r, t) * std::pow(1 / r, 3 - n)));
    auto [Au, Bu] = split_AB(Fu, Metric::isothermal(Expr(mpq_class(std::exp(2 * u)))));
    auto [Ai, Bi] = split_AB(Fu, iso);
    for (int n = 0; n < 4; ++n) {
      double want = eval_at(A.c[n], r, t) * std::pow(1 / r, 3 - n);
      CHECK(eval_at(Au.c[n], u, t) == doctest::Approx(want).epsilon(1e-12));
      CHECK(eval_at(Ai.c[n], u, t) == doctest::Approx(want).epsilon(1e-12));
    }
  }
}

TEST_CASE("imag_part") {
  for (const auto& g : {Metric::isothermal(1), Metric::isothermal(1 + X * X + pow(Y, 4))}) {
    SymTensor3 A1 = ahat_of(CExpr(1), g), Ai = ahat_of(CExpr(0, 1), g);
    CHECK(tzero(imag_part(A1, g) - Ai));
    CHECK(tzero(imag_part(imag_part(A1, g), g) + A1));
    CHECK(tzero(imag_part(SymTensor3{}, g)));
    CExpr a(X * X - Y * Y, 2 * X * Y);
    CHECK(tzero(imag_part(ahat_of(a, g), g) - ahat_of(times_i(a), g)));
  }
  Metric gen = Metric::general(1 + X * X, X * Y / 4, 1 + Y * Y);
  std::mt19937_64 rng(83);
  auto [A, B] = split_AB(random_tensor(rng), gen);
  CHECK(tzero(imag_part(imag_part(A, gen), gen) + A));
}

TEST_CASE("holomorphicity residual against Cauchy-Riemann") {
  Metric flat = Metric::isothermal(1);
  Metric sphere = Metric::isothermal(4 / pow(1 + X * X + Y * Y, 2));
  auto resid = [](const CExpr& a, const Metric& g) {
    SymTensor4 r = holo_residual(ahat_of(a, g), g);
    std::vector<Expr> v(r.c.begin(), r.c.end());
    return v;
  };
  auto all_zero = [](const std::vector<Expr>& v) {
    for (const auto& e : v)
      if (!zero(e)) return false;
    return true;
  };
  CHECK(all_zero(resid(CExpr(3, -2), flat)));
  CHECK_FALSE(all_zero(resid(CExpr(X, -Y), flat)));
  CHECK(all_zero(resid(CExpr(X, Y), sphere)));
  CHECK(is_holomorphic(CExpr(X, Y), {}).zero());
  std::vector<CExpr> samples{CExpr(X * X - Y * Y, 2 * X * Y), CExpr(X * X - Y * Y, -2 * X * Y), CExpr(exp(X) * cos(Y), exp(X) * sin(Y)),
                             CExpr(X * Y, Expr(0)), CExpr(1 + X, Y)};
  for (const auto& g : {flat, sphere, Metric::isothermal(1 + X * X + pow(Y, 4))})
    for (const auto& a : samples) CHECK(all_zero(resid(a, g)) == is_holomorphic(a, {}).zero());
}

TEST_CASE("principle residual") {
  Metric flat = Metric::isothermal(1);
  Mat2 r = principle_residual(Expr(5), SymTensor3{}, flat);
  for (auto& row : r)
    for (auto& e : row) CHECK(zero(e));
  r = principle_residual(Expr(0), ahat_of(CExpr(1), flat), flat);
  for (auto& row : r)
    for (auto& e : row) CHECK(zero(e));

  // isothermal chart: residual = 2 Re of E = K_{;zbar zbar} + (i/2) gamma^2 A_{;z} in tensor components
  std::mt19937_64 rng(89);
  for (int n = 0; n < 3; ++n) {
    Metric g = Metric::isothermal(testsupport::random_lambda(rng));
    Expr K = testsupport::random_poly(rng, 3, 4);
    CExpr a = n == 0 ? CExpr(X, Y) : n == 1 ? CExpr(X * X - Y * Y, 2 * X * Y) : CExpr(1 + Y, -X);
    ComplexCalculus cc(g);
    auto Kzz = cc.nabla01(cc.nabla01(Section<ComplexChart>{CExpr(K), 0, 0}));
    auto Az = cc.nabla10(Section<ComplexChart>{a, -3, 0});
    CExpr E = Kzz.coeff + CExpr(0, rat(1, 2)) * cc.gamma() * cc.gamma() * Az.coeff;
    Mat2 P = principle_residual(K, ahat_of(a, g), g);
    CHECK(zero(P[0][0] - 2 * E.re));
    CHECK(zero(P[0][1] - 2 * E.im));
    CHECK(zero(P[1][0] - 2 * E.im));
    CHECK(zero(P[1][1] + 2 * E.re));
  }
}

TEST_CASE("divergence compatibility") {
  std::vector<std::pair<Metric, CExpr>> fx{{Metric::isothermal(1 + X * X + pow(Y, 4)), CExpr(X * X - Y * Y, 2 * X * Y)},
                                           {Metric::isothermal(4 / pow(1 + X * X + Y * Y, 2)), CExpr(X, Y)}};
  for (const auto& [g, a] : fx) {
    IndexGeometry ig(g);
    Mat2 V = ig.div3(ahat_of(a, g));
    for (int l = 0; l < 2; ++l)
      for (int m = 0; m < 2; ++m) {
        std::vector<Expr> t;
        for (int j = 0; j < 2; ++j)
          for (int k = 0; k < 2; ++k) t.push_back(ig.J(l, j) * ig.J(m, k) * V[j][k]);
        CHECK(zero(add(t) + V[l][m]));
      }
  }
}

#include "cubint/geometry.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace cubint;
using testsupport::zero;

namespace {
const Expr X = Expr::x(), Y = Expr::y();
Expr sphere() { return 4 / pow(1 + X * X + Y * Y, 2); }
}  // namespace

TEST_CASE("gauss curvature fixtures") {
  CHECK(gauss_curvature(Metric::isothermal(1)).is_zero());
  CHECK(gauss_curvature(Metric::isothermal(sphere())) == Expr(1));
  Metric hyp = Metric::general(1, 0, exp(2 * X));
  CHECK(gauss_curvature(hyp) == Expr(-1));
  CHECK(zero(gauss_curvature(Metric::isothermal(sphere()), Route::Index) - 1));
}

TEST_CASE("curvature against finite differences") {
  std::mt19937_64 rng(23);
  std::vector<Metric> ms{Metric::isothermal(sphere()), Metric::general(1, 0, exp(2 * X)),
                         Metric::isothermal(1 + X * X + pow(Y, 4)),
                         Metric::general(1 + X * X, X * Y / 4, 1 + Y * Y), Metric::null(exp(X * Y + X))};
  std::uniform_real_distribution<double> u(-0.9, 0.9);
  for (const auto& m : ms) {
    Expr R = gauss_curvature(m);
    Tape t(R);
    for (int k = 0; k < 16; ++k) {
      double x = u(rng), y = u(rng);
      CHECK(std::fabs(static_cast<double>(t.eval1(x, y) - testsupport::fd_curvature(m, x, y))) < 1e-6);
    }
  }
}

TEST_CASE("route agreement") {
  std::mt19937_64 rng(29);
  for (int k = 0; k < 4; ++k) {
    Metric m = Metric::isothermal(testsupport::random_lambda(rng));
    CHECK(zero(gauss_curvature(m, Route::Chart) - gauss_curvature(m, Route::Index)));
  }
  Metric n = Metric::null(1 + X * X + Y);
  CHECK(zero(gauss_curvature(n, Route::Chart) - gauss_curvature(n, Route::Index)));
  // null: R = e^{-u} u_xy
  for (int k = 0; k < 3; ++k) {
    Expr uu = testsupport::random_poly(rng, 3);
    CHECK(zero(gauss_curvature(Metric::null(exp(uu))) - exp(-uu) * dx(dy(uu))));
  }
}

TEST_CASE("nabla on the metric section and weight zero") {
  Metric m = Metric::isothermal(sphere());
  ComplexCalculus cc(m);
  Section<ComplexChart> g{cc.gamma(), 1, 1};
  CHECK(simplify(cc.nabla10(g).coeff).is_zero());
  CHECK(simplify(cc.nabla01(g).coeff).is_zero());
  Section<ComplexChart> f{CExpr(X * Y), 0, 0};
  auto nf = nabla10(f, m);
  CHECK(nf.p == 1);
  CHECK(nf.coeff == wirtinger_z(f.coeff));
  CHECK_THROWS_AS(nabla10(Section<NullChart>{PExpr(X, X), 0, 0}, m), ChartMismatch);
  CHECK_THROWS_AS(ComplexCalculus(Metric::null(1)), ChartMismatch);
}

TEST_CASE("commutator identity") {
  std::mt19937_64 rng(31);
  std::vector<std::pair<int, int>> weights{{0, 0}, {1, 0}, {2, 1}, {3, 0}, {0, 2}};
  for (Metric m : {Metric::isothermal(sphere()), Metric::isothermal(1 + X * X)}) {
    ComplexCalculus cc(m);
    Expr R = gauss_curvature(m);
    for (auto [p, q] : weights) {
      Section<ComplexChart> s{CExpr(testsupport::random_poly(rng), testsupport::random_poly(rng)), p, q};
      CExpr lhs = cc.nabla01(cc.nabla10(s)).coeff - cc.nabla10(cc.nabla01(s)).coeff;
      CExpr rhs = CExpr(rat(p - q, 2) * R * m.lambda) * s.coeff;
      CHECK(zero((lhs - rhs).re));
      CHECK(zero((lhs - rhs).im));
    }
  }
  for (Metric m : {Metric::null(exp(X * Y)), Metric::null(pow(Y + X * X, -2))}) {
    NullCalculus nc(m);
    Expr R = gauss_curvature(m);
    for (auto [p, q] : weights) {
      Section<NullChart> s{PExpr(testsupport::random_poly(rng), testsupport::random_poly(rng)), p, q};
      PExpr lhs = nc.nabla01(nc.nabla10(s)).coeff - nc.nabla10(nc.nabla01(s)).coeff;
      // (q - p)/2 * R * (2 lambda)
      PExpr rhs = NullChart::real(Expr(q - p) * R * m.lambda) * s.coeff;
      CHECK(zero((lhs - rhs).here));
      CHECK(zero((lhs - rhs).mirror));
    }
  }
}

TEST_CASE("gradient, bracket, laplacian") {
  CHECK(grad_half_square(X, Metric::isothermal(1)) == rat(1, 2));
  Metric s = Metric::isothermal(sphere());
  CHECK(zero(grad_half_square(gauss_curvature(s), s)));
  CHECK(zero(grad_half_square(X * X + Y * Y, Metric::general(1, 0, 1)) - 2 * (X * X + Y * Y)));
  Expr lam = 1 + X * X + pow(Y, 4);
  Metric m = Metric::isothermal(lam);
  CHECK(zero(poisson_g(X, Y, m) - 1 / lam));
  CHECK(poisson_g(X * Y, X * Y, m).is_zero());
  CHECK(simplify(laplacian(X * X + Y * Y, Metric::isothermal(1))) == Expr(4));
  CHECK(laplacian(X * Y, Metric::isothermal(1)).is_zero());

  std::mt19937_64 rng(37);
  ComplexCalculus cc(m);
  for (int k = 0; k < 5; ++k) {
    Expr f = testsupport::random_poly(rng, 3), h = testsupport::random_poly(rng, 3), w = testsupport::random_poly(rng, 2);
    // f_z h_zbar - f_zbar h_z = (i/2) g {f,h}
    CExpr l = cc.fz(f) * cc.fzb(h) - cc.fzb(f) * cc.fz(h);
    CHECK(zero(l.re));
    CHECK(zero(l.im - lam * poisson_g(f, h, m) / 2));
    // Jacobi
    auto P = [&](const Expr& a, const Expr& b) { return poisson_g(a, b, m); };
    CHECK(zero(P(f, P(h, w)) + P(h, P(w, f)) + P(w, P(f, h))));
    CHECK(zero(cc.bracket(f, h) - P(f, h)));
    CHECK(zero(cc.inner(f, h) - IndexGeometry(m).inner(f, h)));
    CHECK(zero(cc.laplacian(f) - IndexGeometry(m.as_general()).laplacian(f)));
  }
  Metric n = Metric::null(1 + X * X + Y * Y);
  NullCalculus nc(n);
  Expr f = X * X * Y + Y, h = X - Y * Y * Y;
  CHECK(zero(nc.bracket(f, h) - poisson_g(f, h, n)));
  CHECK(zero(nc.inner(f, h) - IndexGeometry(n).inner(f, h)));
  CHECK(zero(nc.laplacian(f) - laplacian(f, n)));
}

TEST_CASE("laplacian against divergence oracle") {
  Metric m = Metric::general(1 + X * X, X * Y / 4, 1 + Y * Y);
  Expr f = sin(X) * Y + X * X * X;
  Expr L = laplacian(f, m);
  // (1/mu) d_i(mu g^{ij} d_j f) by nested central differences
  Tape t(std::vector<Expr>{m.g11, m.g12, m.g22, f});
  std::vector<long double> o;
  auto flux = [&](long double x, long double y, int i) {
    const long double h = 1e-5L;
    t.eval(x + h, y, o);
    long double fxp = o[3];
    t.eval(x - h, y, o);
    long double fxm = o[3];
    t.eval(x, y + h, o);
    long double fyp = o[3];
    t.eval(x, y - h, o);
    long double fym = o[3];
    t.eval(x, y, o);
    long double det = o[0] * o[2] - o[1] * o[1], mu = std::sqrt(det);
    long double gi[2][2] = {{o[2] / det, -o[1] / det}, {-o[1] / det, o[0] / det}};
    long double df[2] = {(fxp - fxm) / (2 * h), (fyp - fym) / (2 * h)};
    return mu * (gi[i][0] * df[0] + gi[i][1] * df[1]);
  };
  for (auto [x, y] : std::vector<std::pair<double, double>>{{0.3, 0.2}, {-0.5, 0.7}, {0.1, -0.8}}) {
    const long double h = 1e-3L;
    t.eval(x, y, o);
    long double mu = std::sqrt(o[0] * o[2] - o[1] * o[1]);
    long double div = (flux(x + h, y, 0) - flux(x - h, y, 0)) / (2 * h) + (flux(x, y + h, 1) - flux(x, y - h, 1)) / (2 * h);
    CHECK(std::fabs(static_cast<double>(div / mu) - eval_at(L, x, y)) < 1e-5);
  }
}

TEST_CASE("complex structure") {
  Mat2 J = complex_structure(Metric::isothermal(sphere()));
  CHECK(J[0][0].is_zero());
  CHECK(J[0][1] == Expr(-1));
  CHECK(J[1][0] == Expr(1));
  CHECK(J[1][1].is_zero());
  Mat2 K = complex_structure(Metric::general(1 + X * X, X * Y / 4, 1 + Y * Y));
  Box b{-0.9, 0.9, -0.9, 0.9};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      CHECK(zero(K[i][0] * K[0][j] + K[i][1] * K[1][j] + (i == j ? 1 : 0), b));
  CHECK(zero(K[0][0] + K[1][1], b));
}

#include "cubint/cnum.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace cubint;
using testsupport::zero;

TEST_CASE("wirtinger derivatives") {
  Expr x = Expr::x(), y = Expr::y();
  CExpr z(x, y);
  CHECK(wirtinger_zbar(z).is_zero());
  CHECK(wirtinger_z(z) == CExpr(1));
  CExpr z2(x * x - y * y, 2 * x * y);
  CHECK(simplify(wirtinger_zbar(z2)).is_zero());
  CHECK(simplify(wirtinger_z(z2)) == simplify(CExpr(2 * x, 2 * y)));
}

TEST_CASE("holomorphicity") {
  Expr x = Expr::x(), y = Expr::y();
  CHECK(is_holomorphic(CExpr(0, -1), Box{}).zero());
  CHECK(is_holomorphic(CExpr(x), Box{}).nonzero());
  CHECK(is_holomorphic(CExpr(exp(x) * cos(y), exp(x) * sin(y)), Box{}).zero());
}

TEST_CASE("wirtinger identities on random inputs") {
  std::mt19937_64 rng(17);
  for (int k = 0; k < 15; ++k) {
    CExpr f(testsupport::random_poly(rng, 3) * sin(testsupport::random_poly(rng, 1)), testsupport::random_poly(rng, 3));
    CExpr h(exp(testsupport::random_poly(rng, 1) / 3), testsupport::random_poly(rng, 2));
    // conjugation rule
    CExpr c = wirtinger_z(conj(f)) - conj(wirtinger_zbar(f));
    CHECK(zero(c.re));
    CHECK(zero(c.im));
    // Leibniz
    for (auto op : {wirtinger_z, wirtinger_zbar}) {
      CExpr l = op(f * h) - (op(f) * h + f * op(h));
      CHECK(zero(l.re));
      CHECK(zero(l.im));
    }
    // real derivatives from the Wirtinger pair
    CExpr ddx = wirtinger_z(f) + wirtinger_zbar(f);
    CExpr ddy = times_i(wirtinger_z(f) - wirtinger_zbar(f));
    CHECK(zero(ddx.re - dx(f.re)));
    CHECK(zero(ddx.im - dx(f.im)));
    CHECK(zero(ddy.re - dy(f.re)));
    CHECK(zero(ddy.im - dy(f.im)));
  }
}

TEST_CASE("complex division") {
  CExpr a(Expr::x(), 1), b(2, Expr::y());
  CExpr q = (a / b) * b - a;
  CHECK(zero(q.re));
  CHECK(zero(q.im));
  CHECK_THROWS_AS(a / CExpr(0), DomainError);
}

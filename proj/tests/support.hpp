#pragma once

#include <cmath>
#include <random>

#include "cubint/geometry.hpp"

namespace testsupport {

using namespace cubint;

inline Expr random_poly(std::mt19937_64& rng, int degree = 2, int terms = 4) {
  Expr r = 0;
  for (int t = 0; t < terms; ++t) {
    int i = static_cast<int>(rng() % (degree + 1));
    int j = static_cast<int>(rng() % (degree + 1 - i));
    long c = static_cast<long>(rng() % 9) - 4;
    if (c == 0) c = 1;
    r = r + Expr(c) * pow(Expr::x(), i) * pow(Expr::y(), j);
  }
  return r;
}

// positive smooth conformal factors used as fixtures
inline Expr random_lambda(std::mt19937_64& rng) {
  Expr p = random_poly(rng, 2, 3);
  return Expr(2) + pow(p, 2) / 4 + Expr::x() * Expr::x() / 3;
}

inline bool zero(const Expr& e, const Box& box = {}) { return is_zero(e, box).zero(); }

// Gauss curvature by the Brioschi formula with metric derivatives taken by central differences.
inline long double fd_curvature(const Metric& m, long double x, long double y) {
  Tape t(std::vector<Expr>{m.comp(0, 0), m.comp(0, 1), m.comp(1, 1)});
  std::vector<long double> o;
  auto at = [&](long double a, long double b, int k) {
    t.eval(a, b, o);
    return o[k];
  };
  const long double h = 1e-4L;
  auto du = [&](int k) { return (at(x + h, y, k) - at(x - h, y, k)) / (2 * h); };
  auto dv = [&](int k) { return (at(x, y + h, k) - at(x, y - h, k)) / (2 * h); };
  auto duu = [&](int k) { return (at(x + h, y, k) - 2 * at(x, y, k) + at(x - h, y, k)) / (h * h); };
  auto dvv = [&](int k) { return (at(x, y + h, k) - 2 * at(x, y, k) + at(x, y - h, k)) / (h * h); };
  auto duv = [&](int k) {
    return (at(x + h, y + h, k) - at(x + h, y - h, k) - at(x - h, y + h, k) + at(x - h, y - h, k)) / (4 * h * h);
  };
  long double E = at(x, y, 0), F = at(x, y, 1), G = at(x, y, 2);
  long double Eu = du(0), Ev = dv(0), Fu = du(1), Fv = dv(1), Gu = du(2), Gv = dv(2);
  auto det3 = [](long double a[3][3]) {
    return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
           a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
  };
  long double A[3][3] = {{-dvv(0) / 2 + duv(1) - duu(2) / 2, Eu / 2, Fu - Ev / 2}, {Fv - Gu / 2, E, F}, {Gv / 2, F, G}};
  long double B[3][3] = {{0, Ev / 2, Gu / 2}, {Ev / 2, E, F}, {Gu / 2, F, G}};
  long double w = E * G - F * F;
  return (det3(A) - det3(B)) / (w * w);
}

}  // namespace testsupport

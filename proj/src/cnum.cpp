#include "cubint/cnum.hpp"

namespace cubint {

CExpr operator+(const CExpr& a, const CExpr& b) { return {a.re + b.re, a.im + b.im}; }
CExpr operator-(const CExpr& a, const CExpr& b) { return {a.re - b.re, a.im - b.im}; }
CExpr operator-(const CExpr& a) { return {-a.re, -a.im}; }

CExpr operator*(const CExpr& a, const CExpr& b) {
  if (a.im.is_zero()) return {a.re * b.re, a.re * b.im};
  if (b.im.is_zero()) return {a.re * b.re, a.im * b.re};
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

CExpr operator/(const CExpr& a, const CExpr& b) {
  if (b.is_zero()) throw DomainError("complex division by zero");
  if (b.im.is_zero()) return {a.re / b.re, a.im / b.re};
  Expr n = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
}

CExpr conj(const CExpr& a) { return {a.re, -a.im}; }
CExpr times_i(const CExpr& a) { return {-a.im, a.re}; }
CExpr simplify(const CExpr& a) { return {simplify(a.re), simplify(a.im)}; }
bool operator==(const CExpr& a, const CExpr& b) { return a.re == b.re && a.im == b.im; }

CExpr wirtinger_z(const CExpr& f) {
  return {(dx(f.re) + dy(f.im)) / 2, (dx(f.im) - dy(f.re)) / 2};
}

CExpr wirtinger_zbar(const CExpr& f) {
  return {(dx(f.re) - dy(f.im)) / 2, (dx(f.im) + dy(f.re)) / 2};
}

ZeroVerdict is_holomorphic(const CExpr& f, const Box& box, const ZeroTestConfig& cfg) {
  CExpr d = wirtinger_zbar(f);
  ZeroVerdict a = is_zero(d.re, box, cfg);
  if (!a.zero()) return a;
  ZeroVerdict b = is_zero(d.im, box, cfg);
  if (!b.zero()) return b;
  a.symbolic = a.symbolic && b.symbolic;
  return a;
}

PExpr operator+(const PExpr& a, const PExpr& b) { return {a.here + b.here, a.mirror + b.mirror}; }
PExpr operator-(const PExpr& a, const PExpr& b) { return {a.here - b.here, a.mirror - b.mirror}; }
PExpr operator-(const PExpr& a) { return {-a.here, -a.mirror}; }
PExpr operator*(const PExpr& a, const PExpr& b) { return {a.here * b.here, a.mirror * b.mirror}; }
PExpr operator/(const PExpr& a, const PExpr& b) { return {a.here / b.here, a.mirror / b.mirror}; }

}  // namespace cubint

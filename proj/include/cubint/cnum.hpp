#pragma once

#include "cubint/expr.hpp"

namespace cubint {

// re + i*im
struct CExpr {
  Expr re, im;
  CExpr() = default;
  CExpr(Expr r) : re(std::move(r)) {}
  CExpr(Expr r, Expr i) : re(std::move(r)), im(std::move(i)) {}
  CExpr(long v) : re(v) {}
  bool is_zero() const { return re.is_zero() && im.is_zero(); }
};

CExpr operator+(const CExpr& a, const CExpr& b);
CExpr operator-(const CExpr& a, const CExpr& b);
CExpr operator-(const CExpr& a);
CExpr operator*(const CExpr& a, const CExpr& b);
CExpr operator/(const CExpr& a, const CExpr& b);
CExpr conj(const CExpr& a);
CExpr times_i(const CExpr& a);
CExpr simplify(const CExpr& a);
bool operator==(const CExpr& a, const CExpr& b);

CExpr wirtinger_z(const CExpr& f);
CExpr wirtinger_zbar(const CExpr& f);
// Both components of f_zbar must vanish; reports the first non-Zero component.
ZeroVerdict is_holomorphic(const CExpr& f, const Box& box, const ZeroTestConfig& cfg = {});

// Null-chart value: a quantity together with its image under the null involution.
// It is the split-complex number written in the idempotent basis, so the unit j = (1,-1).
struct PExpr {
  Expr here, mirror;
  PExpr() = default;
  PExpr(Expr h, Expr m) : here(std::move(h)), mirror(std::move(m)) {}
  PExpr(long v) : here(v), mirror(v) {}
  bool is_zero() const { return here.is_zero() && mirror.is_zero(); }
};

PExpr operator+(const PExpr& a, const PExpr& b);
PExpr operator-(const PExpr& a, const PExpr& b);
PExpr operator-(const PExpr& a);
PExpr operator*(const PExpr& a, const PExpr& b);
PExpr operator/(const PExpr& a, const PExpr& b);

// Chart policies: the weighted calculus is written once against these.
struct ComplexChart {
  using V = CExpr;
  static constexpr const char* name = "complex";
  static V real(const Expr& f) { return CExpr(f); }
  static V unit() { return CExpr(0, 1); }
  static V conj(const V& a) { return cubint::conj(a); }
  static Expr re(const V& a) { return a.re; }
  static Expr im(const V& a) { return a.im; }
  static V dz(const V& f) { return wirtinger_z(f); }
  static V dzb(const V& f) { return wirtinger_zbar(f); }
  // components of d/dz in the chart basis (d/dx, d/dy)
  static V ez(int i) { return i == 0 ? CExpr(rat(1, 2)) : CExpr(0, rat(-1, 2)); }
  // value of w_zbar for a real function with gradient (gx, gy)
  static V from_grad_zb(const Expr& gx, const Expr& gy) { return CExpr(gx / 2, gy / 2); }
};

struct NullChart {
  using V = PExpr;
  static constexpr const char* name = "null";
  static V real(const Expr& f) { return PExpr(f, f); }
  static V unit() { return PExpr(1, -1); }
  static V conj(const V& a) { return PExpr(a.mirror, a.here); }
  static Expr re(const V& a) { return (a.here + a.mirror) / 2; }
  static Expr im(const V& a) { return (a.here - a.mirror) / 2; }
  static V dz(const V& f) { return PExpr(dx(f.here), dy(f.mirror)); }
  static V dzb(const V& f) { return PExpr(dy(f.here), dx(f.mirror)); }
  static V ez(int i) { return i == 0 ? PExpr(1, 0) : PExpr(0, 1); }
  static V from_grad_zb(const Expr& gx, const Expr& gy) { return PExpr(gy, gx); }
};

}  // namespace cubint

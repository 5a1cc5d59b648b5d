#pragma once

#include <array>
#include <stdexcept>
#include <string>

#include "cubint/cnum.hpp"

namespace cubint {

struct ChartMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Isothermal: g = lambda (dx^2 + dy^2).
// General:    g = g11 dx^2 + 2 g12 dx dy + g22 dy^2, volume form orientation * sqrt(det) dx^dy.
// Null:       g(d/dx, d/dy) = -lambda, volume form -lambda dx^dy.
struct Metric {
  enum Kind { Isothermal, General, Null } kind = Isothermal;
  Expr lambda{1};
  Expr g11{1}, g12{0}, g22{1};
  int orientation = 1;

  static Metric isothermal(Expr lambda, int orientation = 1);
  static Metric general(Expr g11, Expr g12, Expr g22, int orientation = 1);
  static Metric null(Expr lambda);

  bool riemannian() const { return kind != Null; }
  // covariant components g_ij
  Expr comp(int i, int j) const;
  Expr det() const;
  // mu with omega_12 = sign() * mu
  Expr mu() const;
  int sign() const;
  // same metric, entered as General components
  Metric as_general() const;
};

std::string to_string(Metric::Kind k);

// lambda (or det) nonvanishing on the sampled domain
ZeroVerdict check_metric(const Metric& g, const Box& box, const ZeroTestConfig& cfg = {});

// T^111, T^112, T^122, T^222 of a totally symmetric contravariant tensor;
// as a cubic F = T111 px^3 + 3 T112 px^2 py + 3 T122 px py^2 + T222 py^3.
struct SymTensor3 {
  std::array<Expr, 4> c{Expr(0), Expr(0), Expr(0), Expr(0)};
  Expr at(int i, int j, int k) const { return c[i + j + k]; }
  bool is_zero() const { return c[0].is_zero() && c[1].is_zero() && c[2].is_zero() && c[3].is_zero(); }
};
SymTensor3 operator+(const SymTensor3& a, const SymTensor3& b);
SymTensor3 operator-(const SymTensor3& a, const SymTensor3& b);
SymTensor3 operator*(const Expr& s, const SymTensor3& a);
SymTensor3 simplify(const SymTensor3& t);

using Mat2 = std::array<std::array<Expr, 2>, 2>;
using Vec2 = std::array<Expr, 2>;

// Index calculus in the chart of the metric: Christoffel symbols, curvature, divergences.
class IndexGeometry {
 public:
  explicit IndexGeometry(const Metric& g);

  const Metric& metric() const { return m_; }
  const Expr& g(int i, int j) const { return g_[i][j]; }
  const Expr& ginv(int i, int j) const { return gi_[i][j]; }
  // Gamma^i_{jk}
  const Expr& christoffel(int i, int j, int k) const { return gam_[i][j][k]; }
  const Expr& mu() const { return mu_; }
  Expr omega(int i, int j) const;
  // J^i_j
  const Expr& J(int i, int j) const { return J_[i][j]; }

  Expr curvature() const;
  Expr inner(const Expr& f, const Expr& h) const;
  Expr half_grad_sq(const Expr& f) const { return inner(f, f) / 2; }
  Expr bracket(const Expr& f, const Expr& h) const;
  Expr laplacian(const Expr& f) const;
  Mat2 hessian(const Expr& f) const;  // f_{;ij}

  // V^{jk} = T^{ijk}_{;i}
  Mat2 div3(const SymTensor3& T) const;
  // W^k = V^{jk}_{;j}
  Vec2 div2(const Mat2& V) const;
  // W^k_{;k}
  Expr div1(const Vec2& W) const;
  // T^{ijk}_{;l} as [i][j][k][l]
  std::array<std::array<std::array<Vec2, 2>, 2>, 2> cov3(const SymTensor3& T) const;

 private:
  Metric m_;
  Expr g_[2][2], gi_[2][2], mu_;
  Expr gam_[2][2][2];
  Expr J_[2][2];
};

// Section coeff * dz^p dzbar^q of the chart C (negative weights: vector-type indices).
template <class C>
struct Section {
  typename C::V coeff;
  int p = 0, q = 0;
};

template <class C>
Section<C> operator*(const Section<C>& a, const Section<C>& b) {
  return {a.coeff * b.coeff, a.p + b.p, a.q + b.q};
}

template <class C>
Section<C> conj(const Section<C>& s) {
  return {C::conj(s.coeff), s.q, s.p};
}

// Weighted calculus in an isothermal (ComplexChart) or null (NullChart) chart.
template <class C>
class ChartCalculus {
 public:
  using V = typename C::V;
  explicit ChartCalculus(const Metric& g);

  const Metric& metric() const { return m_; }
  // coefficient of g = gamma dz dzbar
  const V& gamma() const { return gamma_; }
  const Expr& gamma_re() const { return gr_; }

  Section<C> nabla10(const Section<C>& s) const;
  Section<C> nabla01(const Section<C>& s) const;
  V fz(const Expr& f) const { return C::dz(C::real(f)); }
  V fzb(const Expr& f) const { return C::dzb(C::real(f)); }

  Expr curvature() const;
  Expr inner(const Expr& f, const Expr& h) const;
  Expr half_grad_sq(const Expr& f) const { return inner(f, f) / 2; }
  Expr bracket(const Expr& f, const Expr& h) const;
  Expr laplacian(const Expr& f) const;

 private:
  Metric m_;
  V gamma_, lz_, lzb_;
  Expr gr_;
};

extern template class ChartCalculus<ComplexChart>;
extern template class ChartCalculus<NullChart>;
using ComplexCalculus = ChartCalculus<ComplexChart>;
using NullCalculus = ChartCalculus<NullChart>;

enum class Route { Auto, Chart, Index };

Expr gauss_curvature(const Metric& g, Route route = Route::Auto);
Section<ComplexChart> nabla10(const Section<ComplexChart>& s, const Metric& g);
Section<ComplexChart> nabla01(const Section<ComplexChart>& s, const Metric& g);
Section<NullChart> nabla10(const Section<NullChart>& s, const Metric& g);
Section<NullChart> nabla01(const Section<NullChart>& s, const Metric& g);
Expr grad_half_square(const Expr& f, const Metric& g);
Expr poisson_g(const Expr& f, const Expr& h, const Metric& g);
Expr laplacian(const Expr& f, const Metric& g);
Mat2 complex_structure(const Metric& g);

// simplify with a size budget; returns the input when normalization does not finish
Expr tidy(const Expr& e);

}  // namespace cubint

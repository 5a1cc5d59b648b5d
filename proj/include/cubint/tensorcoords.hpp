#pragma once

#include <utility>

#include "cubint/geometry.hpp"

namespace cubint {

// Totally symmetric rank-4 contravariant tensor, c[number of 2-indices].
struct SymTensor4 {
  std::array<Expr, 5> c{Expr(0), Expr(0), Expr(0), Expr(0), Expr(0)};
  Expr at(int i, int j, int k, int l) const { return c[i + j + k + l]; }
};

using Full3 = std::array<std::array<std::array<Expr, 2>, 2>, 2>;
Full3 full(const SymTensor3& t);
SymTensor3 sym_part(const Full3& t);  // averaged symmetrization

// F = Ahat + Bhat with Ahat of type [3,0] and Bhat of type [2,1]
std::pair<SymTensor3, SymTensor3> split_AB(const SymTensor3& F, const Metric& g);
// the real part of i*A, i.e. J applied to one slot and averaged
SymTensor3 imag_part(const SymTensor3& ahat, const Metric& g);
// sym(Ahat^{ijk;l}) + sym(J^4 Ahat^{ijk;l}); vanishes iff A is holomorphic
SymTensor4 holo_residual(const SymTensor3& ahat, const Metric& g);
// 1/2 K_{;kl}(d^k_i d^l_j - J^k_i J^l_j) - 4 g_{k(i} omega_{j)l} Ahat^{klm}_{;m};
// in an isothermal chart this is 2 Re(K_{;zbar zbar} + (i/2) lambda^2 A_{;z}) in components
Mat2 principle_residual(const Expr& K, const SymTensor3& ahat, const Metric& g);

// evaluation of T on three 1-forms
Expr evaluate(const SymTensor3& t, const Vec2& a1, const Vec2& a2, const Vec2& a3);
// the same tensor with J applied to the chosen slots (as a full tensor)
Full3 apply_J(const Full3& t, const IndexGeometry& ig, bool s1, bool s2, bool s3);

}  // namespace cubint

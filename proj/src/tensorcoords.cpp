#include "cubint/tensorcoords.hpp"

#include <algorithm>

namespace cubint {

Full3 full(const SymTensor3& t) {
  Full3 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) r[i][j][k] = t.at(i, j, k);
  return r;
}

SymTensor3 sym_part(const Full3& t) {
  SymTensor3 r;
  for (int n = 0; n < 4; ++n) {
    int idx[3] = {n > 2, n > 1, n > 0};
    std::vector<Expr> terms;
    std::sort(idx, idx + 3);
    do {
      terms.push_back(t[idx[0]][idx[1]][idx[2]]);
    } while (std::next_permutation(idx, idx + 3));
    r.c[n] = tidy(add(terms) / static_cast<long>(terms.size()));
  }
  return r;
}

Full3 apply_J(const Full3& t, const IndexGeometry& ig, bool s1, bool s2, bool s3) {
  Full3 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) {
        std::vector<Expr> terms;
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c) {
              if ((!s1 && a != i) || (!s2 && b != j) || (!s3 && c != k)) continue;
              Expr f = t[a][b][c];
              if (s1) f = f * ig.J(i, a);
              if (s2) f = f * ig.J(j, b);
              if (s3) f = f * ig.J(k, c);
              terms.push_back(f);
            }
        r[i][j][k] = add(terms);
      }
  return r;
}

std::pair<SymTensor3, SymTensor3> split_AB(const SymTensor3& F, const Metric& g) {
  IndexGeometry ig(g);
  Full3 f = full(F);
  Full3 a = apply_J(f, ig, true, true, false), b = apply_J(f, ig, true, false, true), c = apply_J(f, ig, false, true, true);
  SymTensor3 A, B;
  for (int n = 0; n < 4; ++n) {
    int i = n > 2, j = n > 1, k = n > 0;
    A.c[n] = tidy((f[i][j][k] - a[i][j][k] - b[i][j][k] - c[i][j][k]) / 4);
    B.c[n] = tidy(F.c[n] - A.c[n]);
  }
  return {A, B};
}

SymTensor3 imag_part(const SymTensor3& ahat, const Metric& g) {
  IndexGeometry ig(g);
  Full3 f = full(ahat);
  Full3 a = apply_J(f, ig, true, false, false), b = apply_J(f, ig, false, true, false), c = apply_J(f, ig, false, false, true);
  SymTensor3 r;
  for (int n = 0; n < 4; ++n) {
    int i = n > 2, j = n > 1, k = n > 0;
    r.c[n] = tidy((a[i][j][k] + b[i][j][k] + c[i][j][k]) / 3);
  }
  return r;
}

SymTensor4 holo_residual(const SymTensor3& ahat, const Metric& g) {
  IndexGeometry ig(g);
  auto D = ig.cov3(ahat);
  // C^{ijkl} = Ahat^{ijk}_{;m} g^{ml}
  Expr C[2][2][2][2], JC[2][2][2][2];
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) C[i][j][k][l] = D[i][j][k][0] * ig.ginv(0, l) + D[i][j][k][1] * ig.ginv(1, l);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) {
          std::vector<Expr> t;
          for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
              for (int c = 0; c < 2; ++c)
                for (int d = 0; d < 2; ++d) {
                  Expr w = ig.J(i, a) * ig.J(j, b) * ig.J(k, c) * ig.J(l, d);
                  if (!w.is_zero()) t.push_back(w * C[a][b][c][d]);
                }
          JC[i][j][k][l] = add(t);
        }
  SymTensor4 r;
  for (int n = 0; n < 5; ++n) {
    int idx[4] = {n > 3, n > 2, n > 1, n > 0};
    std::sort(idx, idx + 4);
    std::vector<Expr> t;
    do {
      t.push_back(C[idx[0]][idx[1]][idx[2]][idx[3]] + JC[idx[0]][idx[1]][idx[2]][idx[3]]);
    } while (std::next_permutation(idx, idx + 4));
    r.c[n] = add(t) / static_cast<long>(t.size());
  }
  return r;
}

Mat2 principle_residual(const Expr& K, const SymTensor3& ahat, const Metric& g) {
  IndexGeometry ig(g);
  Mat2 H = ig.hessian(K);
  Mat2 V = ig.div3(ahat);
  Mat2 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      std::vector<Expr> t;
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) {
          Expr w = (k == i && l == j ? Expr(1) : Expr(0)) - ig.J(k, i) * ig.J(l, j);
          if (!w.is_zero()) t.push_back(w * H[k][l] / 2);
          Expr s = -2 * (ig.g(k, i) * ig.omega(j, l) + ig.g(k, j) * ig.omega(i, l));
          if (!s.is_zero()) t.push_back(s * V[k][l]);
        }
      r[i][j] = add(t);
    }
  return r;
}

Expr evaluate(const SymTensor3& t, const Vec2& a1, const Vec2& a2, const Vec2& a3) {
  std::vector<Expr> terms;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) terms.push_back(t.at(i, j, k) * a1[i] * a2[j] * a3[k]);
  return add(terms);
}

}  // namespace cubint

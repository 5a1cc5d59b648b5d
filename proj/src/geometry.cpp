#include "cubint/geometry.hpp"

namespace cubint {

Expr tidy(const Expr& e) {
  if (e.is_num() || dag_size(e) > 3000) return e;
  return simplify_ex(e, 6000).expr;
}

// ---- Metric -----------------------------------------------------------------

Metric Metric::isothermal(Expr lambda, int orientation) {
  Metric m;
  m.kind = Isothermal;
  m.lambda = lambda;
  m.g11 = lambda;
  m.g12 = 0;
  m.g22 = lambda;
  m.orientation = orientation < 0 ? -1 : 1;
  return m;
}

Metric Metric::general(Expr g11, Expr g12, Expr g22, int orientation) {
  Metric m;
  m.kind = General;
  m.g11 = g11;
  m.g12 = g12;
  m.g22 = g22;
  m.lambda = 0;
  m.orientation = orientation < 0 ? -1 : 1;
  return m;
}

Metric Metric::null(Expr lambda) {
  Metric m;
  m.kind = Null;
  m.lambda = lambda;
  m.g11 = 0;
  m.g12 = -lambda;
  m.g22 = 0;
  return m;
}

Expr Metric::comp(int i, int j) const {
  if (i != j) return g12;
  return i == 0 ? g11 : g22;
}

Expr Metric::det() const {
  switch (kind) {
    case Isothermal: return lambda * lambda;
    case Null: return -(lambda * lambda);
    default: return g11 * g22 - g12 * g12;
  }
}

Expr Metric::mu() const { return kind == General ? sqrt(det()) : lambda; }

int Metric::sign() const { return kind == Null ? -orientation : orientation; }

Metric Metric::as_general() const {
  Metric m = *this;
  if (kind == Isothermal) m.kind = General;
  return m;
}

std::string to_string(Metric::Kind k) {
  switch (k) {
    case Metric::Isothermal: return "isothermal";
    case Metric::General: return "general";
    default: return "null";
  }
}

ZeroVerdict check_metric(const Metric& g, const Box& box, const ZeroTestConfig& cfg) {
  // a metric is regular where the probe finds it nonzero at every sample
  Expr d = g.kind == Metric::General ? g.det() : g.lambda;
  Tape t(d);
  std::vector<long double> out;
  ZeroVerdict v;
  v.kind = ZeroVerdict::NonZero;
  for (int s = 0; s < cfg.seeds; ++s) {
    for (auto [px, py] : probe_points(box, cfg.seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(s), cfg.samples)) {
      try {
        t.eval(px, py, out);
      } catch (const EvalDomainError& e) {
        return {ZeroVerdict::Unknown, px, py, 0, 0, false, e.what()};
      }
      bool bad = g.kind == Metric::General ? out[0] <= 0 : out[0] == 0;
      if (bad) return {ZeroVerdict::Zero, px, py, static_cast<double>(out[0]), 0, false,
                       g.kind == Metric::General ? "det(g) not positive" : "lambda vanishes"};
    }
  }
  return v;
}

// ---- SymTensor3 ---------------------------------------------------------------

SymTensor3 operator+(const SymTensor3& a, const SymTensor3& b) {
  SymTensor3 r;
  for (int i = 0; i < 4; ++i) r.c[i] = a.c[i] + b.c[i];
  return r;
}
SymTensor3 operator-(const SymTensor3& a, const SymTensor3& b) {
  SymTensor3 r;
  for (int i = 0; i < 4; ++i) r.c[i] = a.c[i] - b.c[i];
  return r;
}
SymTensor3 operator*(const Expr& s, const SymTensor3& a) {
  SymTensor3 r;
  for (int i = 0; i < 4; ++i) r.c[i] = s * a.c[i];
  return r;
}
SymTensor3 simplify(const SymTensor3& t) {
  SymTensor3 r;
  for (int i = 0; i < 4; ++i) r.c[i] = tidy(t.c[i]);
  return r;
}

// ---- IndexGeometry -------------------------------------------------------------

namespace {
Expr d(const Expr& e, int i) { return i == 0 ? dx(e) : dy(e); }
}  // namespace

IndexGeometry::IndexGeometry(const Metric& g) : m_(g) {
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) g_[i][j] = g.comp(i, j);
  if (g.kind == Metric::Isothermal) {
    gi_[0][0] = gi_[1][1] = 1 / g.lambda;
    gi_[0][1] = gi_[1][0] = 0;
  } else if (g.kind == Metric::Null) {
    gi_[0][0] = gi_[1][1] = 0;
    gi_[0][1] = gi_[1][0] = -1 / g.lambda;
  } else {
    Expr det = g.det();
    gi_[0][0] = tidy(g.g22 / det);
    gi_[1][1] = tidy(g.g11 / det);
    gi_[0][1] = gi_[1][0] = tidy(-g.g12 / det);
  }
  mu_ = g.mu();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = j; k < 2; ++k) {
        std::vector<Expr> t;
        for (int l = 0; l < 2; ++l)
          t.push_back(gi_[i][l] * (d(g_[l][k], j) + d(g_[l][j], k) - d(g_[j][k], l)));
        gam_[i][j][k] = gam_[i][k][j] = tidy(add(t) / 2);
      }
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) J_[i][j] = tidy(gi_[i][0] * omega(j, 0) + gi_[i][1] * omega(j, 1));
}

Expr IndexGeometry::omega(int i, int j) const {
  if (i == j) return 0;
  Expr w = m_.sign() * mu_;
  return i == 0 ? w : -w;
}

Expr IndexGeometry::curvature() const {
  std::vector<Expr> terms;
  for (int j = 0; j < 2; ++j)
    for (int l = 0; l < 2; ++l) {
      if (gi_[j][l].is_zero()) continue;
      std::vector<Expr> ric;
      for (int i = 0; i < 2; ++i) {
        // R^i_{j i l}
        ric.push_back(d(gam_[i][l][j], i) - d(gam_[i][i][j], l));
        for (int m = 0; m < 2; ++m)
          ric.push_back(gam_[i][i][m] * gam_[m][l][j] - gam_[i][l][m] * gam_[m][i][j]);
      }
      terms.push_back(gi_[j][l] * add(ric));
    }
  return tidy(add(terms) / 2);
}

Expr IndexGeometry::inner(const Expr& f, const Expr& h) const {
  std::vector<Expr> t;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      if (!gi_[i][j].is_zero()) t.push_back(gi_[i][j] * d(f, i) * d(h, j));
  return add(t);
}

Expr IndexGeometry::bracket(const Expr& f, const Expr& h) const {
  return (dx(f) * dy(h) - dy(f) * dx(h)) / (m_.sign() * mu_);
}

Expr IndexGeometry::laplacian(const Expr& f) const {
  Expr v = m_.kind == Metric::General ? mu_ : m_.lambda;
  std::vector<Expr> t;
  for (int i = 0; i < 2; ++i) {
    std::vector<Expr> flux;
    for (int j = 0; j < 2; ++j)
      if (!gi_[i][j].is_zero()) flux.push_back(gi_[i][j] * d(f, j));
    t.push_back(d(v * add(flux), i));
  }
  return add(t) / v;
}

Mat2 IndexGeometry::hessian(const Expr& f) const {
  Mat2 H;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      H[i][j] = d(d(f, i), j) - gam_[0][i][j] * dx(f) - gam_[1][i][j] * dy(f);
  return H;
}

Mat2 IndexGeometry::div3(const SymTensor3& T) const {
  Mat2 V;
  for (int j = 0; j < 2; ++j)
    for (int k = j; k < 2; ++k) {
      std::vector<Expr> t;
      for (int i = 0; i < 2; ++i) {
        t.push_back(d(T.at(i, j, k), i));
        for (int m = 0; m < 2; ++m) {
          t.push_back(gam_[i][i][m] * T.at(m, j, k));
          t.push_back(gam_[j][i][m] * T.at(i, m, k));
          t.push_back(gam_[k][i][m] * T.at(i, j, m));
        }
      }
      V[j][k] = V[k][j] = add(t);
    }
  return V;
}

Vec2 IndexGeometry::div2(const Mat2& V) const {
  Vec2 W;
  for (int k = 0; k < 2; ++k) {
    std::vector<Expr> t;
    for (int j = 0; j < 2; ++j) {
      t.push_back(d(V[j][k], j));
      for (int m = 0; m < 2; ++m) {
        t.push_back(gam_[j][j][m] * V[m][k]);
        t.push_back(gam_[k][j][m] * V[j][m]);
      }
    }
    W[k] = add(t);
  }
  return W;
}

Expr IndexGeometry::div1(const Vec2& W) const {
  std::vector<Expr> t;
  for (int k = 0; k < 2; ++k) {
    t.push_back(d(W[k], k));
    for (int m = 0; m < 2; ++m) t.push_back(gam_[k][k][m] * W[m]);
  }
  return add(t);
}

std::array<std::array<std::array<Vec2, 2>, 2>, 2> IndexGeometry::cov3(const SymTensor3& T) const {
  std::array<std::array<std::array<Vec2, 2>, 2>, 2> r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) {
          std::vector<Expr> t{d(T.at(i, j, k), l)};
          for (int m = 0; m < 2; ++m) {
            t.push_back(gam_[i][l][m] * T.at(m, j, k));
            t.push_back(gam_[j][l][m] * T.at(i, m, k));
            t.push_back(gam_[k][l][m] * T.at(i, j, m));
          }
          r[i][j][k][l] = add(t);
        }
  return r;
}

// ---- ChartCalculus --------------------------------------------------------------

template <class C>
ChartCalculus<C>::ChartCalculus(const Metric& g) : m_(g) {
  constexpr bool null = std::is_same_v<C, NullChart>;
  if (null != (g.kind == Metric::Null) || g.kind == Metric::General)
    throw ChartMismatch(std::string(C::name) + " chart does not match a " + to_string(g.kind) + " metric");
  gamma_ = C::real(null ? -2 * g.lambda : g.lambda);
  gr_ = C::re(gamma_);
  lz_ = C::dz(gamma_) / gamma_;
  lzb_ = C::dzb(gamma_) / gamma_;
}

template <class C>
Section<C> ChartCalculus<C>::nabla10(const Section<C>& s) const {
  return {C::dz(s.coeff) - C::real(Expr(s.p)) * lz_ * s.coeff, s.p + 1, s.q};
}

template <class C>
Section<C> ChartCalculus<C>::nabla01(const Section<C>& s) const {
  return {C::dzb(s.coeff) - C::real(Expr(s.q)) * lzb_ * s.coeff, s.p, s.q + 1};
}

template <class C>
Expr ChartCalculus<C>::curvature() const {
  return tidy(-2 * C::re(C::dz(lzb_)) / gr_);
}

template <class C>
Expr ChartCalculus<C>::inner(const Expr& f, const Expr& h) const {
  return 2 * C::re(fz(f) * fzb(h) + fzb(f) * fz(h)) / gr_;
}

template <class C>
Expr ChartCalculus<C>::bracket(const Expr& f, const Expr& h) const {
  return 2 * m_.orientation * C::im(fz(f) * fzb(h) - fzb(f) * fz(h)) / gr_;
}

template <class C>
Expr ChartCalculus<C>::laplacian(const Expr& f) const {
  return 4 * C::re(C::dzb(fz(f))) / gr_;
}

template class ChartCalculus<ComplexChart>;
template class ChartCalculus<NullChart>;

// ---- free functions ---------------------------------------------------------------

Expr gauss_curvature(const Metric& g, Route route) {
  if (route == Route::Index || (route == Route::Auto && g.kind == Metric::General))
    return IndexGeometry(g).curvature();
  if (g.kind == Metric::Null) return NullCalculus(g).curvature();
  return ComplexCalculus(g).curvature();
}

Section<ComplexChart> nabla10(const Section<ComplexChart>& s, const Metric& g) { return ComplexCalculus(g).nabla10(s); }
Section<ComplexChart> nabla01(const Section<ComplexChart>& s, const Metric& g) { return ComplexCalculus(g).nabla01(s); }
Section<NullChart> nabla10(const Section<NullChart>& s, const Metric& g) { return NullCalculus(g).nabla10(s); }
Section<NullChart> nabla01(const Section<NullChart>& s, const Metric& g) { return NullCalculus(g).nabla01(s); }

Expr grad_half_square(const Expr& f, const Metric& g) {
  if (g.kind == Metric::Isothermal) return ComplexCalculus(g).half_grad_sq(f);
  return IndexGeometry(g).half_grad_sq(f);
}

Expr poisson_g(const Expr& f, const Expr& h, const Metric& g) { return IndexGeometry(g).bracket(f, h); }

Expr laplacian(const Expr& f, const Metric& g) {
  if (g.kind == Metric::Isothermal) return (dx(dx(f)) + dy(dy(f))) / g.lambda;
  return IndexGeometry(g).laplacian(f);
}

Mat2 complex_structure(const Metric& g) {
  if (g.kind == Metric::Null) throw ChartMismatch("complex structure needs a Riemannian metric");
  IndexGeometry ig(g);
  Mat2 J;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) J[i][j] = ig.J(i, j);
  return J;
}

}  // namespace cubint

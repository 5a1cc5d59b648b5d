#include "cubint/verify.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>

namespace cubint {

MomPoly to_poly(const SymTensor3& F) {
  MomPoly p;
  const long mult[4] = {1, 3, 3, 1};
  for (int n = 0; n < 4; ++n)
    if (!F.c[n].is_zero()) p[{3 - n, n}] = mult[n] * F.c[n];
  return p;
}

MomPoly hamiltonian_poly(const Metric& g) {
  IndexGeometry ig(g);
  MomPoly h;
  if (!ig.ginv(0, 0).is_zero()) h[{2, 0}] = ig.ginv(0, 0) / 2;
  if (!ig.ginv(0, 1).is_zero()) h[{1, 1}] = ig.ginv(0, 1);
  if (!ig.ginv(1, 1).is_zero()) h[{0, 2}] = ig.ginv(1, 1) / 2;
  return h;
}

MomPoly operator+(const MomPoly& a, const MomPoly& b) {
  MomPoly r = a;
  for (const auto& [k, v] : b) {
    auto it = r.find(k);
    if (it == r.end())
      r[k] = v;
    else
      it->second = it->second + v;
  }
  return r;
}

MomPoly operator*(const MomPoly& a, const MomPoly& b) {
  MomPoly r;
  for (const auto& [ka, va] : a)
    for (const auto& [kb, vb] : b) {
      std::pair<int, int> k{ka.first + kb.first, ka.second + kb.second};
      auto it = r.find(k);
      if (it == r.end())
        r[k] = va * vb;
      else
        it->second = it->second + va * vb;
    }
  return r;
}

namespace {

MomPoly dvar(const MomPoly& f, Var v) {
  MomPoly r;
  for (const auto& [k, c] : f) {
    Expr d = diff(c, v);
    if (!d.is_zero()) r[k] = d;
  }
  return r;
}

MomPoly dmom(const MomPoly& f, int which) {
  MomPoly r;
  for (const auto& [k, c] : f) {
    int e = which == 0 ? k.first : k.second;
    if (e == 0) continue;
    std::pair<int, int> nk = which == 0 ? std::pair{k.first - 1, k.second} : std::pair{k.first, k.second - 1};
    r[nk] = Expr(e) * c;
  }
  return r;
}

MomPoly neg(const MomPoly& f) {
  MomPoly r;
  for (const auto& [k, c] : f) r[k] = -c;
  return r;
}

Quartic quartic(const MomPoly& p) {
  Quartic q{Expr(0), Expr(0), Expr(0), Expr(0), Expr(0)};
  for (const auto& [k, c] : p) {
    if (k.first + k.second != 4) throw std::logic_error("bracket is not quartic");
    q[k.second] = q[k.second] + c;
  }
  for (auto& e : q) e = tidy(e);
  return q;
}

// complex polynomials in (px, py) of fixed degree, index = power of py
using CPoly = std::vector<CExpr>;

CPoly cmul(const CPoly& a, const CPoly& b) {
  CPoly r(a.size() + b.size() - 1, CExpr(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
  return r;
}

CPoly monomial(int m, int n) {
  const CPoly p{CExpr(rat(1, 2)), CExpr(0, rat(-1, 2))}, pb{CExpr(rat(1, 2)), CExpr(0, rat(1, 2))};
  CPoly r{CExpr(1)};
  for (int i = 0; i < m; ++i) r = cmul(r, p);
  for (int i = 0; i < n; ++i) r = cmul(r, pb);
  return r;
}

}  // namespace

MomPoly canonical_bracket(const MomPoly& f, const MomPoly& h) {
  return dvar(f, Var::X) * dmom(h, 0) + dvar(f, Var::Y) * dmom(h, 1) + neg(dmom(f, 0) * dvar(h, Var::X)) +
         neg(dmom(f, 1) * dvar(h, Var::Y));
}

std::map<int, MomPoly> homogeneous_components(const MomPoly& f) {
  std::map<int, MomPoly> r;
  for (const auto& [k, c] : f)
    if (!c.is_zero()) r[k.first + k.second][k] = c;
  return r;
}

Quartic bracket_FH_canonical(const SymTensor3& F, const Metric& g) {
  return quartic(canonical_bracket(to_poly(F), hamiltonian_poly(g)));
}

Quartic bracket_FH_null(const Expr& A1, const Expr& A2, const Expr& B1, const Expr& B2, const Expr& lam) {
  Expr s = 1 / (2 * lam * lam);
  return {tidy(s * lam * dy(A1)), tidy(s * (B1 * dy(lam) + 3 * A1 * dx(lam) + lam * dy(B1) + lam * dx(A1))),
          tidy(s * (2 * B1 * dx(lam) + lam * dx(B1) + 2 * B2 * dy(lam) + lam * dy(B2))),
          tidy(s * (B2 * dx(lam) - 3 * A2 * dy(lam) + lam * dx(B2) - lam * dy(A2))), tidy(-s * lam * dx(A2))};
}

Quartic bracket_FH(const SymTensor3& F, const Metric& g) {
  const auto& T = F.c;
  if (g.kind == Metric::Null) {
    // our H = -px py / lambda is -2 times the H of the null-coordinate formula
    Quartic q = bracket_FH_null(T[0], -T[3], 3 * T[1], 3 * T[2], g.lambda);
    for (auto& e : q) e = tidy(-2 * e);
    return q;
  }
  if (g.kind == Metric::General) return bracket_FH_canonical(F, g);
  // F = Re(a p^3 + b p^2 pbar)
  const Expr& lam = g.lambda;
  CExpr a(2 * (T[0] - 3 * T[2]), 2 * (3 * T[1] - T[3]));
  CExpr b(6 * (T[0] + T[2]), 6 * (T[1] + T[3]));
  CExpr L(lam), Lz = wirtinger_z(L), Lzb = wirtinger_zbar(L);
  CExpr c4 = L * wirtinger_zbar(a);
  CExpr c31 = b * Lzb + CExpr(3) * a * Lz + L * wirtinger_zbar(b) + L * wirtinger_z(a);
  CExpr c22 = CExpr(2) * b * Lz + L * wirtinger_z(b);
  CPoly m4 = monomial(4, 0), m31 = monomial(3, 1), m22 = monomial(2, 2);
  Quartic q;
  for (int k = 0; k < 5; ++k) {
    CExpr t = c4 * m4[k] + c31 * m31[k] + c22 * m22[k];
    q[k] = tidy(2 * t.re / (lam * lam));
  }
  return q;
}

bool Certificate::all_zero() const {
  for (const auto& v : verdicts)
    if (!v.zero()) return false;
  return true;
}

bool Certificate::any_nonzero() const {
  for (const auto& v : verdicts)
    if (v.nonzero()) return true;
  return false;
}

Certificate certify(const SymTensor3& F, const Metric& g, const Box& box, const ZeroTestConfig& cfg) {
  Certificate c;
  c.coeffs = bracket_FH(F, g);
  for (int k = 0; k < 5; ++k) c.verdicts[k] = is_zero(c.coeffs[k], box, cfg);
  return c;
}

// ---- geodesic flow ------------------------------------------------------------------

namespace {

struct FlowField {
  explicit FlowField(const Metric& g) : tape(roots(g)) {}
  static std::vector<Expr> roots(const Metric& g) {
    IndexGeometry ig(g);
    std::vector<Expr> r{ig.ginv(0, 0), ig.ginv(0, 1), ig.ginv(1, 1)};
    for (int i = 0; i < 3; ++i) r.push_back(dx(r[i]));
    for (int i = 0; i < 3; ++i) r.push_back(dy(r[i]));
    return r;
  }
  // state (x, y, px, py)
  void rhs(const long double s[4], long double out[4]) const {
    tape.eval(s[0], s[1], v);
    long double px = s[2], py = s[3];
    out[0] = v[0] * px + v[1] * py;
    out[1] = v[1] * px + v[2] * py;
    out[2] = -(v[3] * px * px + 2 * v[4] * px * py + v[5] * py * py) / 2;
    out[3] = -(v[6] * px * px + 2 * v[7] * px * py + v[8] * py * py) / 2;
  }
  Tape tape;
  mutable std::vector<long double> v;
};

long double hamiltonian(const Tape& t, const GeodesicSample& s) {
  std::vector<long double> v;
  t.eval(s.x, s.y, v);
  return (v[0] * s.px * s.px + 2 * v[1] * s.px * s.py + v[2] * s.py * s.py) / 2;
}

long double cubic(const Tape& t, const GeodesicSample& s) {
  std::vector<long double> v;
  t.eval(s.x, s.y, v);
  long double px = s.px, py = s.py;
  return v[0] * px * px * px + 3 * v[1] * px * px * py + 3 * v[2] * px * py * py + v[3] * py * py * py;
}

Tape inverse_tape(const Metric& g) {
  IndexGeometry ig(g);
  return Tape(std::vector<Expr>{ig.ginv(0, 0), ig.ginv(0, 1), ig.ginv(1, 1)});
}

}  // namespace

GeodesicTrajectory integrate_geodesic(const Metric& g, const PhasePoint& start, int steps, double dt) {
  if (!(dt > 0)) throw std::invalid_argument("dt must be positive");
  FlowField f(g);
  GeodesicTrajectory tr;
  tr.dt = dt;
  long double s[4] = {start.x, start.y, start.px, start.py};
  long double h = dt;
  tr.samples.push_back({0, start.x, start.y, start.px, start.py});
  try {
    for (int n = 1; n <= steps; ++n) {
      long double k1[4], k2[4], k3[4], k4[4], tmp[4];
      f.rhs(s, k1);
      for (int i = 0; i < 4; ++i) tmp[i] = s[i] + h / 2 * k1[i];
      f.rhs(tmp, k2);
      for (int i = 0; i < 4; ++i) tmp[i] = s[i] + h / 2 * k2[i];
      f.rhs(tmp, k3);
      for (int i = 0; i < 4; ++i) tmp[i] = s[i] + h * k3[i];
      f.rhs(tmp, k4);
      for (int i = 0; i < 4; ++i) s[i] += h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
      tr.samples.push_back({n * dt, static_cast<double>(s[0]), static_cast<double>(s[1]), static_cast<double>(s[2]),
                            static_cast<double>(s[3])});
    }
  } catch (const EvalDomainError& e) {
    tr.error = e.what();
  }
  return tr;
}

DriftReport conservation_report(const GeodesicTrajectory& traj, const Metric& g, const std::optional<SymTensor3>& F) {
  DriftReport r;
  r.samples = traj.samples.size();
  if (traj.samples.empty()) return r;
  Tape gt = inverse_tape(g);
  std::optional<Tape> ft;
  if (F) ft.emplace(std::vector<Expr>(F->c.begin(), F->c.end()));
  long double h0 = hamiltonian(gt, traj.samples[0]);
  long double f0 = ft ? cubic(*ft, traj.samples[0]) : 0;
  long double dh = 0, df = 0;
  for (const auto& s : traj.samples) {
    dh = std::max(dh, std::fabs(hamiltonian(gt, s) - h0));
    if (ft) df = std::max(df, std::fabs(cubic(*ft, s) - f0));
  }
  r.h0 = static_cast<double>(h0);
  r.max_dH = static_cast<double>(dh);
  if (ft) {
    r.f0 = static_cast<double>(f0);
    r.max_dF = static_cast<double>(df);
  }
  return r;
}

void write_csv(std::ostream& os, const GeodesicTrajectory& traj, const Metric& g, const std::optional<SymTensor3>& F) {
  Tape gt = inverse_tape(g);
  std::optional<Tape> ft;
  if (F) ft.emplace(std::vector<Expr>(F->c.begin(), F->c.end()));
  os << "t,x,y,px,py,H,F\n" << std::setprecision(17);
  for (const auto& s : traj.samples) {
    os << s.t << ',' << s.x << ',' << s.y << ',' << s.px << ',' << s.py << ',' << static_cast<double>(hamiltonian(gt, s))
       << ',';
    if (ft) os << static_cast<double>(cubic(*ft, s));
    os << '\n';
  }
}

}  // namespace cubint

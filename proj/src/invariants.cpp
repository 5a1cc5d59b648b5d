#include "cubint/invariants.hpp"

#include <functional>

#include "cubint/tensorcoords.hpp"

namespace cubint {

// ---- Codifferential ------------------------------------------------------------

Codifferential Codifferential::complex(CExpr a) {
  Codifferential c;
  c.kind = IsothermalComplex;
  c.a = std::move(a);
  return c;
}

Codifferential Codifferential::real(SymTensor3 ahat) {
  Codifferential c;
  c.kind = GeneralReal;
  c.ahat = std::move(ahat);
  return c;
}

Codifferential Codifferential::null_pair(Expr a1, Expr a2) {
  Codifferential c;
  c.kind = NullPair;
  c.a1 = std::move(a1);
  c.a2 = std::move(a2);
  return c;
}

bool Codifferential::is_zero() const {
  switch (kind) {
    case IsothermalComplex: return a.is_zero();
    case GeneralReal: return ahat.is_zero();
    default: return a1.is_zero() && a2.is_zero();
  }
}

std::string to_string(Codifferential::Kind k) {
  switch (k) {
    case Codifferential::IsothermalComplex: return "isothermal-complex";
    case Codifferential::GeneralReal: return "general-real";
    default: return "null-pair";
  }
}

namespace {

template <class C>
SymTensor3 real_tensor(const typename C::V& coeff) {
  SymTensor3 t;
  for (int n = 0; n < 4; ++n) {
    int i = n > 2, j = n > 1, k = n > 0;
    t.c[n] = tidy(C::re(coeff * C::ez(i) * C::ez(j) * C::ez(k)));
  }
  return t;
}

void require_kinds(const Metric& g, const Codifferential& A) {
  bool null_m = g.kind == Metric::Null, null_a = A.kind == Codifferential::NullPair;
  if (null_m != null_a) throw ChartMismatch("null codifferential requires a null metric and vice versa");
  if (A.kind == Codifferential::IsothermalComplex && g.kind != Metric::Isothermal)
    throw ChartMismatch("a complex codifferential requires an isothermal metric");
}

ZeroVerdict all_zero(const std::vector<Expr>& es, const Box& box, const ZeroTestConfig& cfg) {
  ZeroVerdict res;
  res.kind = ZeroVerdict::Zero;
  res.symbolic = true;
  for (const auto& e : es) {
    ZeroVerdict v = is_zero(e, box, cfg);
    if (v.nonzero()) return v;
    if (v.unknown() && !res.unknown()) res = v;
    if (v.zero()) res.symbolic = res.symbolic && v.symbolic;
  }
  return res;
}

CExpr complex_coeff(const SymTensor3& ahat) { return CExpr(8 * ahat.c[0], 8 * ahat.c[1]); }

}  // namespace

SymTensor3 real_part(const Codifferential& A, const Metric& g) {
  require_kinds(g, A);
  switch (A.kind) {
    case Codifferential::IsothermalComplex: return real_tensor<ComplexChart>(A.a);
    case Codifferential::NullPair: return real_tensor<NullChart>(PExpr(A.a1, A.a2));
    default: return A.ahat;
  }
}

ZeroVerdict check_codifferential(const Metric& g, const Codifferential& A, const Box& box, const ZeroTestConfig& cfg) {
  require_kinds(g, A);
  switch (A.kind) {
    case Codifferential::IsothermalComplex: return is_holomorphic(A.a, box, cfg);
    case Codifferential::NullPair: return all_zero({dy(A.a1), dx(A.a2)}, box, cfg);
    default: {
      auto [ah, bh] = split_AB(A.ahat, g);
      std::vector<Expr> es(bh.c.begin(), bh.c.end());
      SymTensor4 r = holo_residual(A.ahat, g);
      es.insert(es.end(), r.c.begin(), r.c.end());
      return all_zero(es, box, cfg);
    }
  }
}

void require_holomorphic(const Metric& g, const Codifferential& A, const Box& box, const ZeroTestConfig& cfg) {
  ZeroVerdict v = check_codifferential(g, A, box, cfg);
  if (!v.zero()) {
    std::string what = v.nonzero() ? "codifferential is not holomorphic: residual " + std::to_string(v.value) + " at (" +
                                         std::to_string(v.wx) + ", " + std::to_string(v.wy) + ")"
                                   : "holomorphicity undetermined: " + v.reason;
    throw HolomorphicityViolated(what, v);
  }
}

// ---- backends -------------------------------------------------------------------

class Backend {
 public:
  virtual ~Backend() = default;
  virtual Expr curvature() const = 0;
  virtual Expr inner(const Expr& f, const Expr& h) const = 0;
  virtual Expr bracket(const Expr& f, const Expr& h) const = 0;
  virtual Expr laplacian(const Expr& f) const = 0;
  // 4 Re(A_{;zzz})
  virtual Expr d0() const = 0;
  // 4 Re(A_{;z} (f_{;z})^2)
  virtual Expr aterm(const Expr& f) const = 0;
  // 2 Re((A_{;z} f_{;z})_{;z})
  virtual Expr sterm(const Expr& f) const = 0;
};

namespace {

CExpr tidyv(const CExpr& v) { return {tidy(v.re), tidy(v.im)}; }
PExpr tidyv(const PExpr& v) { return {tidy(v.here), tidy(v.mirror)}; }

template <class C>
class ChartBackend : public Backend {
 public:
  ChartBackend(const Metric& g, const typename C::V& a) : cc_(g) {
    a_ = {a, -3, 0};
    az_ = cc_.nabla10(a_);
    az_.coeff = tidyv(az_.coeff);
  }
  Expr curvature() const override { return cc_.curvature(); }
  Expr inner(const Expr& f, const Expr& h) const override { return cc_.inner(f, h); }
  Expr bracket(const Expr& f, const Expr& h) const override { return cc_.bracket(f, h); }
  Expr laplacian(const Expr& f) const override { return cc_.laplacian(f); }
  Expr d0() const override {
    auto s = cc_.nabla10(cc_.nabla10(az_));
    return 4 * C::re(s.coeff);
  }
  Expr aterm(const Expr& f) const override {
    auto fz = cc_.fz(f);
    return 4 * C::re(az_.coeff * fz * fz);
  }
  Expr sterm(const Expr& f) const override {
    Section<C> s{az_.coeff * cc_.fz(f), -1, 0};
    return 2 * C::re(cc_.nabla10(s).coeff);
  }

 private:
  ChartCalculus<C> cc_;
  Section<C> a_, az_;
};

class IndexBackend : public Backend {
 public:
  IndexBackend(const Metric& g, const SymTensor3& ahat) : ig_(g), ahat_(ahat) {
    V_ = ig_.div3(ahat_);
    for (auto& row : V_)
      for (auto& e : row) e = tidy(e);
  }
  Expr curvature() const override { return ig_.curvature(); }
  Expr inner(const Expr& f, const Expr& h) const override { return ig_.inner(f, h); }
  Expr bracket(const Expr& f, const Expr& h) const override { return ig_.bracket(f, h); }
  Expr laplacian(const Expr& f) const override { return ig_.laplacian(f); }
  Expr d0() const override { return 4 * ig_.div1(ig_.div2(V_)); }
  Expr aterm(const Expr& f) const override {
    std::vector<Expr> t;
    Vec2 df{dx(f), dy(f)};
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) t.push_back(V_[j][k] * df[j] * df[k]);
    return 4 * add(t);
  }
  Expr sterm(const Expr& f) const override {
    Vec2 w;
    for (int j = 0; j < 2; ++j) w[j] = V_[j][0] * dx(f) + V_[j][1] * dy(f);
    return 2 * ig_.div1(w);
  }

 private:
  IndexGeometry ig_;
  SymTensor3 ahat_;
  Mat2 V_;
};

struct NameInfo {
  const char* name;
  const char* formula;
  int order;
};

const std::vector<NameInfo>& table() {
  static const std::vector<NameInfo> t{
      {"phi0", "R = 1/2 R^i_{jik} g^{jk}", 2},
      {"phi1", "1/2 |grad phi0|^2", 3},
      {"phi2", "{phi0, phi1}", 4},
      {"phi3", "1/2 |grad phi1|^2", 4},
      {"D0", "4 Re(A_{;zzz}) = 4 Ahat^{ijk}_{;ijk}", 3},
      {"D1", "<grad D0, grad phi0> - 4 Re(A_{;z} (phi0_{;z})^2)", 4},
      {"D2", "{D0, phi1} - {D1, phi0}", 5},
      {"D3", "<grad D1, grad phi1> - 4 Re(A_{;z} (phi1_{;z})^2)", 5},
      {"G0", "{phi1,phi2} D3 + {phi2,phi3} D1 + {phi3,phi1} D2", 5},
      {"G1", "{phi0,phi2} D3 + {phi2,phi3} D0 + {phi3,phi0} D2", 5},
      {"G2", "{phi0,phi1} D3 + {phi1,phi3} D0 + {phi3,phi0} D1", 5},
      {"G3", "{phi0,phi1} D2 + {phi1,phi2} D0 + {phi2,phi0} D1", 5},
      {"G2det", "1/(s mu) det[dphi0, D0; dphi1, D1; dphi3, D3]", 5},
      {"G3det", "1/(s mu) det[dphi0, D0; dphi1, D1; dphi2, D2]", 5},
      {"K1", "(phi0_{;x} D1 - D0 phi1_{;x}) / phi2", 4},
      {"K2", "(phi0_{;y} D1 - D0 phi1_{;y}) / phi2", 4},
      {"phi1*", "Laplacian(phi0)", 4},
      {"phi2*", "{phi0, phi1*}", 5},
      {"phi3*", "1/2 |grad phi1*|^2", 5},
      {"D1*", "Laplacian(D0) - 2 Re((A_{;z} R_{;z})_{;z})", 5},
      {"D2*", "{D0, phi1*} - {D1*, phi0}", 6},
      {"D3*", "<grad D1*, grad phi1*> - 4 Re(A_{;z} (phi1*_{;z})^2)", 6},
      {"G2*", "{phi0,phi1*} D3* + {phi1*,phi3*} D0 + {phi3*,phi0} D1*", 6},
      {"G3*", "{phi0,phi1*} D2* + {phi1*,phi2*} D0 + {phi2*,phi0} D1*", 6},
      {"K1*", "(phi0_{;x} D1* - D0 phi1*_{;x}) / phi2*", 5},
      {"K2*", "(phi0_{;y} D1* - D0 phi1*_{;y}) / phi2*", 5},
      {"Dx", "phi0_{;x} D1 - phi1_{;x} D0", 4},
      {"Dy", "phi0_{;y} D1 - phi1_{;y} D0", 4},
      {"Dx*", "phi0_{;x} D1* - phi1*_{;x} D0", 5},
      {"Dy*", "phi0_{;y} D1* - phi1*_{;y} D0", 5},
  };
  return t;
}

const NameInfo& info(const std::string& name) {
  for (const auto& n : table())
    if (name == n.name) return n;
  throw std::invalid_argument("unknown invariant '" + name + "'");
}

Expr jacobi(const std::function<Expr(const Expr&, const Expr&)>& br, const Expr& a, const Expr& b, const Expr& c,
            const Expr& da, const Expr& db, const Expr& dc) {
  // {a,b} dc + {b,c} da + {c,a} db
  return br(a, b) * dc + br(b, c) * da + br(c, a) * db;
}

Expr det_form(const Metric& g, const Expr& f0, const Expr& f1, const Expr& f2, const Expr& d0, const Expr& d1,
              const Expr& d2) {
  Expr det = dx(f0) * (dy(f1) * d2 - d1 * dy(f2)) - dy(f0) * (dx(f1) * d2 - d1 * dx(f2)) +
             d0 * (dx(f1) * dy(f2) - dy(f1) * dx(f2));
  return det / (g.sign() * g.mu());
}

}  // namespace

// ---- Invariants -------------------------------------------------------------------

Invariants::Invariants(const Metric& g, const Codifferential& A, Route route, int order_cap)
    : g_(g), A_(A), cap_(order_cap) {
  require_kinds(g, A);
  if (route == Route::Chart && g.kind == Metric::General)
    throw ChartMismatch("no isothermal chart for a general metric");
  chart_ = route == Route::Chart || (route == Route::Auto && g.kind != Metric::General);
  if (!chart_) {
    be_ = std::make_unique<IndexBackend>(g, real_part(A, g));
  } else if (g.kind == Metric::Null) {
    be_ = std::make_unique<ChartBackend<NullChart>>(g, PExpr(A.a1, A.a2));
  } else {
    CExpr a = A.kind == Codifferential::GeneralReal ? complex_coeff(A.ahat) : A.a;
    be_ = std::make_unique<ChartBackend<ComplexChart>>(g, a);
  }
}

Invariants::~Invariants() = default;

const std::vector<std::string>& Invariants::names() {
  static const std::vector<std::string> n = [] {
    std::vector<std::string> r;
    for (const auto& i : table()) r.push_back(i.name);
    return r;
  }();
  return n;
}

std::string Invariants::formula(const std::string& name) { return info(name).formula; }
int Invariants::order(const std::string& name) const { return info(name).order; }

Expr Invariants::bracket(const Expr& f, const Expr& h) const { return be_->bracket(f, h); }
Expr Invariants::inner(const Expr& f, const Expr& h) const { return be_->inner(f, h); }
Expr Invariants::laplacian(const Expr& f) const { return be_->laplacian(f); }

Expr Invariants::get(const std::string& name) {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  auto it = memo_.find(name);
  if (it != memo_.end()) return it->second;
  const NameInfo& ni = info(name);
  if (ni.order > cap_)
    throw OrderCapExceeded(name + " needs derivatives of order " + std::to_string(ni.order) + " > cap " +
                           std::to_string(cap_));
  Expr v = compute(name);
  memo_.emplace(name, v);
  return v;
}

Expr Invariants::compute(const std::string& n) {
  auto br = [this](const Expr& a, const Expr& b) { return be_->bracket(a, b); };
  auto D_next = [this](const Expr& d, const Expr& phi) { return tidy(be_->inner(d, phi) - be_->aterm(phi)); };
  const bool zeroA = A_.is_zero();
  if (n == "phi0") return be_->curvature();
  if (n == "phi1") return tidy(be_->inner(get("phi0"), get("phi0")) / 2);
  if (n == "phi2") return tidy(br(get("phi0"), get("phi1")));
  if (n == "phi3") return tidy(be_->inner(get("phi1"), get("phi1")) / 2);
  if (n == "phi1*") return tidy(be_->laplacian(get("phi0")));
  if (n == "phi2*") return tidy(br(get("phi0"), get("phi1*")));
  if (n == "phi3*") return tidy(be_->inner(get("phi1*"), get("phi1*")) / 2);
  if (zeroA && (n[0] == 'D' || n[0] == 'G' || n[0] == 'K')) return 0;
  if (n == "D0") return tidy(be_->d0());
  if (n == "D1") return D_next(get("D0"), get("phi0"));
  if (n == "D2") return tidy(br(get("D0"), get("phi1")) - br(get("D1"), get("phi0")));
  if (n == "D3") return D_next(get("D1"), get("phi1"));
  if (n == "D1*") return tidy(be_->laplacian(get("D0")) - be_->sterm(get("phi0")));
  if (n == "D2*") return tidy(br(get("D0"), get("phi1*")) - br(get("D1*"), get("phi0")));
  if (n == "D3*") return D_next(get("D1*"), get("phi1*"));
  if (n == "G0") return jacobi(br, get("phi1"), get("phi2"), get("phi3"), get("D1"), get("D2"), get("D3"));
  if (n == "G1") return jacobi(br, get("phi0"), get("phi2"), get("phi3"), get("D0"), get("D2"), get("D3"));
  if (n == "G2") return jacobi(br, get("phi0"), get("phi1"), get("phi3"), get("D0"), get("D1"), get("D3"));
  if (n == "G3") return jacobi(br, get("phi0"), get("phi1"), get("phi2"), get("D0"), get("D1"), get("D2"));
  if (n == "G2*") return jacobi(br, get("phi0"), get("phi1*"), get("phi3*"), get("D0"), get("D1*"), get("D3*"));
  if (n == "G3*") return jacobi(br, get("phi0"), get("phi1*"), get("phi2*"), get("D0"), get("D1*"), get("D2*"));
  if (n == "G2det") return det_form(g_, get("phi0"), get("phi1"), get("phi3"), get("D0"), get("D1"), get("D3"));
  if (n == "G3det") return det_form(g_, get("phi0"), get("phi1"), get("phi2"), get("D0"), get("D1"), get("D2"));
  auto dform = [this](const std::string& p1, const std::string& d1, int i) {
    auto d = [i](const Expr& e) { return i == 0 ? dx(e) : dy(e); };
    return d(get("phi0")) * get(d1) - d(get(p1)) * get("D0");
  };
  if (n == "Dx") return dform("phi1", "D1", 0);
  if (n == "Dy") return dform("phi1", "D1", 1);
  if (n == "Dx*") return dform("phi1*", "D1*", 0);
  if (n == "Dy*") return dform("phi1*", "D1*", 1);
  if (n == "K1") return get("Dx") / get("phi2");
  if (n == "K2") return get("Dy") / get("phi2");
  if (n == "K1*") return get("Dx*") / get("phi2*");
  if (n == "K2*") return get("Dy*") / get("phi2*");
  throw std::invalid_argument("unknown invariant '" + n + "'");
}

SymTensor3 Invariants::ahat() const { return real_part(A_, g_); }

SymTensor3 Invariants::bhat(const Expr& k1, const Expr& k2) const {
  IndexGeometry ig(g_);
  Vec2 K{k1, k2}, w;
  for (int k = 0; k < 2; ++k) {
    std::vector<Expr> t;
    for (int l = 0; l < 2; ++l)
      for (int m = 0; m < 2; ++m) {
        Expr c = ig.ginv(k, l) * ig.J(m, l);
        if (!c.is_zero()) t.push_back(c * K[m]);
      }
    w[k] = add(t);
  }
  SymTensor3 B;
  for (int n = 0; n < 4; ++n) {
    int i = n > 2, j = n > 1, k = n > 0;
    B.c[n] = (ig.ginv(i, j) * w[k] + ig.ginv(j, k) * w[i] + ig.ginv(i, k) * w[j]) / 24;
  }
  return B;
}

const InvariantEntry* InvariantReport::find(const std::string& name) const {
  for (const auto& e : entries)
    if (e.name == name) return &e;
  return nullptr;
}

InvariantReport Invariants::report(bool with_kay, bool with_kay_star) {
  InvariantReport r;
  for (int i = 0; i < 4; ++i) {
    r.phi[i] = get("phi" + std::to_string(i));
    r.dee[i] = get("D" + std::to_string(i));
    r.gee[i] = get("G" + std::to_string(i));
  }
  if (with_kay) {
    r.kay = {get("K1"), get("K2")};
    r.kay_defined = true;
  }
  r.star = {get("phi1*"), get("phi2*"), get("phi3*"), get("D1*"), get("D2*"), get("D3*"), get("G2*"), get("G3*"),
            Expr(0), Expr(0), false};
  if (with_kay_star) {
    r.star.k1 = get("K1*");
    r.star.k2 = get("K2*");
    r.star.kay_defined = true;
  }
  r.dforms = {get("Dx"), get("Dy"), get("Dx*"), get("Dy*")};
  for (const auto& ni : table()) {
    std::string n = ni.name;
    if ((n == "K1" || n == "K2") && !with_kay) continue;
    if ((n == "K1*" || n == "K2*") && !with_kay_star) continue;
    if (n == "G2det" || n == "G3det") continue;
    r.entries.push_back({n, ni.formula, get(n), ni.order});
  }
  return r;
}

// ---- module-level operations ----------------------------------------------------------

std::array<Expr, 4> phi_family(const Metric& g) {
  Codifferential A = g.kind == Metric::Null ? Codifferential::null_pair(0, 0)
                     : g.kind == Metric::General ? Codifferential::real({})
                                                 : Codifferential::complex(CExpr(0));
  Invariants inv(g, A);
  return {inv.get("phi0"), inv.get("phi1"), inv.get("phi2"), inv.get("phi3")};
}

std::array<Expr, 4> dee_family(const Metric& g, const Codifferential& A, const Box& box, const ZeroTestConfig& cfg) {
  require_holomorphic(g, A, box, cfg);
  Invariants inv(g, A);
  return {inv.get("D0"), inv.get("D1"), inv.get("D2"), inv.get("D3")};
}

std::array<Expr, 4> gee_family(const std::array<Expr, 4>& phi, const std::array<Expr, 4>& dee, const Metric& g) {
  auto br = [&g](const Expr& a, const Expr& b) { return poisson_g(a, b, g); };
  return {jacobi(br, phi[1], phi[2], phi[3], dee[1], dee[2], dee[3]),
          jacobi(br, phi[0], phi[2], phi[3], dee[0], dee[2], dee[3]),
          jacobi(br, phi[0], phi[1], phi[3], dee[0], dee[1], dee[3]),
          jacobi(br, phi[0], phi[1], phi[2], dee[0], dee[1], dee[2])};
}

std::array<Expr, 2> gee_det(const std::array<Expr, 4>& phi, const std::array<Expr, 4>& dee, const Metric& g) {
  return {det_form(g, phi[0], phi[1], phi[3], dee[0], dee[1], dee[3]),
          det_form(g, phi[0], phi[1], phi[2], dee[0], dee[1], dee[2])};
}

std::array<Expr, 2> kay_covector(const std::array<Expr, 4>& phi, const std::array<Expr, 4>& dee, const Box& box,
                                 const ZeroTestConfig& cfg) {
  ZeroVerdict v = is_zero(phi[2], box, cfg);
  if (!v.nonzero()) throw DegenerateBracket("phi2 is not certified non-vanishing on the sampled domain");
  return {(dx(phi[0]) * dee[1] - dee[0] * dx(phi[1])) / phi[2], (dy(phi[0]) * dee[1] - dee[0] * dy(phi[1])) / phi[2]};
}

SymTensor3 f_tensor(const Metric& g, const Codifferential& A, const std::array<Expr, 2>& kay) {
  Invariants inv(g, A);
  return inv.f_tensor(kay[0], kay[1]);
}

InvariantReport::Star star_family(const Metric& g, const Codifferential& A, const Box& box, const ZeroTestConfig& cfg) {
  require_holomorphic(g, A, box, cfg);
  Invariants inv(g, A);
  InvariantReport::Star s{inv.get("phi1*"), inv.get("phi2*"), inv.get("phi3*"), inv.get("D1*"), inv.get("D2*"),
                          inv.get("D3*"),   inv.get("G2*"),   inv.get("G3*"),   Expr(0),        Expr(0),
                          false};
  if (is_zero(s.phi2, box, cfg).nonzero()) {
    s.k1 = inv.get("K1*");
    s.k2 = inv.get("K2*");
    s.kay_defined = true;
  }
  return s;
}

InvariantReport::DForms dforms(const Metric& g, const Codifferential& A) {
  Invariants inv(g, A);
  return {inv.get("Dx"), inv.get("Dy"), inv.get("Dx*"), inv.get("Dy*")};
}

}  // namespace cubint

#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "cubint/geometry.hpp"

namespace cubint {

struct HolomorphicityViolated : std::runtime_error {
  ZeroVerdict verdict;
  HolomorphicityViolated(const std::string& m, ZeroVerdict v) : std::runtime_error(m), verdict(std::move(v)) {}
};
struct DegenerateBracket : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct OrderCapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// IsothermalComplex: A = a (d/dz)^3.  GeneralReal: the real part Ahat directly.
// NullPair: A1 = a1 (d/dx)^3, A2 = a2 (d/dy)^3.
struct Codifferential {
  enum Kind { IsothermalComplex, GeneralReal, NullPair } kind = IsothermalComplex;
  CExpr a;
  SymTensor3 ahat;
  Expr a1{0}, a2{0};

  static Codifferential complex(CExpr a);
  static Codifferential real(SymTensor3 ahat);
  static Codifferential null_pair(Expr a1, Expr a2);
  bool is_zero() const;
};

std::string to_string(Codifferential::Kind k);

// Ahat = Re A in the chart of g
SymTensor3 real_part(const Codifferential& A, const Metric& g);

// Cauchy-Riemann (resp. quasi-holomorphicity, resp. tensor residual) test
ZeroVerdict check_codifferential(const Metric& g, const Codifferential& A, const Box& box,
                                 const ZeroTestConfig& cfg = {});
void require_holomorphic(const Metric& g, const Codifferential& A, const Box& box, const ZeroTestConfig& cfg = {});

struct InvariantEntry {
  std::string name;
  std::string formula;
  Expr value;
  int order = 0;  // highest derivative of the metric / codifferential involved
};

struct InvariantReport {
  std::array<Expr, 4> phi, dee, gee;
  std::array<Expr, 2> kay;
  bool kay_defined = false;
  struct Star {
    Expr phi1, phi2, phi3, d1, d2, d3, g2, g3, k1, k2;
    bool kay_defined = false;
  } star;
  struct DForms {
    Expr dx, dy, dx_star, dy_star;
  } dforms;
  std::vector<InvariantEntry> entries;  // all of the above, tagged, in report order
  const InvariantEntry* find(const std::string& name) const;
};

class Backend;

// Lazily computed, memoized invariants of one (metric, codifferential) pair.
class Invariants {
 public:
  Invariants(const Metric& g, const Codifferential& A, Route route = Route::Auto, int order_cap = 8);
  ~Invariants();
  Invariants(const Invariants&) = delete;
  Invariants& operator=(const Invariants&) = delete;

  const Metric& metric() const { return g_; }
  const Codifferential& codifferential() const { return A_; }
  bool chart_route() const { return chart_; }

  // names: phi0..phi3, D0..D3, G0..G3, G2det, G3det, K1, K2,
  // phi1*, phi2*, phi3*, D1*, D2*, D3*, G2*, G3*, K1*, K2*, Dx, Dy, Dx*, Dy*
  Expr get(const std::string& name);
  int order(const std::string& name) const;
  static const std::vector<std::string>& names();
  static std::string formula(const std::string& name);

  Expr bracket(const Expr& f, const Expr& h) const;
  Expr inner(const Expr& f, const Expr& h) const;
  Expr laplacian(const Expr& f) const;

  SymTensor3 ahat() const;
  // Bhat^{ijk} = 1/8 g^{(ij} g^{k)l} J^m_l K_m
  SymTensor3 bhat(const Expr& k1, const Expr& k2) const;
  SymTensor3 f_tensor(const Expr& k1, const Expr& k2) const { return simplify(ahat() + bhat(k1, k2)); }

  // kay and kay* are included only when requested
  InvariantReport report(bool with_kay = false, bool with_kay_star = false);

 private:
  Expr compute(const std::string& name);
  Metric g_;
  Codifferential A_;
  bool chart_ = false;
  int cap_;
  std::unique_ptr<Backend> be_;
  std::recursive_mutex mu_;
  std::map<std::string, Expr> memo_;
};

// Module-level operations.
std::array<Expr, 4> phi_family(const Metric& g);
std::array<Expr, 4> dee_family(const Metric& g, const Codifferential& A, const Box& box, const ZeroTestConfig& cfg = {});
std::array<Expr, 4> gee_family(const std::array<Expr, 4>& phi, const std::array<Expr, 4>& dee, const Metric& g);
// determinant forms of G2, G3
std::array<Expr, 2> gee_det(const std::array<Expr, 4>& phi, const std::array<Expr, 4>& dee, const Metric& g);
// throws DegenerateBracket when phi2 is not certified nonzero
std::array<Expr, 2> kay_covector(const std::array<Expr, 4>& phi, const std::array<Expr, 4>& dee, const Box& box,
                                 const ZeroTestConfig& cfg = {});
SymTensor3 f_tensor(const Metric& g, const Codifferential& A, const std::array<Expr, 2>& kay);
InvariantReport::Star star_family(const Metric& g, const Codifferential& A, const Box& box, const ZeroTestConfig& cfg = {});
InvariantReport::DForms dforms(const Metric& g, const Codifferential& A);

}  // namespace cubint

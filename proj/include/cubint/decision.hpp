#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cubint/invariants.hpp"
#include "cubint/verify.hpp"

namespace cubint {

struct TraceStep {
  std::string box;       // stable identifier, e.g. "phi2_zero"
  std::string question;  // human readable
  std::optional<ZeroVerdict> verdict;
  std::string answer;  // "yes", "no", "unknown" or "" for terminal boxes
};

struct Witness {
  std::string condition;
  double x = 0, y = 0, value = 0, threshold = 0;
};

struct Verdict {
  enum Status { CompatibleWithFormula, CompatibleConstCurvature, CompatibleKilling, Incompatible, Undetermined };
  // which covector built F: "K" (phi2 nonvanishing) or "K*" (phi2* nonvanishing)
  enum Via { None, Kay, KayStar };

  Status status = Undetermined;
  Via via = None;
  std::optional<SymTensor3> F;
  std::optional<Certificate> certificate;
  std::string failed;  // Incompatible: the condition that failed
  std::optional<Witness> witness;
  std::string note;    // compatible branches without construction
  std::string reason;  // Undetermined, or the obstruction that was hit
  std::vector<TraceStep> trace;

  bool compatible() const {
    return status == CompatibleWithFormula || status == CompatibleConstCurvature || status == CompatibleKilling;
  }
};

std::string to_string(Verdict::Status s);
std::string to_string(Verdict::Via v);

struct DecideOptions {
  ZeroTestConfig zero;
  Route route = Route::Auto;
  int order_cap = 8;
};

// Runs the decision flowchart. Null metrics are forwarded to decide_pseudo.
// Throws HolomorphicityViolated when A fails its holomorphicity test.
Verdict decide(const Metric& g, const Codifferential& A, const Box& box, const DecideOptions& opt = {});

// ---- pseudo-Riemannian (null coordinates) ----

struct QuasiHolo {
  ZeroVerdict a1, a2;
  bool ok() const { return a1.zero() && a2.zero(); }
};
QuasiHolo quasi_holo_check(const Codifferential& A, const Metric& g, const Box& box, const ZeroTestConfig& cfg = {});

// g = dx dy / (y + f(x))^2, i.e. Null{lambda} with g(d/dx, d/dy) = -lambda
Metric normal_form_metric(const Expr& f);

// Same flowchart with null-coordinate formulas; before the phi2 box, |grad R|^2 == 0 with R
// nonconstant is reported as Incompatible.
Verdict decide_pseudo(const Metric& g, const Codifferential& A, const Box& box, const DecideOptions& opt = {});

}  // namespace cubint

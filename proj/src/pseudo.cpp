#include "cubint/decision.hpp"

#include "flowchart.hpp"

namespace cubint {

QuasiHolo quasi_holo_check(const Codifferential& A, const Metric& g, const Box& box, const ZeroTestConfig& cfg) {
  if (A.kind != Codifferential::NullPair || g.kind != Metric::Null)
    throw ChartMismatch("quasi-holomorphicity needs a null metric and a null codifferential");
  return {is_zero(dy(A.a1), box, cfg), is_zero(dx(A.a2), box, cfg)};
}

Metric normal_form_metric(const Expr& f) {
  if (!dy(f).is_zero()) throw std::invalid_argument("normal form needs f = f(x)");
  return Metric::null(1 / pow(Expr::y() + f, 2));
}

Verdict decide_pseudo(const Metric& g, const Codifferential& A, const Box& box, const DecideOptions& opt) {
  QuasiHolo q = quasi_holo_check(A, g, box, opt.zero);
  if (!q.ok()) {
    const ZeroVerdict& bad = !q.a1.zero() ? q.a1 : q.a2;
    std::string which = !q.a1.zero() ? "A1_y" : "A2_x";
    throw HolomorphicityViolated(
        bad.nonzero() ? "codifferential is not quasi-holomorphic: " + which + " = " + std::to_string(bad.value) +
                            " at (" + std::to_string(bad.wx) + ", " + std::to_string(bad.wy) + ")"
                      : "quasi-holomorphicity undetermined: " + bad.reason,
        bad);
  }
  return detail::run_flowchart(g, A, box, opt, true);
}

}  // namespace cubint

#include "cubint/decision.hpp"

#include "flowchart.hpp"

namespace cubint {

std::string to_string(Verdict::Status s) {
  switch (s) {
    case Verdict::CompatibleWithFormula: return "CompatibleWithFormula";
    case Verdict::CompatibleConstCurvature: return "CompatibleConstCurvature";
    case Verdict::CompatibleKilling: return "CompatibleKilling";
    case Verdict::Incompatible: return "Incompatible";
    default: return "Undetermined";
  }
}

std::string to_string(Verdict::Via v) {
  switch (v) {
    case Verdict::Kay: return "K";
    case Verdict::KayStar: return "K*";
    default: return "none";
  }
}

namespace detail {
namespace {

const char* kConstNote =
    "constant curvature: cubic integrals form a 10-dimensional space; those with codifferential A form a "
    "3-parameter family; construction not produced";
const char* kKillingNote = "metric admits a Killing vector field and A is compatible; construction not produced";

struct Tested {
  ZeroVerdict verdict;
  std::string name;  // expression that decided the verdict
};

class Flow {
 public:
  Flow(const Metric& g, const Codifferential& A, const Box& box, const DecideOptions& opt)
      : g_(g), box_(box), opt_(opt), inv_(g, A, opt.route, opt.order_cap) {}

  Verdict run(bool null_signature) {
    v_.trace.push_back({"input", "Input g and A", std::nullopt, ""});

    Expr R = inv_.get("phi0");
    Tested rx = test({{"phi0_x", dx(R)}}), ry = test({{"phi0_y", dy(R)}});
    Tested c = combine({rx, ry});
    if (!step("phi0_constant", "Calculate R = phi0. Is it constant?", c)) return std::move(v_);
    if (c.verdict.zero()) {
      Tested d0 = test({{"D0", inv_.get("D0")}});
      if (!step("D0_zero", "Calculate D0. Is D0 == 0?", d0)) return std::move(v_);
      if (!d0.verdict.zero()) return incompatible(d0);
      v_.status = Verdict::CompatibleConstCurvature;
      v_.note = kConstNote;
      terminal("const_curvature", "Integrals are given by the constant curvature construction.");
      return std::move(v_);
    }

    if (null_signature) {
      Tested p1 = test({{"phi1", inv_.get("phi1")}});
      if (!step("phi1_zero", "Calculate phi1 = |grad R|^2 / 2. Is phi1 == 0?", p1)) return std::move(v_);
      if (p1.verdict.zero()) {
        v_.status = Verdict::Incompatible;
        v_.failed = "phi1";
        v_.reason = "|grad R|^2 vanishes identically while R is not constant; such metrics admit no cubic integrals";
        v_.witness = witness(c);
        terminal("no_integral", "For given g and A, F does not exist.");
        return std::move(v_);
      }
    }

    Tested p2 = test({{"phi2", inv_.get("phi2")}});
    if (!step("phi2_zero", "Calculate phi2. Is phi2 == 0?", p2)) return std::move(v_);
    if (!p2.verdict.zero()) {
      Tested gg = test({{"G2", inv_.get("G2")}, {"G3", inv_.get("G3")}});
      if (!step("G2_G3_zero", "Calculate G2, G3. Are G2 == 0 == G3?", gg)) return std::move(v_);
      if (!gg.verdict.zero()) return incompatible(gg);
      return with_formula(Verdict::Kay, inv_.get("K1"), inv_.get("K2"));
    }

    // only the D-form whose phi0 derivative is nonvanishing is informative
    Tested dsel;
    std::string sel;
    if (rx.verdict.nonzero() && ry.verdict.nonzero()) {
      Tested a = test({{"Dx", inv_.get("Dx")}}), b = test({{"Dy", inv_.get("Dy")}});
      sel = "x,y";
      if (a.verdict.kind != b.verdict.kind || a.verdict.unknown()) {
        dsel = a.verdict.unknown() ? a : b.verdict.unknown() ? b : a;
        dsel.verdict.kind = ZeroVerdict::Unknown;
        dsel.verdict.reason = "Dx and Dy verdicts disagree or are ambiguous";
      } else {
        dsel = a.verdict.nonzero() ? a : b;
      }
    } else if (rx.verdict.nonzero()) {
      sel = "x";
      dsel = test({{"Dx", inv_.get("Dx")}});
    } else if (ry.verdict.nonzero()) {
      sel = "y";
      dsel = test({{"Dy", inv_.get("Dy")}});
    } else {
      dsel = combine({rx, ry});
      dsel.verdict.kind = ZeroVerdict::Unknown;
      dsel.verdict.reason = "no derivative of R certified nonzero";
    }
    if (!step("D_zero", "Calculate D (selected: " + (sel.empty() ? std::string("none") : sel) + "). Is it == 0?", dsel))
      return std::move(v_);
    if (!dsel.verdict.zero()) return incompatible(dsel);

    Tested s2 = test({{"phi2*", inv_.get("phi2*")}});
    if (!step("phi2star_zero", "Calculate phi2*. Is phi2* == 0?", s2)) return std::move(v_);
    if (!s2.verdict.zero()) {
      Tested gs = test({{"G2*", inv_.get("G2*")}, {"G3*", inv_.get("G3*")}});
      if (!step("G2s_G3s_zero", "Calculate G2*, G3*. Are G2* == 0 == G3*?", gs)) return std::move(v_);
      if (!gs.verdict.zero()) return incompatible(gs);
      return with_formula(Verdict::KayStar, inv_.get("K1*"), inv_.get("K2*"));
    }

    v_.trace.push_back({"killing", "g admits a Killing vector field.", std::nullopt, ""});
    Tested ds = test({{"Dx*", inv_.get("Dx*")}, {"Dy*", inv_.get("Dy*")}});
    if (!step("Dstar_zero", "Calculate Dx*, Dy*. Are Dx* == 0 == Dy*?", ds)) return std::move(v_);
    if (!ds.verdict.zero()) return incompatible(ds);
    v_.status = Verdict::CompatibleKilling;
    v_.note = kKillingNote;
    terminal("killing_integral", "Integrals are given by the Killing construction.");
    return std::move(v_);
  }

 private:
  Tested test(const std::vector<std::pair<std::string, Expr>>& es) {
    std::vector<Tested> ts;
    for (const auto& [n, e] : es) ts.push_back({is_zero(e, box_, opt_.zero), n});
    return combine(ts);
  }

  // "all zero": decided NonZero by the first NonZero, Unknown if any is Unknown, else Zero
  static Tested combine(const std::vector<Tested>& ts) {
    for (const auto& t : ts)
      if (t.verdict.nonzero()) return t;
    for (const auto& t : ts)
      if (t.verdict.unknown()) return t;
    Tested r = ts.front();
    for (const auto& t : ts) r.verdict.symbolic = r.verdict.symbolic && t.verdict.symbolic;
    return r;
  }

  // records a question box; false when the run must stop as Undetermined
  bool step(const std::string& box, const std::string& q, const Tested& t) {
    const ZeroVerdict& z = t.verdict;
    v_.trace.push_back({box, q, z, z.zero() ? "yes" : z.nonzero() ? "no" : "unknown"});
    if (!z.unknown()) return true;
    v_.status = Verdict::Undetermined;
    v_.reason = box + ": " + t.name + " " + (z.reason.empty() ? "could not be decided" : z.reason);
    return false;
  }

  static Witness witness(const Tested& t) {
    return {t.name, t.verdict.wx, t.verdict.wy, t.verdict.value, t.verdict.threshold};
  }

  Verdict incompatible(const Tested& t) {
    v_.status = Verdict::Incompatible;
    v_.failed = t.name;
    v_.witness = witness(t);
    terminal("no_integral", "For given g and A, F does not exist.");
    return std::move(v_);
  }

  void terminal(const std::string& box, const std::string& text) { v_.trace.push_back({box, text, std::nullopt, ""}); }

  Verdict with_formula(Verdict::Via via, const Expr& k1, const Expr& k2) {
    SymTensor3 F = inv_.f_tensor(k1, k2);
    Certificate cert = certify(F, g_, box_, opt_.zero);
    v_.F = F;
    v_.certificate = cert;
    v_.via = via;
    if (!cert.all_zero()) {
      v_.status = Verdict::Undetermined;
      v_.reason = "constructed F failed its bracket certificate";
      terminal("certificate", "Bracket certificate of F is not zero.");
      return std::move(v_);
    }
    v_.status = Verdict::CompatibleWithFormula;
    terminal(via == Verdict::Kay ? "formula_K" : "formula_Kstar", "F is given by the explicit formula.");
    return std::move(v_);
  }

  const Metric& g_;
  const Box& box_;
  const DecideOptions& opt_;
  Invariants inv_;
  Verdict v_;
};

}  // namespace

Verdict run_flowchart(const Metric& g, const Codifferential& A, const Box& box, const DecideOptions& opt,
                      bool null_signature) {
  try {
    Flow f(g, A, box, opt);
    return f.run(null_signature);
  } catch (const OrderCapExceeded& e) {
    Verdict v;
    v.status = Verdict::Undetermined;
    v.reason = e.what();
    v.trace.push_back({"input", "Input g and A", std::nullopt, ""});
    return v;
  }
}

}  // namespace detail

Verdict decide(const Metric& g, const Codifferential& A, const Box& box, const DecideOptions& opt) {
  if (g.kind == Metric::Null) return decide_pseudo(g, A, box, opt);
  require_holomorphic(g, A, box, opt.zero);
  return detail::run_flowchart(g, A, box, opt, false);
}

}  // namespace cubint

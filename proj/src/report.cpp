#include "cubint/report.hpp"

#include <cmath>

namespace cubint {

namespace {

Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json value_at(const Expr& e, double x, double y) {
  try {
    return number(eval_at(e, x, y));
  } catch (const EvalDomainError&) {
    return nullptr;
  }
}

}  // namespace

Json to_json(const ZeroVerdict& v) {
  Json j;
  j["kind"] = to_string(v.kind);
  j["symbolic"] = v.symbolic;
  if (v.nonzero()) j["witness"] = {{"x", v.wx}, {"y", v.wy}, {"value", number(v.value)}, {"threshold", v.threshold}};
  if (!v.reason.empty()) j["reason"] = v.reason;
  return j;
}

Json to_json(const SymTensor3& t) {
  return {{"t111", to_string(t.c[0])}, {"t112", to_string(t.c[1])}, {"t122", to_string(t.c[2])}, {"t222", to_string(t.c[3])}};
}

Json to_json(const Certificate& c) {
  static const char* mono[5] = {"px^4", "px^3 py", "px^2 py^2", "px py^3", "py^4"};
  Json j;
  j["all_zero"] = c.all_zero();
  Json cs = Json::array();
  for (int k = 0; k < 5; ++k) cs.push_back({{"monomial", mono[k]}, {"verdict", to_json(c.verdicts[k])}});
  j["coefficients"] = cs;
  return j;
}

Json to_json(const Verdict& v) {
  Json j;
  j["status"] = to_string(v.status);
  if (v.status == Verdict::CompatibleWithFormula) j["via"] = to_string(v.via);
  if (!v.failed.empty()) j["failed"] = v.failed;
  if (v.witness)
    j["witness"] = {{"condition", v.witness->condition}, {"x", v.witness->x}, {"y", v.witness->y},
                    {"value", number(v.witness->value)}, {"threshold", v.witness->threshold}};
  if (!v.note.empty()) j["note"] = v.note;
  if (!v.reason.empty()) j["reason"] = v.reason;
  Json tr = Json::array();
  for (const auto& s : v.trace) {
    Json e{{"box", s.box}, {"question", s.question}};
    if (s.verdict) e["verdict"] = to_json(*s.verdict);
    if (!s.answer.empty()) e["answer"] = s.answer;
    tr.push_back(e);
  }
  j["trace"] = tr;
  if (v.F) j["F"] = to_json(*v.F);
  if (v.certificate) j["certificate"] = to_json(*v.certificate);
  return j;
}

Json to_json(const DriftReport& d) {
  Json j{{"samples", d.samples}, {"H0", number(d.h0)}, {"max_dH", number(d.max_dH)}};
  if (d.f0) j["F0"] = number(*d.f0);
  if (d.max_dF) j["max_dF"] = number(*d.max_dF);
  return j;
}

Json config_json(const Manifest& m) {
  return {{"metric", to_string(m.metric.kind)},
          {"codifferential", to_string(m.A.kind)},
          {"domain", {{"x", {m.box.x0, m.box.x1}}, {"y", {m.box.y0, m.box.y1}}}},
          {"samples", m.cfg.samples},
          {"seeds", m.cfg.seeds},
          {"seed", m.cfg.seed},
          {"abs_tol", m.cfg.abs_tol},
          {"rel_tol", m.cfg.rel_tol}};
}

Json invariants_json(Invariants& inv, const Box& box, const ZeroTestConfig& cfg,
                     const std::optional<std::pair<double, double>>& at) {
  bool kay = is_zero(inv.get("phi2"), box, cfg).nonzero();
  bool kay_star = is_zero(inv.get("phi2*"), box, cfg).nonzero();
  InvariantReport r = inv.report(kay, kay_star);
  Json j;
  j["mode"] = at ? "at" : "symbolic";
  if (at) j["point"] = {at->first, at->second};
  j["route"] = inv.chart_route() ? "chart" : "index";
  j["kay_defined"] = kay;
  j["kay_star_defined"] = kay_star;
  Json es = Json::array();
  for (const auto& e : r.entries) {
    Json x{{"name", e.name}, {"formula", e.formula}, {"order", e.order}};
    x["value"] = at ? value_at(e.value, at->first, at->second) : Json(to_string(e.value));
    es.push_back(x);
  }
  j["invariants"] = es;
  return j;
}

}  // namespace cubint

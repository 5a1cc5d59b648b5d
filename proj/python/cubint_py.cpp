#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cubint/report.hpp"

namespace py = pybind11;
using namespace cubint;

namespace {

Var var_of(const std::string& v) {
  if (v == "x") return Var::X;
  if (v == "y") return Var::Y;
  throw py::value_error("variable must be 'x' or 'y'");
}

ZeroTestConfig make_cfg(int samples, int seeds, std::uint64_t seed, double abs_tol, double rel_tol) {
  ZeroTestConfig c;
  c.samples = samples;
  c.seeds = seeds;
  c.seed = seed;
  c.abs_tol = abs_tol;
  c.rel_tol = rel_tol;
  return c;
}

std::vector<Expr> quartic(const Quartic& q) { return {q.begin(), q.end()}; }

}  // namespace

PYBIND11_MODULE(_cubint, m) {
  m.doc() = "Cubic integrals of geodesic flows on surfaces";

  py::register_exception<SyntaxError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<EvalDomainError>(m, "EvalDomainError", PyExc_ArithmeticError);
  py::register_exception<ChartMismatch>(m, "ChartMismatch", PyExc_TypeError);
  py::register_exception<HolomorphicityViolated>(m, "HolomorphicityViolated", PyExc_ValueError);
  py::register_exception<DegenerateBracket>(m, "DegenerateBracket", PyExc_ArithmeticError);
  py::register_exception<ManifestError>(m, "ManifestError", PyExc_ValueError);

  py::class_<Expr>(m, "Expr")
      .def(py::init([](const std::string& s) { return parse(s); }))
      .def(py::init<long>())
      .def("__str__", [](const Expr& e) { return to_string(e); })
      .def("__repr__", [](const Expr& e) { return "Expr('" + to_string(e) + "')"; })
      .def("diff", [](const Expr& e, const std::string& v) { return diff(e, var_of(v)); })
      .def("__call__", [](const Expr& e, double x, double y) { return eval_at(e, x, y); })
      .def("simplify", [](const Expr& e) { return simplify(e); })
      .def("is_zero", &Expr::is_zero)
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(py::self * py::self)
      .def(py::self / py::self)
      .def(-py::self)
      .def("__eq__", [](const Expr& a, const Expr& b) { return compare(a, b) == 0; })
      .def("__hash__", [](const Expr& e) { return std::hash<std::string>{}(to_string(e)); });
  py::implicitly_convertible<std::string, Expr>();
  py::implicitly_convertible<long, Expr>();

  py::class_<Box>(m, "Box")
      .def(py::init([](double x0, double x1, double y0, double y1) { return Box{x0, x1, y0, y1}; }),
           py::arg("x0") = -1.0, py::arg("x1") = 1.0, py::arg("y0") = -1.0, py::arg("y1") = 1.0)
      .def_readwrite("x0", &Box::x0)
      .def_readwrite("x1", &Box::x1)
      .def_readwrite("y0", &Box::y0)
      .def_readwrite("y1", &Box::y1);

  ZeroTestConfig d;
  py::class_<ZeroTestConfig>(m, "ZeroTestConfig")
      .def(py::init(&make_cfg), py::arg("samples") = d.samples, py::arg("seeds") = d.seeds,
           py::arg("seed") = d.seed, py::arg("abs_tol") = d.abs_tol, py::arg("rel_tol") = d.rel_tol)
      .def_readwrite("samples", &ZeroTestConfig::samples)
      .def_readwrite("seeds", &ZeroTestConfig::seeds)
      .def_readwrite("seed", &ZeroTestConfig::seed)
      .def_readwrite("abs_tol", &ZeroTestConfig::abs_tol)
      .def_readwrite("rel_tol", &ZeroTestConfig::rel_tol);

  py::class_<ZeroVerdict>(m, "ZeroVerdict")
      .def_property_readonly("kind", [](const ZeroVerdict& v) { return to_string(v.kind); })
      .def_readonly("x", &ZeroVerdict::wx)
      .def_readonly("y", &ZeroVerdict::wy)
      .def_readonly("value", &ZeroVerdict::value)
      .def_readonly("threshold", &ZeroVerdict::threshold)
      .def_readonly("symbolic", &ZeroVerdict::symbolic)
      .def_readonly("reason", &ZeroVerdict::reason)
      .def("__repr__", [](const ZeroVerdict& v) { return "ZeroVerdict(" + to_string(v.kind) + ")"; });

  m.def("is_zero", &is_zero, py::arg("expr"), py::arg("box") = Box{}, py::arg("cfg") = ZeroTestConfig{});

  py::class_<Metric>(m, "Metric")
      .def_static("isothermal", &Metric::isothermal, py::arg("lam"), py::arg("orientation") = 1)
      .def_static("general", &Metric::general, py::arg("g11"), py::arg("g12"), py::arg("g22"),
                  py::arg("orientation") = 1)
      .def_static("null", &Metric::null, py::arg("lam"))
      .def_property_readonly("kind", [](const Metric& g) { return to_string(g.kind); })
      .def("component", &Metric::comp);

  m.def("gauss_curvature", [](const Metric& g) { return gauss_curvature(g); });
  m.def("normal_form_metric", &normal_form_metric, py::arg("f"));

  py::class_<SymTensor3>(m, "SymTensor3")
      .def(py::init([](Expr a, Expr b, Expr c, Expr e) { return SymTensor3{{a, b, c, e}}; }), py::arg("t111"),
           py::arg("t112"), py::arg("t122"), py::arg("t222"))
      .def_property_readonly("components", [](const SymTensor3& t) { return std::vector<Expr>(t.c.begin(), t.c.end()); })
      .def("__repr__", [](const SymTensor3& t) { return to_json(t).dump(); });

  py::class_<Codifferential>(m, "Codifferential")
      .def_static("complex", [](Expr re, Expr im) { return Codifferential::complex(CExpr(re, im)); },
                  py::arg("re"), py::arg("im") = Expr(0))
      .def_static("real", &Codifferential::real, py::arg("ahat"))
      .def_static("null_pair", &Codifferential::null_pair, py::arg("a1"), py::arg("a2"))
      .def_property_readonly("kind", [](const Codifferential& A) { return to_string(A.kind); });

  py::class_<Invariants>(m, "Invariants")
      .def(py::init([](const Metric& g, const Codifferential& A) { return std::make_unique<Invariants>(g, A); }),
           py::arg("metric"), py::arg("A"))
      .def("get", &Invariants::get, py::arg("name"))
      .def_static("names", &Invariants::names);

  m.def("bracket", [](const SymTensor3& F, const Metric& g) { return quartic(bracket_FH(F, g)); });
  m.def("bracket_canonical", [](const SymTensor3& F, const Metric& g) { return quartic(bracket_FH_canonical(F, g)); });

  py::class_<Certificate>(m, "Certificate")
      .def_property_readonly("coefficients", [](const Certificate& c) { return quartic(c.coeffs); })
      .def_property_readonly("verdicts", [](const Certificate& c) {
        return std::vector<ZeroVerdict>(c.verdicts.begin(), c.verdicts.end());
      })
      .def("all_zero", &Certificate::all_zero)
      .def("any_nonzero", &Certificate::any_nonzero);
  m.def("certify", &certify, py::arg("F"), py::arg("metric"), py::arg("box") = Box{}, py::arg("cfg") = ZeroTestConfig{});

  py::class_<Verdict>(m, "Verdict")
      .def_property_readonly("status", [](const Verdict& v) { return to_string(v.status); })
      .def_property_readonly("via", [](const Verdict& v) { return to_string(v.via); })
      .def_readonly("F", &Verdict::F)
      .def_readonly("failed", &Verdict::failed)
      .def_readonly("reason", &Verdict::reason)
      .def_property_readonly("trace", [](const Verdict& v) {
        std::vector<std::string> boxes;
        for (const auto& s : v.trace) boxes.push_back(s.box);
        return boxes;
      })
      .def("compatible", &Verdict::compatible)
      .def("to_json", [](const Verdict& v) { return to_json(v).dump(); });

  m.def(
      "decide",
      [](const Metric& g, const Codifferential& A, const Box& box, const ZeroTestConfig& cfg) {
        DecideOptions opt;
        opt.zero = cfg;
        return decide(g, A, box, opt);
      },
      py::arg("metric"), py::arg("A"), py::arg("box") = Box{}, py::arg("cfg") = ZeroTestConfig{});

  m.def(
      "geodesic_drift",
      [](const Metric& g, std::array<double, 4> s, int steps, double dt, std::optional<SymTensor3> F) {
        auto t = integrate_geodesic(g, PhasePoint{s[0], s[1], s[2], s[3]}, steps, dt);
        if (!t.error.empty()) throw EvalDomainError(t.error);
        return to_json(conservation_report(t, g, F)).dump();
      },
      py::arg("metric"), py::arg("start"), py::arg("steps") = 10000, py::arg("dt") = 1e-3,
      py::arg("F") = std::nullopt);

  py::class_<Manifest>(m, "Manifest")
      .def_readonly("metric", &Manifest::metric)
      .def_readonly("A", &Manifest::A)
      .def_readonly("box", &Manifest::box)
      .def_readonly("cfg", &Manifest::cfg);
  m.def("load_manifest", &load_manifest);
  m.def("parse_manifest", &parse_manifest);
}

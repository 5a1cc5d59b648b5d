import pytest

import cubint as ci


def test_expr_roundtrip():
    e = ci.Expr("x^2*y + sin(x)")
    assert e.diff("y") == ci.Expr("x^2")
    assert e(1.0, 2.0) == pytest.approx(2 + 0.8414709848078965)
    with pytest.raises(ci.ParseError):
        ci.Expr("1 +")


def test_sphere_curvature():
    g = ci.Metric.isothermal("4/(1+x^2+y^2)^2")
    K = ci.gauss_curvature(g)
    assert ci.is_zero(K - ci.Expr(1)).kind == "Zero"


def test_decide_killing():
    g = ci.Metric.isothermal("1+x^2")
    v = ci.decide(g, ci.Codifferential.complex(0, -1))
    assert v.status == "CompatibleKilling"
    assert v.compatible()
    assert "D_zero" in v.trace
    assert ci.report(v)["status"] == "CompatibleKilling"


def test_decide_incompatible_witness():
    g = ci.Metric.isothermal("1+x^2+y^4")
    v = ci.decide(g, ci.Codifferential.complex(1), ci.Box(0.2, 1, 0.2, 1))
    assert v.status == "Incompatible"
    assert abs(ci.report(v)["witness"]["value"]) > 1e-6


def test_holomorphicity_enforced():
    with pytest.raises(ci.HolomorphicityViolated):
        ci.decide(ci.Metric.isothermal("1+x^2"), ci.Codifferential.complex("x", "-y"))


def test_bracket_and_certificate():
    g = ci.Metric.isothermal("1+x^2")
    F = ci.SymTensor3(0, 0, 0, 1)
    q = ci.bracket(F, g)
    assert len(q) == 5
    assert all(ci.is_zero(a - b).kind == "Zero" for a, b in zip(q, ci.bracket_canonical(F, g)))
    assert ci.certify(F, g).all_zero()
    assert ci.certify(ci.SymTensor3("x", 0, 0, 0), ci.Metric.isothermal(1)).any_nonzero()


def test_normal_form():
    g = ci.normal_form_metric(ci.Expr("x^2"))
    assert g.kind == "null"
    assert ci.is_zero(ci.gauss_curvature(g) - ci.Expr("4*x")).kind == "Zero"
    v = ci.decide(g, ci.Codifferential.null_pair(0, 1))
    assert v.status == "Incompatible" and v.failed == "phi1"


def test_geodesic_drift():
    g = ci.Metric.isothermal("4/(1+x^2+y^2)^2")
    d = ci.geodesic_drift(g, (0.1, 0.2, 0.7, -0.3), steps=2000, dt=1e-3)
    assert d["max_dH"] < 1e-10


def test_manifest(tmp_path):
    p = tmp_path / "m.ini"
    p.write_text('[metric]\nkind = isothermal\nlambda = "1+x^2"\n[codifferential]\nre = 0\nim = -1\n')
    m = ci.load_manifest(str(p))
    assert ci.decide(m.metric, m.A, m.box, m.cfg).status == "CompatibleKilling"

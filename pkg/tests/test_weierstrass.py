from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from ellflat.collision import Verdict, collide
from ellflat.errors import (
    BudgetExhausted, DegenerateFibration, IrrationalCenter, NonMinimalModel,
)
from ellflat.kodaira import II, III, I, I_star
from ellflat.logsurface import mmp_drive
from ellflat.polynomial import BivariatePoly as P, parse_poly
from ellflat.weierstrass import (
    Chart, analyze, blow_up_chart, collision_report, discriminant, j_invariant,
    multiplicity_at_origin, snc_at_origin, vanishing_order,
)

S, T = P.s(), P.t()


def test_discriminant_examples():
    assert discriminant("s", "t") == parse_poly("4*s^3 + 27*t^2")
    assert discriminant(0, 1) == P.constant(27)
    assert discriminant(-3, 2).is_zero


def test_j_invariant():
    j = j_invariant("s", "t")
    assert not j.is_defined_at_origin()
    assert j_invariant(1, 0).constant_value() == 1
    assert j_invariant(0, "t").constant_value() == 0
    assert j_invariant("s", "t").constant_value() is None
    assert j_invariant(1, "t^3").order_along("t") == 0
    with pytest.raises(DegenerateFibration):
        j_invariant(-3, 2)


def test_order_helpers():
    assert vanishing_order("s^2*(4*s + 27*t^2)", "s") == 2
    assert multiplicity_at_origin("s*t") == 2


def test_blow_up_chart_examples():
    total, e, strict = blow_up_chart("4*s^3 + 27*t^2", Chart.S_OVER_T)
    assert total == parse_poly("4*s^3 + 27*s^2*t^2") and e == 2 and strict == parse_poly("4*s + 27*t^2")
    _, e, strict = blow_up_chart("s", "SOverT")
    assert e == 1 and strict == P.constant(1)
    total, e, strict = blow_up_chart("t", "SOverT")
    assert total == S * T and e == 1 and strict == T
    total, e, strict = blow_up_chart("s", "TOverS")
    assert total == S * T and e == 1 and strict == S


def test_snc_examples():
    assert not snc_at_origin([parse_poly("4*s^3 + 27*t^2")])
    assert snc_at_origin([S, T])
    assert not snc_at_origin([S, T, parse_poly("4*s + 27*t^2 - 27*t")])  # three through one point
    assert not snc_at_origin([T, parse_poly("t - s^2")])  # tangent
    assert snc_at_origin([parse_poly("s + 1"), T])  # first branch misses the origin
    assert snc_at_origin([parse_poly("t - s^2")])


def test_cusp():
    r = analyze("s", "t", 10)
    assert r.blowups == 3 and r.snc
    exc = [d for d in r.divisors if d.exceptional]
    assert [d.fiber_type for d in exc] == [II, III, I_star(0)]
    assert [(d.ord_a, d.ord_b, d.ord_delta) for d in exc] == [(1, 1, 2), (1, 2, 3), (2, 3, 6)]
    assert [d.lambda_coefficient for d in exc] == [F(1, 6), F(1, 4), F(1, 2)]
    assert r.divisor("D1").fiber_type == I(1)
    assert all(s.pullback_holds for s in r.steps)
    # telescoping: 2*(1/12), 1/12 + 1/6, 1/12 + 1/6 + 1/4
    assert [s.multiplicities for s in r.steps] == [{"D1": 2}, {"E1": 1, "D1": 1}, {"E1": 1, "E2": 1, "D1": 1}]
    # J-pole pullback fails before the discriminant is SNC: E1 carries J = 0
    assert not r.steps[0].j_pole_pullback_holds


def test_cusp_collisions():
    rep = collision_report(analyze("s", "t"))
    pairs = {frozenset([str(c.left_type), str(c.right_type)]): c for c in rep}
    assert set(pairs) == {frozenset(["II", "I0*"]), frozenset(["III", "I0*"]), frozenset(["I1", "I0*"])}
    assert all(c.verdict is Verdict.GOOD for c in rep)
    assert sorted(c.outcome.beta for c in rep) == [F(1, 2), F(2, 3), F(3, 4)]


def test_cusp_tower_contracts_back():
    s, lam = analyze("s", "t").surface()
    assert lam == {"h": F(1, 4)}
    result = mmp_drive(s, lam)
    assert result.contracted == ["E3", "E2", "E1"]
    assert result.surface.basis == ("h",)
    assert [st.delta for st in result.steps] == [1, 1, 1]


def test_smooth_discriminant():
    r = analyze(1, "t", 10)
    assert r.blowups == 0
    assert [str(d.fiber_type) for d in r.divisors] == ["I1"]
    assert r.divisors[0].polynomial == "27*t^2 + 4"
    assert collision_report(r) == []


def test_zero_a_uses_infinite_order():
    r = analyze(0, "s*t", 10)
    assert r.blowups == 0
    assert [d.fiber_type for d in r.divisors] == [II, II]
    assert all(d.ord_a == float("inf") and d.ord_b == 1 and d.ord_delta == 2 for d in r.divisors)
    rep = collision_report(r)
    assert len(rep) == 1 and rep[0].verdict is Verdict.GOOD


def test_two_I1_branches_cross():
    rep = collision_report(analyze(-3, "2 + s*t"))
    assert [(str(c.left_type), str(c.right_type), c.verdict) for c in rep] == [("I1", "I1", Verdict.GOOD)]


@pytest.mark.parametrize("m,n", [(1, 1), (1, 2), (2, 3), (3, 3)])
def test_delta_order_adds_at_I_crossings(m, n):
    b = P.constant(2) + S ** m * T ** n
    r = analyze(-3, b)
    assert r.blowups == 0
    delta = discriminant(-3, b)
    total, e, _ = blow_up_chart(delta, Chart.S_OVER_T)
    assert total.vanishing_order("s") == m + n == collide(I(m), I(n)).gamma_pole


def test_irrational_nodes_are_reported():
    rep = collision_report(analyze(-3, "2 + t*(s^2 - 2)"))
    assert len(rep) == 2
    assert {c.point.location for c in rep} == {"(s,t)=(sqrt(2),0)", "(s,t)=(-sqrt(2),0)"}


def test_translated_center():
    r = analyze("s - 1", "t + 2")
    assert r.blowups == 3
    assert r.steps[0].location == "(s,t)=(1,-2)"


def test_errors():
    with pytest.raises(DegenerateFibration):
        analyze(-3, 2)
    with pytest.raises(NonMinimalModel):
        analyze("s^4", "s^6")
    with pytest.raises(BudgetExhausted):
        analyze("s", "t", max_blowups=2)
    with pytest.raises(IrrationalCenter):
        analyze("s^2 + 1", "t*s")


def test_report_deterministic():
    assert analyze("s", "t").to_dict() == analyze("s", "t").to_dict()


@st.composite
def small_polys(draw, deg=3):
    terms = {}
    for _ in range(draw(st.integers(0, 4))):
        i = draw(st.integers(0, deg))
        j = draw(st.integers(0, deg - i))
        terms[(i, j)] = draw(st.integers(-5, 5))
    return P(terms)


@settings(max_examples=60)
@given(small_polys(), small_polys(), st.sampled_from(list(Chart)))
def test_discriminant_commutes_with_pullback(a, b, chart):
    if discriminant(a, b).is_zero or a.is_zero or b.is_zero:
        return
    d_total, _, _ = blow_up_chart(discriminant(a, b), chart)
    a_total, _, _ = blow_up_chart(a, chart)
    b_total, _, _ = blow_up_chart(b, chart)
    assert d_total == discriminant(a_total, b_total)


@given(small_polys(), st.sampled_from(list(Chart)))
def test_exceptional_order_law(f, chart):
    if f.is_zero:
        return
    total, e, strict = blow_up_chart(f, chart)
    axis = "s" if chart is Chart.S_OVER_T else "t"
    assert e == f.multiplicity_at_origin() == total.vanishing_order(axis)
    assert strict.vanishing_order(axis) == 0

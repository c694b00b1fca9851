import itertools
from fractions import Fraction as F

import pytest
import sympy
from hypothesis import given, strategies as st

from ellflat.errors import NotSL2, UnrecognizedClass
from ellflat.kodaira import (
    II, II_STAR, III, III_STAR, IV, IV_STAR, I, I_star,
    classify_from_monodromy, coefficient_a, monodromy_of,
)
from ellflat.monodromy import (
    INFINITE, SL2Matrix, blowup_monodromy, compose, fixed_point, multiplier,
    order_of, parabolic_parameter, rotation_value,
)

J0_FAMILY = [II, IV, I_star(0), IV_STAR, II_STAR]
J1_FAMILY = [III, I_star(0), III_STAR]


def brute_order(m, limit=12):
    p = m
    for k in range(1, limit + 1):
        if p.is_identity:
            return k
        p = p @ m
    return INFINITE


@st.composite
def sl2(draw, bound=6):
    # products of elementary matrices cover SL(2, Z)
    T, S = SL2Matrix(1, 1, 0, 1), SL2Matrix(0, -1, 1, 0)
    m = SL2Matrix.identity()
    for _ in range(draw(st.integers(0, bound))):
        m = m @ draw(st.sampled_from([T, S, T.inverse()]))
    return m


def test_determinant_enforced():
    with pytest.raises(NotSL2):
        SL2Matrix(1, 1, 1, 1)
    with pytest.raises(NotSL2):
        SL2Matrix(1, 0, 0, 1.0)


def test_compose_examples():
    assert compose(monodromy_of(II), monodromy_of(II)) == monodromy_of(IV)
    m = monodromy_of(III_STAR)
    assert compose(m, SL2Matrix.identity()) == m
    for b, d in itertools.product(range(5), repeat=2):
        assert compose(monodromy_of(I_star(b)), monodromy_of(I_star(d))) == SL2Matrix(1, b + d, 0, 1)


def test_blowup_monodromy_examples():
    assert blowup_monodromy(monodromy_of(I_star(2)), monodromy_of(I(3))) == SL2Matrix(-1, -5, 0, -1)
    m = monodromy_of(IV)
    assert blowup_monodromy(SL2Matrix.identity(), m) == m
    assert blowup_monodromy(monodromy_of(III), monodromy_of(III)).is_minus_identity


def test_big_entries_do_not_wrap():
    m = SL2Matrix(1, 2 ** 70, 0, 1)
    assert (m @ m).b == 2 ** 71


@pytest.mark.parametrize("t,k", [(II, 6), (IV, 3), (III, 4), (I_star(0), 2), (I(0), 1), (II_STAR, 6), (IV_STAR, 3), (III_STAR, 4), (I(3), INFINITE), (I_star(1), INFINITE)], ids=str)
def test_order_of(t, k):
    assert order_of(monodromy_of(t)) == k
    assert brute_order(monodromy_of(t)) == k


@given(sl2())
def test_order_matches_brute_force(m):
    assert order_of(m) == brute_order(m)


@given(sl2(), sl2())
def test_determinant_and_trace_symmetry(a, b):
    ab, ba = compose(a, b), compose(b, a)
    assert ab.a * ab.d - ab.b * ab.c == 1
    assert ab.trace == ba.trace


@pytest.mark.parametrize("family", [J0_FAMILY, J1_FAMILY], ids=["J=0", "J=1"])
def test_same_family_commutes(family):
    for x, y in itertools.product(family, repeat=2):
        a, b = monodromy_of(x), monodromy_of(y)
        assert compose(a, b) == compose(b, a)


@pytest.mark.parametrize("family", [J0_FAMILY, J1_FAMILY], ids=["J=0", "J=1"])
def test_a_value_additivity(family):
    for x, y in itertools.product(family, repeat=2):
        s = coefficient_a(x) + coefficient_a(y)
        t = classify_from_monodromy(compose(monodromy_of(x), monodromy_of(y)), 0)
        assert coefficient_a(t) == s - int(s)


@pytest.mark.parametrize("t", [II, III, IV, IV_STAR, III_STAR, II_STAR], ids=str)
def test_fixed_point_exact(t):
    m = monodromy_of(t)
    p = fixed_point(m)
    tau = sympy.Rational(p.real.numerator, p.real.denominator) + sympy.I * sympy.Rational(
        p.imag.numerator, p.imag.denominator
    ) * sympy.sqrt(p.radicand)
    assert sympy.im(tau) > 0
    assert sympy.simplify(m.c * tau ** 2 + (m.d - m.a) * tau - m.b) == 0
    mu = multiplier(m)
    mu_expr = m.c * tau + m.d
    assert sympy.simplify(mu_expr - (sympy.Rational(str(mu.real)) + sympy.I * sympy.Rational(str(mu.imag)) * sympy.sqrt(mu.radicand))) == 0
    # the multiplier is exp(-2 pi i a)
    assert sympy.simplify(sympy.nsimplify(mu_expr) - sympy.exp(-2 * sympy.pi * sympy.I * sympy.Rational(str(coefficient_a(t))))).equals(0)


def test_rotation_value_is_a():
    for t in [II, III, IV, IV_STAR, III_STAR, II_STAR]:
        assert rotation_value(monodromy_of(t)) == coefficient_a(t)


def test_parabolic_parameter_signs():
    assert parabolic_parameter(SL2Matrix(1, 4, 0, 1)) == 4
    assert parabolic_parameter(SL2Matrix(1, -4, 0, 1)) == -4
    g = SL2Matrix(3, 2, 1, 1)
    assert parabolic_parameter(g @ SL2Matrix(1, 3, 0, 1) @ g.inverse()) == 3
    with pytest.raises(UnrecognizedClass):
        parabolic_parameter(monodromy_of(II))


@given(sl2(), st.integers(1, 40))
def test_parabolic_parameter_conjugation_invariant(g, n):
    assert parabolic_parameter(g @ SL2Matrix(1, n, 0, 1) @ g.inverse()) == n


def test_mixed_parabolic_orders_are_conjugate_data():
    for b, c in itertools.product(range(4), repeat=2):
        x, y = monodromy_of(I_star(b)), monodromy_of(I(c))
        assert classify_from_monodromy(x @ y, b + c) == classify_from_monodromy(y @ x, b + c) == I_star(b + c)

import itertools
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from ellflat import collision as coll
from ellflat.collision import (
    CollisionInput, ModelExistence, Smoothness, Verdict,
    blowup_count, classify_collision, collide, equidimensional_verdict,
    fractional_a_gamma, log_extremal_verdict, miranda_model_smoothness, resolve,
)
from ellflat.errors import (
    IncompatibleJFamilies, InconsistentMultiplicity, InvalidMultiplicity,
    MissingMultiplicity, NotGood, NotSectionCase,
)
from ellflat.kodaira import (
    II, II_STAR, III, III_STAR, IV, IV_STAR, FiberType, I, I_star,
    all_types, coefficient_a, pole_order,
)


def section_types(max_b):
    return all_types(max_b)


J0 = [II, IV, IV_STAR, II_STAR]
J1 = [III, III_STAR]


@st.composite
def compatible_pair(draw, max_b=20):
    """Two types that can cross: same forced J value, or one side regular."""
    b = st.integers(1, max_b)
    pole = st.one_of(st.builds(I, b), st.builds(I_star, b))
    regular = st.sampled_from([I(0), I_star(0)])
    family = draw(st.sampled_from(["J0", "J1", "pole"]))
    pool = {"J0": st.sampled_from(J0), "J1": st.sampled_from(J1), "pole": pole}[family]
    side = st.one_of(pool, regular)
    return draw(side), draw(side)


def test_reference_examples():
    o = collide(II_STAR, IV)
    assert (o.beta, o.gamma_type, o.a_gamma, o.alpha, o.delta) == (F(7, 6), II, F(1, 6), 1, 0)

    o = collide(I(0), I(0))
    assert (o.beta, o.gamma_type, o.alpha, o.delta) == (0, I(0), 0, 1)

    o = collide("m3:I0", "m3:I0", n_gamma=1)
    assert (o.beta, o.a_gamma, o.alpha, o.delta) == (F(4, 3), 0, F(4, 3), F(-1, 3))

    o = collide(III, III_STAR, n_gamma=2)
    assert (o.beta, o.a_gamma, o.alpha, o.delta) == (1, 0, F(1, 2), F(1, 2))
    assert o.gamma_type == I(0, 2)

    o = collide(I_star(2), I(3))
    assert (o.gamma_type, o.a_gamma, o.beta, o.alpha) == (I_star(5), F(1, 2), F(1, 2), 0)


def test_special_cases():
    for a, c in itertools.product(range(4), repeat=2):
        o = collide(I(a), I(c))
        assert o.beta == o.a_gamma == 0 and o.gamma_pole == a + c
        o = collide(I(a), I_star(c))
        assert o.beta == o.a_gamma == F(1, 2)
        o = collide(I_star(a), I_star(c))
        assert (o.beta, o.a_gamma, o.alpha) == (1, 0, 1)


def test_string_and_input_forms_agree():
    assert collide("IV*", "II") == collide(IV_STAR, II) == collide(CollisionInput(IV_STAR, II))


def test_errors():
    with pytest.raises(IncompatibleJFamilies):
        collide(II, III)
    with pytest.raises(MissingMultiplicity):
        collide("m3:I0", "I0")
    with pytest.raises(InvalidMultiplicity):
        CollisionInput(II, II, n_left=2)
    with pytest.raises(InvalidMultiplicity):
        CollisionInput(I(0, 3), II, n_left=2)
    with pytest.raises(InvalidMultiplicity):
        collide(I(0), I(0), n_gamma=0)
    with pytest.raises(InconsistentMultiplicity):
        collide(I(0), I(0), n_gamma=2)
    with pytest.raises(NotSectionCase):
        classify_collision("m2:I1", "I0", n_gamma=2)


def test_regular_types_meet_everything():
    for t in [II, III, IV_STAR, III_STAR, I(3), I_star(2)]:
        collide(t, I(0))
        collide(I_star(0), t)


@pytest.mark.parametrize("left,right", [(III, I(1)), (II, I_star(2)), (I(4), IV_STAR), (II, III_STAR)], ids=str)
def test_forced_j_values_must_agree(left, right):
    with pytest.raises(IncompatibleJFamilies):
        collide(left, right)


def test_classify_examples():
    assert classify_collision(IV_STAR, II) is Verdict.GOOD
    assert collide(IV_STAR, II).beta == F(5, 6)
    assert classify_collision(I_star(1), I_star(0)) is Verdict.BAD
    assert classify_collision(II_STAR, II_STAR) is Verdict.BAD
    assert collide(II_STAR, II_STAR).beta == F(5, 3)


@given(compatible_pair())
def test_symmetry(pair):
    left, right = pair
    o1, o2 = collide(left, right), collide(right, left)
    for field in ("beta", "a_gamma", "alpha", "delta", "gamma_pole", "gamma_type"):
        assert getattr(o1, field) == getattr(o2, field)


@given(compatible_pair())
def test_dual_path_and_ranges(pair):
    left, right = pair
    o = collide(left, right)
    assert fractional_a_gamma(left, right) == o.a_gamma
    assert o.delta == 1 - o.alpha
    assert 0 <= o.alpha <= 1
    assert o.gamma_pole == pole_order(left) + pole_order(right)
    good = classify_collision(left, right) is Verdict.GOOD
    assert good == log_extremal_verdict(o) == (o.beta < 1)


@given(st.integers(1, 6), st.integers(1, 6), st.integers(1, 6), st.integers(0, 4), st.integers(0, 4))
def test_multiple_fiber_alpha_range(n1, n2, ng, b1, b2):
    try:
        o = collide(I(b1, n1) if n1 > 1 else I(b1), I(b2, n2) if n2 > 1 else I(b2), n_gamma=ng)
    except InconsistentMultiplicity:
        return
    assert 0 <= o.alpha < 2
    assert o.alpha == o.beta - o.a_gamma - F(ng - 1, ng)


def test_equidimensional_verdict():
    assert equidimensional_verdict(F(1)) is ModelExistence.EXISTS_WITH_ONE_DIM_FIBER
    assert equidimensional_verdict(F(-1, 3)) is ModelExistence.IMPOSSIBLE
    assert equidimensional_verdict(F(0)) is ModelExistence.EXISTS_WITH_DIVISORIAL_FIBER
    assert equidimensional_verdict(F(1, 2), False) is ModelExistence.CONDITIONALLY_POSSIBLE
    assert equidimensional_verdict(F(0), False) is ModelExistence.IMPOSSIBLE
    assert equidimensional_verdict(collide(II_STAR, IV)) is ModelExistence.EXISTS_WITH_DIVISORIAL_FIBER


def test_log_extremal_examples():
    assert log_extremal_verdict(collide(III, I_star(0)))
    assert not log_extremal_verdict(collide(I_star(0), I_star(0)))
    assert not log_extremal_verdict(collide("m3:I0", "m3:I0", n_gamma=1))


def test_smoothness():
    assert miranda_model_smoothness(II, II) is Smoothness.TERMINAL_NOT_SMOOTH
    assert miranda_model_smoothness(IV, IV) is Smoothness.TERMINAL_NOT_SMOOTH
    assert miranda_model_smoothness(I(1), I(1)) is Smoothness.SMOOTH
    assert miranda_model_smoothness(III, I_star(0)) is Smoothness.SMOOTH
    assert miranda_model_smoothness(IV, II) is Smoothness.SMOOTH
    with pytest.raises(NotGood):
        miranda_model_smoothness(II_STAR, II)


# resolution -----------------------------------------------------------------


def test_resolve_examples():
    b, d = 2, 3
    tree = resolve(I_star(b), I_star(d))
    assert tree.blowup_count == 1
    assert tree.root.outcome.gamma_type == I(b + d)
    kids = [c.collision for c in tree.root.children]
    assert [(k.left, k.right) for k in kids] == [(I_star(b), I(b + d)), (I_star(d), I(b + d))]
    assert all(c.verdict is Verdict.GOOD for c in tree.root.children)

    tree = resolve(II_STAR, II)
    assert tree.blowup_count == 1 and tree.root.outcome.gamma_type == I(0) and not tree.root.children

    tree = resolve(II_STAR, IV_STAR)
    assert tree.depth == 4
    assert tree.gamma_chain("left") == [I_star(0), IV, II, I(0)]


def test_blowup_count_examples():
    assert blowup_count(IV, IV) == 0  # beta 2/3: already good
    assert blowup_count(I(2), I(5)) == 0
    assert blowup_count(I_star(0), I_star(0)) == 1


def test_leaves_good_and_internal_bad():
    for left, right in itertools.product(section_types(2), repeat=2):
        try:
            tree = resolve(left, right)
        except IncompatibleJFamilies:
            continue
        for depth, node in tree.root.walk():
            if node.children:
                assert node.verdict is Verdict.BAD
        assert all(n.verdict is Verdict.GOOD or n.outcome.gamma_type.is_smooth for n in tree.leaves())


def test_bad_chain_beta_decreases():
    fixed = [II, IV, IV_STAR, II_STAR, III, III_STAR]
    for left, right in itertools.product(fixed, repeat=2):
        try:
            tree = resolve(left, right)
        except IncompatibleJFamilies:
            continue
        node = tree.root
        while node.children:
            child = node.children[0]
            assert child.outcome.beta < node.outcome.beta
            node = child


def test_tree_serialises():
    d = resolve(II_STAR, IV_STAR).to_dict()
    assert d["blowups"] == 5
    assert d["tree"]["outcome"]["gamma_type"] == "I0*"
    assert "II* x IV*" in resolve(II_STAR, IV_STAR).render()


def test_table_layouts_fill_34_cells():
    total = sum(len(r) * len(c) for r, c in (coll.COR46_J0, coll.COR46_J1))
    assert total == 34

"""Collisions of singular fibers and their resolution by blowing up.

Two discriminant branches of types ``left`` and ``right`` cross at a point
Q.  Blowing up Q produces an exceptional curve Gamma whose monodromy is the
product of the branch monodromies.  Comparing the pulled-back boundary
divisor with the one upstairs gives

    beta  = a(left) + a(right) + (n1 - 1)/n1 + (n2 - 1)/n2
    alpha = beta - a(Gamma) - (n(Gamma) - 1)/n(Gamma)
    delta = 1 - alpha

A collision with a section is *bad* when alpha >= 1; bad collisions are
removed by blowing up again until only good ones remain.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .errors import (
    BudgetExhausted,
    IncompatibleJFamilies,
    InconsistentMultiplicity,
    InvalidMultiplicity,
    MissingMultiplicity,
    NotGood,
    NotSectionCase,
)
from .kodaira import (
    II,
    II_STAR,
    III,
    III_STAR,
    IV,
    IV_STAR,
    FiberType,
    I,
    I_star,
    Kind,
    JKind,
    classify_from_monodromy,
    coefficient_a,
    j_behavior_of,
    monodromy_of,
    pole_order,
)
from .monodromy import SL2Matrix, blowup_monodromy


class Verdict(enum.Enum):
    GOOD = "Good"
    BAD = "Bad"


class Smoothness(enum.Enum):
    SMOOTH = "Smooth"
    TERMINAL_NOT_SMOOTH = "TerminalNotSmooth"


class ModelExistence(enum.Enum):
    EXISTS_WITH_ONE_DIM_FIBER = "ExistsWithOneDimFiber"
    EXISTS_WITH_DIVISORIAL_FIBER = "ExistsWithDivisorialFiber"
    CONDITIONALLY_POSSIBLE = "ConditionallyPossible"
    IMPOSSIBLE = "Impossible"


@dataclass(frozen=True)
class CollisionInput:
    """Two crossing branches.

    ``n_left``/``n_right`` default to the multiplicity carried by the fiber
    type; ``n_gamma=None`` means the multiplicity along Gamma is unknown.
    """

    left: FiberType
    right: FiberType
    n_left: int | None = None
    n_right: int | None = None
    n_gamma: int | None = None

    def __post_init__(self):
        for side in ("left", "right"):
            t = getattr(self, side)
            n = getattr(self, "n_" + side)
            if n is None:
                n = t.multiplicity
            if n < 1:
                raise InvalidMultiplicity(f"n_{side} must be positive")
            if n > 1 and t.kind is not Kind.I:
                raise InvalidMultiplicity(f"{t} cannot be a multiple fiber")
            if t.multiplicity > 1 and n != t.multiplicity:
                raise InvalidMultiplicity(
                    f"n_{side}={n} disagrees with the multiplicity of {t}"
                )
            object.__setattr__(self, "n_" + side, n)
        if self.n_gamma is not None and self.n_gamma < 1:
            raise InvalidMultiplicity("n_gamma must be positive")

    @property
    def is_section_case(self) -> bool:
        return self.n_left == 1 and self.n_right == 1 and self.n_gamma in (None, 1)

    def swapped(self) -> CollisionInput:
        return CollisionInput(
            self.right, self.left, self.n_right, self.n_left, self.n_gamma
        )

    def __str__(self) -> str:
        return f"{self.left} x {self.right}"


def _as_input(left, right=None, **kw) -> CollisionInput:
    if isinstance(left, CollisionInput):
        return left
    if isinstance(left, str):
        left = FiberType.parse(left)
    if isinstance(right, str):
        right = FiberType.parse(right)
    return CollisionInput(left, right, **kw)


@dataclass(frozen=True)
class CollisionOutcome:
    beta: Fraction
    a_gamma: Fraction
    alpha: Fraction
    delta: Fraction
    gamma_type: FiberType
    gamma_pole: int
    gamma_monodromy: SL2Matrix
    n_gamma: int = 1

    def to_dict(self) -> dict:
        return {
            "beta": str(self.beta),
            "a_gamma": str(self.a_gamma),
            "alpha": str(self.alpha),
            "delta": str(self.delta),
            "gamma_type": str(self.gamma_type),
            "gamma_pole": self.gamma_pole,
            "gamma_monodromy": self.gamma_monodromy.to_list(),
            "n_gamma": self.n_gamma,
        }


def _j_family(t: FiberType) -> JKind | None:
    """Value of J forced along the branch (0, 1 or a pole); None if J is free.

    Two branches forcing different values would make J undefined at the
    crossing, which cannot happen over a smooth base with a section.
    """
    kind = j_behavior_of(t).kind
    return kind if kind in (JKind.ZERO, JKind.ONE, JKind.POLE) else None


def collide(left, right=None, **kw) -> CollisionOutcome:
    """Blow up the crossing point and compute beta, a(Gamma), alpha, delta.

    Accepts a :class:`CollisionInput` or two fiber types (objects or
    strings) plus the keyword fields of :class:`CollisionInput`.
    """
    inp = _as_input(left, right, **kw)
    fl, fr = _j_family(inp.left), _j_family(inp.right)
    if fl and fr and fl is not fr:
        raise IncompatibleJFamilies(
            f"{inp.left} (J: {fl.value}) cannot meet {inp.right} (J: {fr.value})"
        )
    n1, n2, ng = inp.n_left, inp.n_right, inp.n_gamma
    if ng is None:
        if n1 > 1 or n2 > 1:
            raise MissingMultiplicity(
                "n_gamma must be given when a branch carries a multiple fiber"
            )
        ng = 1

    beta = (
        coefficient_a(inp.left)
        + coefficient_a(inp.right)
        + Fraction(n1 - 1, n1)
        + Fraction(n2 - 1, n2)
    )
    mono = blowup_monodromy(monodromy_of(inp.left), monodromy_of(inp.right))
    pole = pole_order(inp.left) + pole_order(inp.right)
    gamma_type = classify_from_monodromy(mono, pole)
    if ng > 1:
        if gamma_type.kind is not Kind.I:
            raise InvalidMultiplicity(f"Gamma of type {gamma_type} cannot be multiple")
        gamma_type = gamma_type.with_multiplicity(ng)
    a_gamma = coefficient_a(gamma_type)
    alpha = beta - a_gamma - Fraction(ng - 1, ng)
    if not 0 <= alpha < 2:
        raise InconsistentMultiplicity(
            f"alpha={alpha} for {inp} with n_gamma={ng} lies outside [0, 2)"
        )
    return CollisionOutcome(beta, a_gamma, alpha, 1 - alpha, gamma_type, pole, mono, ng)


def fractional_a_gamma(left: FiberType, right: FiberType) -> Fraction:
    """a(Gamma) as the fractional part of a(left) + a(right) (section case)."""
    s = coefficient_a(left) + coefficient_a(right)
    return s - (s.numerator // s.denominator)


def _section_input(left, right, kw) -> CollisionInput:
    inp = _as_input(left, right, **kw)
    if not inp.is_section_case:
        raise NotSectionCase(f"{inp} involves multiple fibers")
    return inp


def classify_collision(left, right=None, **kw) -> Verdict:
    inp = _section_input(left, right, kw)
    return Verdict.BAD if collide(inp).alpha >= 1 else Verdict.GOOD


def log_extremal_verdict(outcome: CollisionOutcome) -> bool:
    """True when blowing down Gamma is a (K + Lambda)-negative contraction."""
    return outcome.alpha < 1


def equidimensional_verdict(outcome, pullback_defect_effective: bool = True) -> ModelExistence:
    """Existence of an equidimensional model over the contracted base.

    ``outcome`` is a :class:`CollisionOutcome` or the number delta itself.
    ``pullback_defect_effective`` states that the canonical class upstairs
    is numerically the pullback of K + Lambda; when False only the weaker
    non-effective-defect situation is known.
    """
    delta = Fraction(getattr(outcome, "delta", outcome))
    if pullback_defect_effective:
        if delta > 0:
            return ModelExistence.EXISTS_WITH_ONE_DIM_FIBER
        if delta == 0:
            return ModelExistence.EXISTS_WITH_DIVISORIAL_FIBER
        return ModelExistence.IMPOSSIBLE
    if delta <= 0:
        return ModelExistence.IMPOSSIBLE
    return ModelExistence.CONDITIONALLY_POSSIBLE


_TERMINAL_PAIRS = {frozenset([II]), frozenset([IV])}


def miranda_model_smoothness(left, right=None) -> Smoothness:
    inp = _section_input(left, right, {})
    if classify_collision(inp) is Verdict.BAD:
        raise NotGood(f"{inp} is a bad collision")
    if frozenset([inp.left, inp.right]) in _TERMINAL_PAIRS:
        return Smoothness.TERMINAL_NOT_SMOOTH
    return Smoothness.SMOOTH


@dataclass(frozen=True)
class ResolutionNode:
    collision: CollisionInput
    outcome: CollisionOutcome
    verdict: Verdict
    children: tuple[ResolutionNode, ...] = ()

    def walk(self, depth: int = 0) -> Iterator[tuple[int, ResolutionNode]]:
        yield depth, self
        for child in self.children:
            yield from child.walk(depth + 1)

    def to_dict(self) -> dict:
        return {
            "left": str(self.collision.left),
            "right": str(self.collision.right),
            "verdict": self.verdict.value,
            "outcome": self.outcome.to_dict(),
            "children": [c.to_dict() for c in self.children],
        }


@dataclass(frozen=True)
class ResolutionTree:
    root: ResolutionNode
    floor_beta: int = field(init=False)

    def __post_init__(self):
        b = self.root.outcome.beta
        object.__setattr__(self, "floor_beta", b.numerator // b.denominator)

    @property
    def blowup_count(self) -> int:
        return sum(1 for _, n in self.root.walk() if n.verdict is Verdict.BAD)

    @property
    def depth(self) -> int:
        """Length of the longest chain of blow-ups."""
        return max(
            (d + 1 for d, n in self.root.walk() if n.verdict is Verdict.BAD),
            default=0,
        )

    def leaves(self) -> list[ResolutionNode]:
        return [n for _, n in self.root.walk() if not n.children]

    def gamma_chain(self, side: str = "left") -> list[FiberType]:
        """Gamma types met by following one original branch down the tree."""
        out, node = [], self.root
        branch = getattr(node.collision, side)
        while node.verdict is Verdict.BAD:
            out.append(node.outcome.gamma_type)
            nxt = [c for c in node.children if c.collision.left == branch]
            if not nxt:
                break
            node = nxt[0]
        return out

    def to_dict(self) -> dict:
        return {
            "blowups": self.blowup_count,
            "floor_beta": self.floor_beta,
            "tree": self.root.to_dict(),
        }

    def render(self) -> str:
        lines = []
        for depth, node in self.root.walk():
            o = node.outcome
            lines.append(
                "  " * depth
                + f"{node.collision}: beta={o.beta}, a(Gamma)={o.a_gamma}, "
                f"alpha={o.alpha}, delta={o.delta}, Gamma: {o.gamma_type} "
                f"[{node.verdict.value}]"
            )
        return "\n".join(lines)


def resolve(left, right=None, max_depth: int = 64, **kw) -> ResolutionTree:
    """Blow up bad collisions until every remaining collision is good.

    After a blow-up the strict transforms of the two branches are disjoint
    and each meets Gamma once; contacts with a smooth Gamma (type I0) are
    not collisions and are dropped.
    """
    inp = _section_input(left, right, kw)

    def build(c: CollisionInput, depth: int) -> ResolutionNode:
        outcome = collide(c)
        if outcome.alpha < 1:
            return ResolutionNode(c, outcome, Verdict.GOOD)
        if depth >= max_depth:
            raise BudgetExhausted(f"resolution of {inp} deeper than {max_depth}")
        g = outcome.gamma_type
        children = ()
        if not g.is_smooth:
            children = tuple(
                build(CollisionInput(branch, g), depth + 1) for branch in (c.left, c.right)
            )
        return ResolutionNode(c, outcome, Verdict.BAD, children)

    return ResolutionTree(build(inp, 0))


def blowup_count(left, right=None, **kw) -> int:
    return resolve(left, right, **kw).blowup_count


# Row and column layouts of the collision tables.  Only the layout is fixed
# here; every cell is recomputed by collide().
COR46_J1 = ([III_STAR, I_star(0), III], [III, I_star(0), III_STAR])
COR46_J0 = (
    [II_STAR, IV_STAR, I_star(0), IV, II],
    [II, IV, I_star(0), IV_STAR, II_STAR],
)


def cor46_table(rows, cols) -> list[list[CollisionOutcome]]:
    return [[collide(r, c) for c in cols] for r in rows]


# (row, column, number of filled cells per row) for the Miranda table
MIRANDA_BLOCKS = [
    (COR46_J0[0], COR46_J0[1], [5, 4, 3, 2, 1]),
    (COR46_J1[0], COR46_J1[1], [3, 2, 1]),
]
# symbolic parameters of the I_a / I*_b block; powers of two keep sums readable
PARAM_VALUES = {"a": 1, "b": 2, "c": 4, "d": 8}


def _param_label(n: int) -> str:
    letters = [k for k, v in PARAM_VALUES.items() if n & v]
    return "+".join(letters) if letters else "0"


def symbolic_label(t: FiberType) -> str:
    """Label of a Gamma type computed from the sample parameter values."""
    if t.kind is Kind.I:
        return f"I_{{{_param_label(t.b)}}}"
    if t.kind is Kind.ISTAR:
        return f"I*_{{{_param_label(t.b)}}}"
    return str(t)


@dataclass(frozen=True)
class TableCell:
    row: str
    col: str
    outcome: CollisionOutcome
    verdict: Verdict
    label: str
    block: int = 0


def miranda_cells() -> list[TableCell]:
    """Every filled cell of the Miranda collision table, recomputed."""
    out = []
    for block, (rows, cols, counts) in enumerate(MIRANDA_BLOCKS):
        for r, k in zip(rows, counts):
            for c in cols[:k]:
                o = collide(r, c)
                out.append(TableCell(str(r), str(c), o, classify_collision(r, c), str(o.gamma_type), block))
    p = PARAM_VALUES
    for rname, r in (("I*_b", I_star(p["b"])), ("I_a", I(p["a"]))):
        for cname, c in (("I_c", I(p["c"])), ("I*_d", I_star(p["d"]))):
            o = collide(r, c)
            out.append(
                TableCell(rname, cname, o, classify_collision(r, c), symbolic_label(o.gamma_type), 2)
            )
    return out

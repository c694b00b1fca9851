"""Weierstrass data ``y^2 = x^3 + a(s,t) x + b(s,t)`` over a surface chart.

The discriminant ``4a^3 + 27b^2`` is resolved to simple normal crossings by
point blow-ups.  Each blow-up is followed in the two standard charts; every
divisor met on the way (components of the original discriminant and the
exceptional curves) gets a Kodaira type from its vanishing orders, and the
crossings that remain at the end are handed to the collision calculus.

Polynomial factorisation and the location of singular points are delegated
to sympy; everything else is exact arithmetic on :class:`BivariatePoly`.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction

import sympy

from . import collision as coll
from .errors import (
    BudgetExhausted,
    DegenerateFibration,
    EllflatError,
    IrrationalCenter,
    NonMinimal,
    NonMinimalModel,
)
from .kodaira import FiberType, classify_from_orders, lambda_coefficient, pole_order
from .polynomial import BivariatePoly, parse_poly

DEFAULT_MAX_BLOWUPS = 24

_S, _T = sympy.symbols("s t")


class Chart(enum.Enum):
    S_OVER_T = "SOverT"  # (s, t) -> (s, s*t); exceptional curve s = 0
    T_OVER_S = "TOverS"  # (s, t) -> (s*t, t); exceptional curve t = 0


def _poly(x) -> BivariatePoly:
    return BivariatePoly.coerce(x)


def discriminant(a, b) -> BivariatePoly:
    a, b = _poly(a), _poly(b)
    return (a ** 3).scale(4) + (b ** 2).scale(27)


@dataclass(frozen=True)
class JInvariant:
    """J = numerator / denominator, kept unreduced."""

    numerator: BivariatePoly
    denominator: BivariatePoly

    def is_defined_at_origin(self) -> bool:
        return bool(self.numerator.constant_term) or bool(self.denominator.constant_term)

    def constant_value(self) -> Fraction | None:
        """The value of J when it is constant, else None."""
        num, den = self.numerator, self.denominator
        for (i, j), c in den.items():
            ratio = num.coefficient(i, j) / c
            break
        if num == den.scale(ratio):
            return ratio
        return None

    def order_along(self, axis: str) -> int:
        """Order of J along an axis; negative for a pole."""
        if self.numerator.is_zero:
            return math.inf
        return self.numerator.vanishing_order(axis) - self.denominator.vanishing_order(axis)


def j_invariant(a, b) -> JInvariant:
    a, b = _poly(a), _poly(b)
    delta = discriminant(a, b)
    if delta.is_zero:
        raise DegenerateFibration("4a^3 + 27b^2 vanishes identically")
    return JInvariant((a ** 3).scale(4), delta)


def vanishing_order(f, axis: str) -> int:
    return _poly(f).vanishing_order(axis)


def multiplicity_at_origin(f) -> int:
    return _poly(f).multiplicity_at_origin()


def _chart_map(f: BivariatePoly, chart: Chart) -> BivariatePoly:
    S, T = BivariatePoly.s(), BivariatePoly.t()
    if chart is Chart.S_OVER_T:
        return f.compose(S, S * T)
    return f.compose(S * T, T)


def blow_up_chart(f, chart: Chart | str) -> tuple[BivariatePoly, int, BivariatePoly]:
    """Total transform, exceptional order and strict transform of ``f``."""
    f, chart = _poly(f), Chart(chart)
    m = f.multiplicity_at_origin()
    total = _chart_map(f, chart)
    strict = total.divide_monomial(m, 0) if chart is Chart.S_OVER_T else total.divide_monomial(0, m)
    return total, m, strict


def snc_at_origin(branches) -> bool:
    """Local normal-crossing test for the branches through the origin.

    The product of the branches must have multiplicity at most one, or
    multiplicity two with a nondegenerate tangent cone (two distinct lines).
    """
    through = [_poly(f) for f in branches if not _poly(f).constant_term]
    if not through:
        return True
    prod = BivariatePoly.constant(1)
    for f in through:
        prod = prod * f
    m = prod.multiplicity_at_origin()
    if m <= 1:
        return True
    if m > 2:
        return False
    q = prod.lowest_form()
    A, B, C = q.coefficient(2, 0), q.coefficient(1, 1), q.coefficient(0, 2)
    return B * B - 4 * A * C != 0


# sympy bridges -----------------------------------------------------------


def _to_sympy(f: BivariatePoly) -> sympy.Poly:
    return sympy.Poly(
        sum((sympy.Rational(c.numerator, c.denominator) * _S ** i * _T ** j for (i, j), c in f.items()), sympy.Integer(0)),
        _S,
        _T,
        domain="QQ",
    )


def _from_sympy(p: sympy.Poly) -> BivariatePoly:
    p = sympy.Poly(p, _S, _T, domain="QQ")
    return BivariatePoly(
        {(i, j): _rational(c) for (i, j), c in p.terms()}
    )


def _valuation(f: BivariatePoly, p: sympy.Poly):
    if f.is_zero:
        return math.inf
    g, k = _to_sympy(f), 0
    while True:
        q, r = g.div(p)
        if not r.is_zero:
            return k
        g, k = q, k + 1


def _univariate_factors(coeffs: dict[int, Fraction]):
    """Factor a polynomial in one variable given as ``{exp: coeff}``."""
    x = sympy.Symbol("x")
    expr = sum((sympy.Rational(c.numerator, c.denominator) * x ** e for e, c in coeffs.items()), sympy.Integer(0))
    _, factors = sympy.factor_list(sympy.Poly(expr, x, domain="QQ"))
    return factors


def _is_zero_algebraic(value) -> bool:
    value = sympy.nsimplify(value) if value.is_Float else value
    if value == 0:
        return True
    x = sympy.Symbol("x")
    return sympy.minimal_polynomial(value, x) == x


# report types ------------------------------------------------------------


@dataclass(frozen=True)
class DivisorReport:
    name: str
    exceptional: bool
    ord_a: int | float
    ord_b: int | float
    ord_delta: int
    fiber_type: FiberType
    lambda_coefficient: Fraction
    polynomial: str | None = None
    degree: int = 0

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "exceptional": self.exceptional,
            "ord_a": _ord_json(self.ord_a),
            "ord_b": _ord_json(self.ord_b),
            "ord_delta": self.ord_delta,
            "fiber_type": str(self.fiber_type),
            "lambda_coefficient": str(self.lambda_coefficient),
            "polynomial": self.polynomial,
        }


def _ord_json(x):
    return "inf" if x == math.inf else x


@dataclass(frozen=True)
class BlowUpStep:
    index: int
    exceptional: str
    location: str
    multiplicities: dict[str, int]
    pulled_back_coefficient: Fraction
    lambda_coefficient: Fraction
    pulled_back_pole: int
    pole: int

    @property
    def pullback_holds(self) -> bool:
        """Coefficient of the new curve in the pulled-back boundary divisor
        equals its own boundary coefficient."""
        return self.pulled_back_coefficient == self.lambda_coefficient

    @property
    def j_pole_pullback_holds(self) -> bool:
        return self.pulled_back_pole == self.pole

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "exceptional": self.exceptional,
            "location": self.location,
            "multiplicities": dict(self.multiplicities),
            "pulled_back_coefficient": str(self.pulled_back_coefficient),
            "lambda_coefficient": str(self.lambda_coefficient),
            "pullback_holds": self.pullback_holds,
            "pulled_back_pole": self.pulled_back_pole,
            "pole": self.pole,
            "j_pole_pullback_holds": self.j_pole_pullback_holds,
        }


@dataclass(frozen=True)
class CollisionPoint:
    """A normal-crossing double point of the discriminant.

    ``count`` is the number of conjugate points when the crossing is not
    defined over the rationals.
    """

    left: str
    right: str
    location: str
    count: int = 1


@dataclass
class BaseChart:
    a: BivariatePoly
    b: BivariatePoly
    exceptional_axes: dict[str, str | None]
    location: str
    children: list[BaseChart] = field(default_factory=list)

    @property
    def delta(self) -> BivariatePoly:
        return discriminant(self.a, self.b)

    def to_dict(self) -> dict:
        return {
            "location": self.location,
            "a": str(self.a),
            "b": str(self.b),
            "exceptional_axes": dict(self.exceptional_axes),
            "children": [c.to_dict() for c in self.children],
        }


@dataclass(frozen=True)
class BaseResolution:
    a: BivariatePoly
    b: BivariatePoly
    divisors: tuple[DivisorReport, ...]
    steps: tuple[BlowUpStep, ...]
    collisions: tuple[CollisionPoint, ...]
    snc: bool
    charts: tuple[BaseChart, ...]

    @property
    def blowups(self) -> int:
        return len(self.steps)

    def divisor(self, name: str) -> DivisorReport:
        for d in self.divisors:
            if d.name == name:
                return d
        raise KeyError(name)

    def exceptional_types(self) -> list[FiberType]:
        return [d.fiber_type for d in self.divisors if d.exceptional]

    def surface(self):
        """Replay the blow-ups on a projective plane containing the divisors.

        Original discriminant components become curves of class
        ``degree * h``; only intersection numbers with exceptional curves
        matter for the contraction tests, and those are local.
        """
        from .logsurface import MarkedComponent, lambda_of, projective_plane

        curves = {d.name: {"h": d.degree} for d in self.divisors if not d.exceptional}
        s = projective_plane(curves)
        for step in self.steps:
            s = s.blow_up(step.multiplicities, name=step.exceptional)
        lam = lambda_of([MarkedComponent(d.name, d.fiber_type) for d in self.divisors])
        return s, s.curve_divisor(lam)

    def to_dict(self) -> dict:
        return {
            "a": str(self.a),
            "b": str(self.b),
            "divisors": [d.to_dict() for d in self.divisors],
            "collisions": [c.to_dict() for c in collision_report(self)],
            "steps": [s.to_dict() for s in self.steps],
            "snc": self.snc,
            "blowups": self.blowups,
        }


# the resolution driver ---------------------------------------------------


@dataclass
class _LocalChart:
    a: BivariatePoly
    b: BivariatePoly
    tracked: dict[str, BivariatePoly]  # strict transforms of original components
    axes: dict[str, str | None]  # exceptional curve lying on s = 0 / t = 0
    location: str

    def translate(self, t0: Fraction) -> _LocalChart:
        return _LocalChart(
            self.a.translate(0, t0),
            self.b.translate(0, t0),
            {k: p.translate(0, t0) for k, p in self.tracked.items()},
            {"s": self.axes["s"], "t": self.axes["t"] if t0 == 0 else None},
            f"{self.location}, t={t0}" if t0 else self.location,
        )


class _Driver:
    def __init__(self, a, b, max_blowups, lambdas, poles):
        self.a, self.b = a, b
        self.max_blowups = max_blowups
        self.lambdas = lambdas
        self.poles = poles
        self.divisors: list[DivisorReport] = []
        self.steps: list[BlowUpStep] = []
        self.collisions: list[CollisionPoint] = []

    def classify(self, name, oa, ob, od) -> FiberType:
        try:
            return classify_from_orders(oa, ob, od)
        except NonMinimal as exc:
            raise NonMinimalModel(f"divisor {name}: {exc}") from exc

    def branches(self, ch: _LocalChart) -> list[tuple[str, BivariatePoly]]:
        out = [(ch.axes[ax], BivariatePoly.s() if ax == "s" else BivariatePoly.t())
               for ax in ("s", "t") if ch.axes[ax]]
        out += [(k, p) for k, p in ch.tracked.items() if not p.constant_term]
        return out

    def visit(self, ch: _LocalChart) -> BaseChart:
        node = BaseChart(ch.a, ch.b, dict(ch.axes), ch.location)
        branches = self.branches(ch)
        if snc_at_origin([p for _, p in branches]):
            if len(branches) == 2:
                self.collisions.append(CollisionPoint(branches[0][0], branches[1][0], ch.location))
            elif len(branches) == 1 and branches[0][1].multiplicity_at_origin() == 2:
                name = branches[0][0]
                self.collisions.append(CollisionPoint(name, name, ch.location))
            return node
        node.children = self.blow_up(ch, branches)
        return node

    def blow_up(self, ch: _LocalChart, branches) -> list[BaseChart]:
        if len(self.steps) >= self.max_blowups:
            raise BudgetExhausted(f"more than {self.max_blowups} blow-ups needed")
        name = f"E{len(self.steps) + 1}"
        mults = {k: p.multiplicity_at_origin() for k, p in branches}

        a1, b1 = _chart_map(ch.a, Chart.S_OVER_T), _chart_map(ch.b, Chart.S_OVER_T)
        oa = a1.vanishing_order("s") if a1 else math.inf
        ob = b1.vanishing_order("s") if b1 else math.inf
        od = discriminant(a1, b1).vanishing_order("s")
        ftype = self.classify(name, oa, ob, od)
        lam = lambda_coefficient(ftype)
        self.divisors.append(DivisorReport(name, True, oa, ob, od, ftype, lam))
        self.steps.append(
            BlowUpStep(
                len(self.steps) + 1,
                name,
                ch.location,
                mults,
                sum((m * self.lambdas[k] for k, m in mults.items()), Fraction(0)),
                lam,
                sum(m * self.poles[k] for k, m in mults.items()),
                pole_order(ftype),
            )
        )
        self.lambdas[name] = lam
        self.poles[name] = pole_order(ftype)

        children = []
        for chart in Chart:
            tracked = {}
            for k, p in ch.tracked.items():
                _, _, strict = blow_up_chart(p, chart)
                tracked[k] = strict
            if chart is Chart.S_OVER_T:
                axes = {"s": name, "t": ch.axes["t"]}
            else:
                axes = {"s": ch.axes["s"], "t": name}
            sub = _LocalChart(
                _chart_map(ch.a, chart), _chart_map(ch.b, chart), tracked, axes,
                f"{ch.location} > {name}:{chart.value}",
            )
            if chart is Chart.T_OVER_S:
                # only the origin of this chart is missing from the other one
                children.append(self.visit(sub))
                continue
            for t0 in self.points_on_exceptional(sub, name):
                children.append(self.visit(sub.translate(t0)))
        return children

    def points_on_exceptional(self, ch: _LocalChart, name: str) -> list[Fraction]:
        """Rational points of ``s = 0`` where another divisor meets it.

        Crossings at irrational points are transverse when the restricted
        equation has a simple irreducible factor there; they are recorded
        directly.  Anything else raises :class:`IrrationalCenter`.
        """
        points = {Fraction(0)} if ch.axes["t"] else set()
        seen_irrational = {}
        for k, p in ch.tracked.items():
            restricted = p.restrict("s")
            if not restricted:
                continue
            for fac, mult in _univariate_factors(restricted):
                deg = fac.degree()
                if deg == 0:
                    continue
                if deg == 1:
                    c1, c0 = fac.all_coeffs()
                    points.add(_rational(-c0 / c1))
                    continue
                key = fac.monic()
                if mult > 1 or key in seen_irrational:
                    raise IrrationalCenter(
                        f"non-transverse crossing on {name} at the roots of {fac.as_expr()}"
                    )
                seen_irrational[key] = k
                self.collisions.append(
                    CollisionPoint(name, k, f"{ch.location}, roots of {fac.as_expr()}", deg)
                )
        return sorted(points)


def _rational(v) -> Fraction:
    v = sympy.Rational(v)
    return Fraction(int(v.p), int(v.q))


def analyze(a, b, max_blowups: int = DEFAULT_MAX_BLOWUPS) -> BaseResolution:
    """Blow up the base until the discriminant has normal crossings."""
    a, b = _poly(a), _poly(b)
    delta = discriminant(a, b)
    if delta.is_zero:
        raise DegenerateFibration("4a^3 + 27b^2 vanishes identically")

    _, factors = sympy.factor_list(_to_sympy(delta))
    divisors, lambdas, poles, tracked = [], {}, {}, {}
    for idx, (p, e) in enumerate(factors, start=1):
        name = f"D{idx}"
        try:
            ftype = classify_from_orders(_valuation(a, p), _valuation(b, p), e)
        except NonMinimal as exc:
            raise NonMinimalModel(f"divisor {name}: {exc}") from exc
        bp = _from_sympy(p)
        divisors.append(
            DivisorReport(
                name, False, _valuation(a, p), _valuation(b, p), e, ftype,
                lambda_coefficient(ftype), str(bp), bp.degree,
            )
        )
        lambdas[name] = lambda_coefficient(ftype)
        poles[name] = pole_order(ftype)
        tracked[name] = bp

    driver = _Driver(a, b, max_blowups, lambdas, poles)
    driver.divisors = divisors
    charts = []
    rational, irrational = _singular_points(tracked)
    for sv, tv, names in irrational:
        left, right = (names * 2)[:2] if len(names) == 1 else names
        driver.collisions.append(CollisionPoint(left, right, f"(s,t)=({sv},{tv})"))
    for s0, t0 in rational:
        loc = _LocalChart(
            a.translate(s0, t0), b.translate(s0, t0),
            {k: p.translate(s0, t0) for k, p in tracked.items()},
            {"s": None, "t": None},
            f"(s,t)=({s0},{t0})",
        )
        charts.append(driver.visit(loc))
    return BaseResolution(
        a, b, tuple(driver.divisors), tuple(driver.steps), tuple(driver.collisions), True, tuple(charts)
    )


def _singular_points(tracked: dict[str, BivariatePoly]):
    """Singular points of the reduced discriminant.

    Returns the rational points, which get blown up if needed, and the
    irrational ones as ``(s, t, branch names)``.  Irrational points are
    accepted only when they are ordinary double points; anything worse
    raises IrrationalCenter.
    """
    if not tracked:
        return [], []
    F = sympy.Integer(1)
    for p in tracked.values():
        F = F * _to_sympy(p).as_expr()
    F = sympy.expand(F)
    if sympy.Poly(F, _S, _T).total_degree() < 2:
        return [], []
    system = [F, sympy.diff(F, _S), sympy.diff(F, _T)]
    sols = sympy.solve(system, [_S, _T], dict=True)
    rational, irrational = set(), []
    for sol in sols:
        sv, tv = sol.get(_S, _S), sol.get(_T, _T)
        if sv.free_symbols or tv.free_symbols:
            raise IrrationalCenter(f"positive-dimensional singular locus {sol}")
        if sv.is_Rational and tv.is_Rational:
            rational.add((_rational(sv), _rational(tv)))
            continue
        hess = [sympy.diff(F, _S, 2), sympy.diff(F, _S, _T), sympy.diff(F, _T, 2)]
        vals = [h.subs({_S: sv, _T: tv}) for h in hess]
        det = sympy.expand(vals[0] * vals[2] - vals[1] ** 2)
        if _is_zero_algebraic(det):
            raise IrrationalCenter(f"non-normal-crossing point at (s,t)=({sv},{tv})")
        names = [
            k for k, p in tracked.items()
            if _is_zero_algebraic(sympy.expand(_to_sympy(p).as_expr().subs({_S: sv, _T: tv})))
        ]
        irrational.append((sv, tv, names))
    irrational.sort(key=lambda x: (str(x[0]), str(x[1])))
    return sorted(rational), irrational


# collision hand-off ------------------------------------------------------


@dataclass(frozen=True)
class CollisionVerdict:
    point: CollisionPoint
    left_type: FiberType
    right_type: FiberType
    outcome: coll.CollisionOutcome | None
    verdict: coll.Verdict | None
    error: str | None = None

    def to_dict(self) -> dict:
        return {
            "left": self.point.left,
            "right": self.point.right,
            "left_type": str(self.left_type),
            "right_type": str(self.right_type),
            "location": self.point.location,
            "count": self.point.count,
            "verdict": self.verdict.value if self.verdict else None,
            "outcome": self.outcome.to_dict() if self.outcome else None,
            "error": self.error,
        }


def collision_report(resolution: BaseResolution) -> list[CollisionVerdict]:
    """Collision verdict for every remaining double point."""
    out = []
    for pt in resolution.collisions:
        lt = resolution.divisor(pt.left).fiber_type
        rt = resolution.divisor(pt.right).fiber_type
        try:
            outcome = coll.collide(lt, rt)
            verdict = coll.classify_collision(lt, rt)
            out.append(CollisionVerdict(pt, lt, rt, outcome, verdict))
        except EllflatError as exc:
            out.append(CollisionVerdict(pt, lt, rt, None, None, type(exc).__name__))
    return out


def parse_weierstrass(a_text: str, b_text: str) -> tuple[BivariatePoly, BivariatePoly]:
    return parse_poly(a_text), parse_poly(b_text)

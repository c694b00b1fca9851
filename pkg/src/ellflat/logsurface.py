"""Divisor classes on a combinatorial surface and the log-contraction tests.

A :class:`Surface` is a lattice of named classes with an integer
intersection form and a canonical class.  Blow-ups append an exceptional
class ``E`` orthogonal to everything already there, so every basis vector
is a total transform and pulling a divisor back changes nothing in its
coordinates; pushing forward along the contraction of ``E`` drops the
``E`` coordinate.

Named curves (components of the discriminant, earlier exceptional curves)
are tracked separately by their strict-transform classes.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import Inconsistent, InvalidMultiplicity, NotExceptional, UnknownClass
from .kodaira import FiberType, lambda_coefficient


class QDivisor(Mapping[str, Fraction]):
    """Finitely supported rational combination of class names."""

    __slots__ = ("_c",)

    def __init__(self, coefficients: Mapping[str, object] | Iterable = ()):
        items = coefficients.items() if isinstance(coefficients, Mapping) else coefficients
        clean: dict[str, Fraction] = {}
        for name, c in items:
            clean[name] = clean.get(name, Fraction(0)) + Fraction(c)
        self._c = {k: v for k, v in clean.items() if v}

    @classmethod
    def of(cls, name: str, coeff=1) -> QDivisor:
        return cls({name: coeff})

    def __getitem__(self, name: str) -> Fraction:
        return self._c.get(name, Fraction(0))

    def __iter__(self):
        return iter(self._c)

    def __len__(self) -> int:
        return len(self._c)

    def __contains__(self, name) -> bool:
        return name in self._c

    def __eq__(self, other) -> bool:
        if isinstance(other, QDivisor):
            return self._c == other._c
        if isinstance(other, Mapping):
            return self == QDivisor(other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def __add__(self, other: Mapping) -> QDivisor:
        return QDivisor(list(self._c.items()) + list(QDivisor(other)._c.items()))

    def __neg__(self) -> QDivisor:
        return QDivisor({k: -v for k, v in self._c.items()})

    def __sub__(self, other: Mapping) -> QDivisor:
        return self + (-QDivisor(other))

    def __mul__(self, c) -> QDivisor:
        return QDivisor({k: v * Fraction(c) for k, v in self._c.items()})

    __rmul__ = __mul__

    def without(self, name: str) -> QDivisor:
        return QDivisor({k: v for k, v in self._c.items() if k != name})

    def to_dict(self) -> dict[str, str]:
        return {k: str(v) for k, v in sorted(self._c.items())}

    def __str__(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for k, v in self._c.items():
            mag = abs(v)
            body = k if mag == 1 else f"({mag}){k}"
            parts.append(("- " if v < 0 else "+ ") + body)
        out = " ".join(parts)
        return out[2:] if out.startswith("+ ") else "-" + out[2:]

    def __repr__(self) -> str:
        return f"QDivisor({self.to_dict()})"


@dataclass(frozen=True)
class BlowUpRecord:
    exceptional: str
    center: str
    multiplicities: Mapping[str, int] = field(default_factory=dict)


@dataclass(frozen=True, eq=False)
class Surface:
    """Immutable snapshot; every operation returns a new surface."""

    basis: tuple[str, ...]
    gram: tuple[tuple[int, ...], ...]
    canonical: QDivisor
    history: tuple[BlowUpRecord, ...] = ()
    curves: Mapping[str, QDivisor] = field(default_factory=dict)

    def __post_init__(self):
        n = len(self.basis)
        if len(set(self.basis)) != n:
            raise Inconsistent("duplicate class names in basis")
        if len(self.gram) != n or any(len(row) != n for row in self.gram):
            raise Inconsistent("gram matrix does not match the basis")
        for i in range(n):
            for j in range(n):
                if self.gram[i][j] != self.gram[j][i]:
                    raise Inconsistent("gram matrix is not symmetric")
        for name in list(self.canonical) + [k for c in self.curves.values() for k in c]:
            if name not in self.basis:
                raise UnknownClass(name)
        for rec in self.history:
            if rec.exceptional not in self.basis:
                raise UnknownClass(rec.exceptional)
        object.__setattr__(self, "_index", {k: i for i, k in enumerate(self.basis)})

    # lookup -------------------------------------------------------------
    @property
    def exceptional_classes(self) -> tuple[str, ...]:
        return tuple(r.exceptional for r in self.history)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownClass(name) from None

    def curve_class(self, name: str) -> QDivisor:
        """Strict-transform class of a tracked curve, else the basis class."""
        if name in self.curves:
            return self.curves[name]
        self.index(name)
        return QDivisor.of(name)

    strict_transform = curve_class

    def expand(self, d: Mapping | str, prefer_curves: bool = False) -> QDivisor:
        """Rewrite ``d`` in basis coordinates.

        Basis names stand for basis classes and other names for the
        strict transforms of tracked curves.  With ``prefer_curves`` a name
        that is both (an exceptional curve blown up again later) means the
        curve; use it for divisors made of curves, such as a boundary.
        """
        if isinstance(d, str):
            d = QDivisor.of(d)
        out = QDivisor()
        for name, c in QDivisor(d).items():
            if name in self.curves and (prefer_curves or name not in self._index):
                out = out + self.curves[name] * c
            else:
                self.index(name)
                out = out + QDivisor.of(name, c)
        return out

    def curve_divisor(self, d: Mapping | str) -> QDivisor:
        """Basis coordinates of a combination of named curves."""
        return self.expand(d, prefer_curves=True)

    def pair(self, d1: Mapping | str, d2: Mapping | str) -> Fraction:
        e1, e2 = self.expand(d1), self.expand(d2)
        total = Fraction(0)
        for n1, c1 in e1.items():
            row = self.gram[self.index(n1)]
            for n2, c2 in e2.items():
                total += c1 * c2 * row[self.index(n2)]
        return total

    # blow-ups -------------------------------------------------------------
    def blow_up(
        self,
        multiplicities: Mapping[str, int] | None = None,
        name: str | None = None,
        center: str | None = None,
    ) -> Surface:
        """Blow up a point lying on the named curves with the given multiplicities."""
        multiplicities = dict(multiplicities or {})
        for k, m in multiplicities.items():
            if not isinstance(m, int) or m < 0:
                raise InvalidMultiplicity(f"multiplicity of {k} must be a non-negative integer, got {m!r}")
            self.curve_class(k)
        if name is None:
            name = f"E{len(self.history) + 1}"
            while name in self._index or name in self.curves:
                name += "'"
        if name in self._index or name in self.curves:
            raise Inconsistent(f"class name {name} already in use")
        n = len(self.basis)
        gram = tuple(row + (0,) for row in self.gram) + ((0,) * n + (-1,),)
        curves = dict(self.curves)
        for k, m in multiplicities.items():
            if m:
                curves[k] = self.curve_class(k) - QDivisor.of(name, m)
        rec = BlowUpRecord(name, center or "point", {k: m for k, m in multiplicities.items() if m})
        return Surface(
            self.basis + (name,),
            gram,
            self.canonical + QDivisor.of(name),
            self.history + (rec,),
            curves,
        )

    def pullback(self, d: Mapping | str) -> QDivisor:
        """Pull back from the surface before the last blow-up (identity in coordinates)."""
        return self.expand(d)

    def is_contractible(self, gamma: str) -> bool:
        """Whether the exceptional curve ``gamma`` is currently a (-1)-curve."""
        if gamma not in self.exceptional_classes:
            return False
        i = self.index(gamma)
        if self.gram[i][i] != -1 or any(self.gram[i][j] for j in range(len(self.basis)) if j != i):
            return False
        return self.curve_class(gamma) == QDivisor.of(gamma)

    def _check_exceptional(self, gamma: str):
        if gamma not in self.exceptional_classes:
            raise NotExceptional(f"{gamma} is not an exceptional class of a recorded blow-up")
        i = self.index(gamma)
        if self.gram[i][i] != -1:
            raise NotExceptional(f"{gamma} has self-intersection {self.gram[i][i]}, not -1")

    def pushforward(self, d: Mapping | str, gamma: str) -> QDivisor:
        self._check_exceptional(gamma)
        return self.expand(d).without(gamma)

    def contract(self, gamma: str) -> Surface:
        if not self.is_contractible(gamma):
            raise NotExceptional(f"{gamma} is not a contractible (-1)-curve")
        i = self.index(gamma)
        keep = [j for j in range(len(self.basis)) if j != i]
        curves = {k: c.without(gamma) for k, c in self.curves.items() if k != gamma}
        return Surface(
            tuple(self.basis[j] for j in keep),
            tuple(tuple(self.gram[r][c] for c in keep) for r in keep),
            self.canonical.without(gamma),
            tuple(r for r in self.history if r.exceptional != gamma),
            curves,
        )

    # serialisation ----------------------------------------------------------
    def to_dict(self) -> dict:
        return {
            "basis": list(self.basis),
            "gram": [list(r) for r in self.gram],
            "canonical": self.canonical.to_dict(),
            "exceptional": list(self.exceptional_classes),
            "curves": {k: v.to_dict() for k, v in sorted(self.curves.items())},
        }


def projective_plane(curves: Mapping[str, Mapping] | None = None, line: str = "h") -> Surface:
    """P^2 with hyperplane class ``line`` and optional named curves."""
    tracked = {k: QDivisor(v) for k, v in (curves or {}).items()}
    return Surface((line,), ((1,),), QDivisor.of(line, -3), (), tracked)


# boundary divisor and contraction tests -------------------------------------


@dataclass(frozen=True)
class MarkedComponent:
    class_name: str
    fiber_type: FiberType
    is_in_sigma: bool | None = None

    def __post_init__(self):
        if isinstance(self.fiber_type, str):
            object.__setattr__(self, "fiber_type", FiberType.parse(self.fiber_type))
        smooth = self.fiber_type.is_smooth
        if self.is_in_sigma is None:
            object.__setattr__(self, "is_in_sigma", not smooth)
        elif self.is_in_sigma == smooth:
            raise Inconsistent(
                f"{self.class_name}: is_in_sigma={self.is_in_sigma} contradicts type {self.fiber_type}"
            )


def lambda_of(components: Iterable[MarkedComponent]) -> QDivisor:
    out = QDivisor()
    for comp in components:
        out = out + QDivisor.of(comp.class_name, lambda_coefficient(comp.fiber_type))
    return out


def delta_of_contraction(s: Surface, lam: Mapping, gamma: str) -> Fraction:
    """delta = -(K + lam) . gamma for an exceptional (-1)-class gamma."""
    s._check_exceptional(gamma)
    return -s.pair(s.canonical + s.expand(lam), gamma)


def is_log_extremal(s: Surface, lam: Mapping, gamma: str) -> bool:
    return delta_of_contraction(s, lam, gamma) > 0


class MMPStatus(enum.Enum):
    MINIMAL = "Minimal"
    NOT_MINIMAL = "NotMinimal"


@dataclass(frozen=True)
class MMPStep:
    contracted: str
    delta: Fraction
    lam_after: QDivisor


@dataclass(frozen=True)
class MMPResult:
    steps: tuple[MMPStep, ...]
    surface: Surface
    lam: QDivisor
    blocked: tuple[str, ...]
    negative: tuple[str, ...]
    status: MMPStatus

    @property
    def contracted(self) -> list[str]:
        return [s.contracted for s in self.steps]

    def to_dict(self) -> dict:
        return {
            "contracted": self.contracted,
            "steps": [
                {"contracted": s.contracted, "delta": str(s.delta), "lambda": s.lam_after.to_dict()}
                for s in self.steps
            ],
            "blocked": list(self.blocked),
            "negative_remaining": list(self.negative),
            "status": self.status.value,
            "surface": self.surface.to_dict(),
        }


def mmp_drive(s: Surface, lam: Mapping) -> MMPResult:
    """Contract exceptional (-1)-curves on which K + lam is negative.

    Only classes created by recorded blow-ups are tested.  The latest
    blow-up is tried first.  ``blocked`` lists the (-1)-curves left alone
    because K + lam is not negative on them; ``negative`` lists exceptional
    curves that are K + lam negative but not contractible here.
    """
    lam = s.expand(lam)
    steps = []
    while True:
        for gamma in reversed(s.exceptional_classes):
            if s.is_contractible(gamma) and is_log_extremal(s, lam, gamma):
                delta = delta_of_contraction(s, lam, gamma)
                lam = s.pushforward(lam, gamma)
                s = s.contract(gamma)
                steps.append(MMPStep(gamma, delta, lam))
                break
        else:
            break
    blocked, negative = [], []
    for gamma in s.exceptional_classes:
        value = s.pair(s.canonical + lam, s.curve_class(gamma))
        if s.is_contractible(gamma):
            blocked.append(gamma)
        elif value < 0:
            negative.append(gamma)
    status = MMPStatus.NOT_MINIMAL if negative else MMPStatus.MINIMAL
    return MMPResult(tuple(steps), s, lam, tuple(blocked), tuple(negative), status)

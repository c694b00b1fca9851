"""Kodaira fiber types and their tabulated invariants.

A fiber type is one of ``I_b, I*_b, II, III, IV, II*, III*, IV*``; the
family ``I_b`` may carry a multiplicity ``m`` (written ``_mI_b``).  All the
per-type data (a-coefficient, Euler number, monodromy representative,
behaviour of J) ignore the multiplicity.
"""
from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import Inconsistent, NonMinimal, ParseError, UnrecognizedClass
from .monodromy import SL2Matrix, parabolic_parameter, rotation_value


class Kind(enum.Enum):
    I = "I"
    ISTAR = "I*"
    II = "II"
    III = "III"
    IV = "IV"
    IISTAR = "II*"
    IIISTAR = "III*"
    IVSTAR = "IV*"


@dataclass(frozen=True)
class FiberType:
    kind: Kind
    b: int = 0
    multiplicity: int = 1

    def __post_init__(self):
        if not isinstance(self.kind, Kind):
            object.__setattr__(self, "kind", Kind(self.kind))
        if self.b < 0:
            raise ParseError(f"negative parameter b={self.b}")
        if self.b and self.kind not in (Kind.I, Kind.ISTAR):
            raise ParseError(f"{self.kind.value} takes no parameter")
        if self.multiplicity < 1:
            raise ParseError("multiplicity must be positive")
        if self.multiplicity > 1 and self.kind is not Kind.I:
            raise ParseError("only I_b fibers can be multiple")

    @classmethod
    def parse(cls, text: str) -> FiberType:
        return parse_fiber_type(text)

    def __str__(self) -> str:
        if self.kind is Kind.I:
            label = f"I{self.b}"
        elif self.kind is Kind.ISTAR:
            label = f"I{self.b}*"
        else:
            label = self.kind.value
        if self.multiplicity > 1:
            return f"m{self.multiplicity}:{label}"
        return label

    def without_multiplicity(self) -> FiberType:
        return FiberType(self.kind, self.b)

    def with_multiplicity(self, m: int) -> FiberType:
        return FiberType(self.kind, self.b, m)

    @property
    def is_smooth(self) -> bool:
        return self.kind is Kind.I and self.b == 0 and self.multiplicity == 1


def I(b: int = 0, m: int = 1) -> FiberType:
    return FiberType(Kind.I, b, m)


def I_star(b: int = 0) -> FiberType:
    return FiberType(Kind.ISTAR, b)


II = FiberType(Kind.II)
III = FiberType(Kind.III)
IV = FiberType(Kind.IV)
II_STAR = FiberType(Kind.IISTAR)
III_STAR = FiberType(Kind.IIISTAR)
IV_STAR = FiberType(Kind.IVSTAR)

_TYPE_RE = re.compile(r"^(?:m(\d+):)?(I(\d+)(\*?)|II\*|III\*|IV\*|II|III|IV)$")


def parse_fiber_type(text: str) -> FiberType:
    """Parse ``"I0"``, ``"I5"``, ``"I3*"``, ``"IV*"``, ``"m3:I0"``..."""
    m = _TYPE_RE.match(text.strip())
    if not m:
        raise ParseError(f"not a fiber type: {text!r}")
    mult = int(m.group(1)) if m.group(1) else 1
    if m.group(3) is not None:
        kind = Kind.ISTAR if m.group(4) else Kind.I
        return FiberType(kind, int(m.group(3)), mult)
    return FiberType(Kind(m.group(2)), 0, mult)


class JKind(enum.Enum):
    ZERO = "zero"
    ONE = "one"
    REGULAR = "regular"
    POLE = "pole"


@dataclass(frozen=True)
class JBehavior:
    kind: JKind
    order: int = 0

    def __str__(self) -> str:
        return f"pole({self.order})" if self.kind is JKind.POLE else self.kind.value


# a_k, chi, matrix rows for the types without parameter
_FIXED = {
    Kind.II: (Fraction(1, 6), 2, ((1, 1), (-1, 0)), JKind.ZERO),
    Kind.IISTAR: (Fraction(5, 6), 10, ((0, -1), (1, 1)), JKind.ZERO),
    Kind.IVSTAR: (Fraction(2, 3), 8, ((-1, -1), (1, 0)), JKind.ZERO),
    Kind.IV: (Fraction(1, 3), 4, ((0, 1), (-1, -1)), JKind.ZERO),
    Kind.III: (Fraction(1, 4), 3, ((0, 1), (-1, 0)), JKind.ONE),
    Kind.IIISTAR: (Fraction(3, 4), 9, ((0, -1), (1, 0)), JKind.ONE),
}

# Table value of chi on the smooth-fiber row; kept for reference only.
# euler_characteristic(I0) is 0 so that smooth fibers drop out of divisor sums.
TABLE_EULER_SMOOTH_ROW = 1


def coefficient_a(t: FiberType) -> Fraction:
    if t.kind is Kind.I:
        return Fraction(0)
    if t.kind is Kind.ISTAR:
        return Fraction(1, 2)
    return _FIXED[t.kind][0]


def euler_characteristic(t: FiberType) -> int:
    if t.kind is Kind.I:
        return t.b
    if t.kind is Kind.ISTAR:
        return t.b + 6
    return _FIXED[t.kind][1]


def monodromy_of(t: FiberType) -> SL2Matrix:
    if t.kind is Kind.I:
        return SL2Matrix(1, t.b, 0, 1)
    if t.kind is Kind.ISTAR:
        return SL2Matrix(-1, -t.b, 0, -1)
    return SL2Matrix.from_rows(_FIXED[t.kind][2])


def pole_order(t: FiberType) -> int:
    """Order of the pole of J along a general point; 0 when J is finite."""
    return t.b if t.kind in (Kind.I, Kind.ISTAR) else 0


def j_behavior_of(t: FiberType) -> JBehavior:
    if t.kind in (Kind.I, Kind.ISTAR):
        if t.b == 0:
            return JBehavior(JKind.REGULAR)
        return JBehavior(JKind.POLE, t.b)
    return JBehavior(_FIXED[t.kind][3])


def lambda_coefficient(t: FiberType) -> Fraction:
    """Coefficient of a divisor of type ``t`` in the boundary divisor."""
    m = t.multiplicity
    return coefficient_a(t) + Fraction(pole_order(t), 12) + Fraction(m - 1, m)


def classify_from_orders(ord_a, ord_b, ord_delta: int) -> FiberType:
    """Kodaira type from the vanishing orders of a, b and 4a^3 + 27b^2.

    ``ord_a`` or ``ord_b`` may be ``math.inf`` when the coefficient is
    identically zero.
    """
    oa, ob, od = ord_a, ord_b, ord_delta
    if min(oa, ob, od) < 0 or od == math.inf:
        raise Inconsistent(f"invalid orders {(oa, ob, od)}")
    if oa >= 4 and ob >= 6:
        raise NonMinimal(f"orders {(oa, ob, od)} are not Kodaira-minimal")
    if od == 0:
        if min(3 * oa, 2 * ob) == 0:
            return I(0)
    elif oa == 0 and ob == 0:
        return I(od)
    elif oa >= 1 and ob == 1 and od == 2:
        return II
    elif oa == 1 and ob >= 2 and od == 3:
        return III
    elif oa >= 2 and ob == 2 and od == 4:
        return IV
    elif (oa == 2 and ob >= 3) or (oa >= 2 and ob == 3):
        if od == 6:
            return I_star(0)
        if oa == 2 and ob == 3 and od > 6:
            return I_star(od - 6)
    elif oa >= 3 and ob == 4 and od == 8:
        return IV_STAR
    elif oa == 3 and ob >= 5 and od == 9:
        return III_STAR
    elif oa >= 4 and ob == 5 and od == 10:
        return II_STAR
    raise Inconsistent(f"orders {(oa, ob, od)} match no Kodaira type")


_BY_ROTATION = {
    Fraction(1, 6): II,
    Fraction(5, 6): II_STAR,
    Fraction(1, 4): III,
    Fraction(3, 4): III_STAR,
    Fraction(1, 3): IV,
    Fraction(2, 3): IV_STAR,
}


def classify_from_monodromy(mat: SL2Matrix, pole_order: int = 0) -> FiberType:
    """Fiber type determined by a monodromy matrix and the pole order of J.

    Parabolic classes are read from the signed parameter of ``+-mat``;
    elliptic classes from the rotation of the fixed point.
    """
    tr = mat.trace
    if abs(tr) < 2:
        if pole_order:
            raise UnrecognizedClass(
                f"elliptic monodromy {mat} cannot carry a pole of order {pole_order}"
            )
        return _BY_ROTATION[rotation_value(mat)]
    if abs(tr) > 2:
        raise UnrecognizedClass(f"hyperbolic monodromy {mat}")
    n = parabolic_parameter(mat if tr == 2 else -mat)
    if n != pole_order:
        raise UnrecognizedClass(
            f"monodromy {mat} has parameter {n} but J has a pole of order {pole_order}"
        )
    return I(n) if tr == 2 else I_star(n)


def all_types(max_b: int = 0) -> list[FiberType]:
    """Every unparameterised type plus I_b and I*_b for b <= max_b."""
    out = [I(b) for b in range(max_b + 1)] + [I_star(b) for b in range(max_b + 1)]
    return out + [II, III, IV, IV_STAR, III_STAR, II_STAR]

"""Exact SL(2, Z) arithmetic for monodromy matrices.

Entries are Python integers, so products never overflow.  Elliptic
elements are analysed through their fixed point in the upper half-plane,
kept as an exact element of Q(sqrt(-3)) or Q(i).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import NotSL2, UnrecognizedClass

INFINITE = math.inf


@dataclass(frozen=True)
class SL2Matrix:
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        for x in (self.a, self.b, self.c, self.d):
            if not isinstance(x, int) or isinstance(x, bool):
                raise NotSL2(f"entries must be integers, got {x!r}")
        if self.a * self.d - self.b * self.c != 1:
            raise NotSL2(f"determinant of {self.to_list()} is not 1")

    @classmethod
    def from_rows(cls, rows) -> SL2Matrix:
        (a, b), (c, d) = rows
        return cls(int(a), int(b), int(c), int(d))

    @classmethod
    def identity(cls) -> SL2Matrix:
        return cls(1, 0, 0, 1)

    def __matmul__(self, other: SL2Matrix) -> SL2Matrix:
        return SL2Matrix(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __neg__(self) -> SL2Matrix:
        return SL2Matrix(-self.a, -self.b, -self.c, -self.d)

    def __pow__(self, k: int) -> SL2Matrix:
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        out = SL2Matrix.identity()
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    def inverse(self) -> SL2Matrix:
        return SL2Matrix(self.d, -self.b, -self.c, self.a)

    @property
    def trace(self) -> int:
        return self.a + self.d

    @property
    def is_identity(self) -> bool:
        return self == SL2Matrix.identity()

    @property
    def is_minus_identity(self) -> bool:
        return self == -SL2Matrix.identity()

    @property
    def is_elliptic(self) -> bool:
        return abs(self.trace) < 2

    def to_list(self) -> list[list[int]]:
        return [[self.a, self.b], [self.c, self.d]]

    def __str__(self) -> str:
        return str(self.to_list())


def compose(left: SL2Matrix, right: SL2Matrix) -> SL2Matrix:
    return left @ right


def blowup_monodromy(gamma_x: SL2Matrix, gamma_y: SL2Matrix) -> SL2Matrix:
    """Monodromy around the exceptional curve of the blow-up of a crossing.

    In the chart ``x1 = x0, y1 = y0 / x0`` a loop around the new divisor is
    the loop around ``x0 = 0`` followed by the loop around ``y0 = 0``.
    """
    return gamma_x @ gamma_y


def order_of(m: SL2Matrix):
    """Smallest k >= 1 with m**k == 1, or ``INFINITE``."""
    if m.is_identity:
        return 1
    if m.is_minus_identity:
        return 2
    # elliptic orders are fixed by the trace
    return {0: 4, 1: 6, -1: 3}.get(m.trace, INFINITE)


@dataclass(frozen=True)
class QuadraticPoint:
    """``real + imag * sqrt(radicand) * i`` with rational parts."""

    real: Fraction
    imag: Fraction
    radicand: int

    def to_complex(self) -> complex:
        return complex(float(self.real), float(self.imag) * math.sqrt(self.radicand))


def fixed_point(m: SL2Matrix) -> QuadraticPoint:
    """Fixed point of the Moebius action of an elliptic ``m`` with Im > 0."""
    if not m.is_elliptic:
        raise UnrecognizedClass(f"{m} is not elliptic")
    k = 4 - m.trace ** 2
    # tau = ((a - d) + sign(c) * i * sqrt(k)) / (2c); c != 0 for elliptic m
    return QuadraticPoint(
        Fraction(m.a - m.d, 2 * m.c), Fraction(1, 2 * abs(m.c)), k
    )


def multiplier(m: SL2Matrix) -> QuadraticPoint:
    """The eigenvalue ``c*tau + d`` on the eigenvector ``(tau, 1)``."""
    tau = fixed_point(m)
    return QuadraticPoint(m.c * tau.real + m.d, m.c * tau.imag, tau.radicand)


# quarter, sixth and third turns keyed by 2*cos(angle)
_TURN_BY_TRACE = {1: Fraction(1, 6), 0: Fraction(1, 4), -1: Fraction(1, 3)}


def rotation_value(m: SL2Matrix) -> Fraction:
    """The a-value in [0, 1) of an elliptic matrix.

    The multiplier ``c*tau + d`` equals ``exp(-2 pi i a)``.  Its real part is
    ``trace / 2`` and the sign of its imaginary part separates ``a`` from
    ``1 - a``; both tests are exact.
    """
    mu = multiplier(m)
    assert mu.real == Fraction(m.trace, 2)
    turn = _TURN_BY_TRACE[m.trace]
    return 1 - turn if mu.imag > 0 else turn


def parabolic_parameter(m: SL2Matrix) -> int:
    """Signed n with ``m`` conjugate to [[1, n], [0, 1]] (trace 2 only).

    Writing ``m - 1 = n * (p, q)^T (-q, p)`` gives ``b = n p^2`` and
    ``c = -n q^2``, which fixes both |n| (the content) and its sign.
    """
    if m.trace != 2:
        raise UnrecognizedClass(f"{m} is not parabolic")
    if m.is_identity:
        return 0
    n = math.gcd(m.a - 1, m.b, m.c, m.d - 1)
    if m.b > 0 or (m.b == 0 and m.c < 0):
        return n
    return -n

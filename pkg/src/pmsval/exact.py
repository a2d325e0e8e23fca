"""Exact real numbers of the form a + b*sqrt(d) with rational a, b.

These are the coordinate entries of lexicographic group elements: either
plain rationals (b = 0) or quadratic surds over a squarefree radicand
d >= 2.  All comparisons are exact; no floating point is involved.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Union

from .errors import InvariantError

RationalLike = Union[int, str, Fraction]


def _as_fraction(q: RationalLike) -> Fraction:
    if isinstance(q, Fraction):
        return q
    return Fraction(q)


def split_square(n: int) -> tuple[int, int]:
    """Factor n > 0 as s*s * d with d squarefree; returns (s, d)."""
    if n <= 0:
        raise InvariantError(f"radicand must be positive, got {n}")
    s, d = 1, n
    f = 2
    while f * f <= d:
        while d % (f * f) == 0:
            d //= f * f
            s *= f
        f += 1
    return s, d


def _sign(q: Fraction) -> int:
    return (q > 0) - (q < 0)


def _sign_a_plus_b_sqrt_d(a: Fraction, b: Fraction, d: int) -> int:
    """Exact sign of a + b*sqrt(d) for squarefree d >= 1."""
    if b == 0 or d == 1:
        return _sign(a + b)
    if a == 0:
        return _sign(b)
    sa, sb = _sign(a), _sign(b)
    if sa == sb:
        return sa
    # Opposite signs: the larger of a^2 and b^2*d decides.
    t = a * a - b * b * d
    if t == 0:
        # a = -b*sqrt(d) would make sqrt(d) rational; cannot happen.
        raise InvariantError("squarefree radicand produced a rational surd")
    return sa if t > 0 else sb


@total_ordering
@dataclass(frozen=True)
class ExactReal:
    """Canonical a + b*sqrt(d): b == 0 forces d == 1, else d squarefree >= 2."""

    a: Fraction
    b: Fraction
    d: int

    def __post_init__(self) -> None:
        if self.b == 0:
            if self.d != 1:
                raise InvariantError("rational value must carry radicand 1")
        elif self.d < 2:
            raise InvariantError("surd radicand must be >= 2")

    @staticmethod
    def rational(q: RationalLike) -> "ExactReal":
        return ExactReal(_as_fraction(q), Fraction(0), 1)

    @staticmethod
    def surd(a: RationalLike, b: RationalLike, d: int) -> "ExactReal":
        """Build a + b*sqrt(d), normalizing the square part of d into b."""
        a, b = _as_fraction(a), _as_fraction(b)
        if b == 0:
            return ExactReal.rational(a)
        s, d0 = split_square(d)
        b = b * s
        if d0 == 1:
            return ExactReal.rational(a + b)
        return ExactReal(a, b, d0)

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    @property
    def rational_value(self) -> Fraction:
        if not self.is_rational:
            raise InvariantError(f"{self} is not rational")
        return self.a

    def __add__(self, other: "ExactReal") -> "ExactReal":
        if not isinstance(other, ExactReal):
            return NotImplemented
        if self.is_rational or other.is_rational or self.d == other.d:
            d = max(self.d, other.d)
            return ExactReal.surd(self.a + other.a, self.b + other.b, d)
        raise InvariantError(
            f"cannot add surds over distinct radicands {self.d} and {other.d}"
        )

    def __neg__(self) -> "ExactReal":
        return ExactReal(-self.a, -self.b, self.d)

    def __sub__(self, other: "ExactReal") -> "ExactReal":
        return self + (-other)

    def scaled(self, q: RationalLike) -> "ExactReal":
        q = _as_fraction(q)
        if q == 0:
            return ExactReal.rational(0)
        return ExactReal(self.a * q, self.b * q, self.d if self.b * q else 1)

    def sign(self) -> int:
        return _sign_a_plus_b_sqrt_d(self.a, self.b, self.d)

    def compare(self, other: "ExactReal") -> int:
        """Exact three-way comparison; handles distinct radicands."""
        if self.d == other.d:
            return _sign_a_plus_b_sqrt_d(self.a - other.a, self.b - other.b, self.d)
        if self.is_rational or other.is_rational:
            diff_b, d = (self.b, self.d) if not self.is_rational else (-other.b, other.d)
            return _sign_a_plus_b_sqrt_d(self.a - other.a, diff_b, d)
        return _compare_mixed_surds(self, other)

    def __lt__(self, other: "ExactReal") -> bool:
        if not isinstance(other, ExactReal):
            return NotImplemented
        return self.compare(other) < 0

    def __repr__(self) -> str:
        if self.is_rational:
            return str(self.a)
        head = f"{self.a}+" if self.a else ""
        coef = "" if self.b == 1 else ("-" if self.b == -1 else f"{self.b}*")
        return f"{head}{coef}√{self.d}".replace("+-", "-")


def _compare_mixed_surds(x: ExactReal, y: ExactReal) -> int:
    # x - y = u - r with u = x.b*sqrt(x.d) - y.b*sqrt(y.d) and r = y.a - x.a.
    # u is irrational (distinct squarefree radicands), so ties cannot occur.
    r = y.a - x.a
    su = _sign_sqrt_diff(x.b, x.d, y.b, y.d)
    if r == 0:
        return su
    sr = _sign(r)
    if su != sr:
        return su
    # Same strict sign: compare u^2 with r^2; the sign of u orients the result.
    s, dprod = split_square(x.d * y.d)
    usq_a = x.b * x.b * x.d + y.b * y.b * y.d
    usq_b = Fraction(-2) * x.b * y.b * s
    cmp_sq = _sign_a_plus_b_sqrt_d(usq_a - r * r, usq_b, dprod)
    return cmp_sq if su > 0 else -cmp_sq


def _sign_sqrt_diff(b1: Fraction, d1: int, b2: Fraction, d2: int) -> int:
    """Sign of b1*sqrt(d1) - b2*sqrt(d2) for distinct squarefree d1, d2 >= 2."""
    s1, s2 = _sign(b1), _sign(b2)
    if s1 != s2:
        return s1 if s1 != 0 else -s2
    if s1 == 0:
        return 0
    t = b1 * b1 * d1 - b2 * b2 * d2
    if t == 0:
        raise InvariantError("distinct squarefree radicands cannot collide")
    return s1 if t > 0 else -s1


ZERO = ExactReal.rational(0)
ONE = ExactReal.rational(1)


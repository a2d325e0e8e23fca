"""Lexicographic products of rank-1 ordered groups, with exact arithmetic.

A group descriptor is an ordered list of rank-1 components (most significant
first).  Components are subgroups of the rationals, optionally extended by a
single adjoined quadratic surd, plus the formal integer factors inserted by
the rank construction.  Elements are coordinate tuples ordered
lexicographically; extended values adjoin +/-infinity per coordinate and a
global plus-infinity for the value of zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Callable, Iterable, Optional, Union

from .errors import DescriptorMismatch, InvalidAdjoin, InvariantError
from .exact import ExactReal, RationalLike


# ---------------------------------------------------------------------------
# Infinity sentinels for extended coordinates


class _Infinity:
    __slots__ = ("sign",)

    def __init__(self, sign: int):
        self.sign = sign

    def __neg__(self) -> "_Infinity":
        return NEG_INF if self is POS_INF else POS_INF

    def __repr__(self) -> str:
        return "+inf" if self.sign > 0 else "-inf"


POS_INF = _Infinity(1)
NEG_INF = _Infinity(-1)

Coord = Union[ExactReal, _Infinity]


def coord_compare(x: Coord, y: Coord) -> int:
    if isinstance(x, _Infinity) or isinstance(y, _Infinity):
        sx = x.sign * 2 if isinstance(x, _Infinity) else 0
        sy = y.sign * 2 if isinstance(y, _Infinity) else 0
        return (sx > sy) - (sx < sy)
    return x.compare(y)


# ---------------------------------------------------------------------------
# Components


@dataclass(frozen=True)
class Cyclic:
    """The subgroup gen * Z of the rationals, gen > 0."""

    gen: Fraction

    def __post_init__(self):
        if self.gen <= 0:
            raise InvariantError("cyclic generator must be positive")


@dataclass(frozen=True)
class PPowerDivisible:
    """scale * Z[1/p^inf]: rationals whose scaled denominator is a p-power."""

    p: int
    scale: Fraction

    def __post_init__(self):
        if self.p < 2 or any(self.p % q == 0 for q in range(2, self.p)):
            raise InvariantError(f"{self.p} is not prime")
        if self.scale <= 0:
            raise InvariantError("scale must be positive")


@dataclass(frozen=True)
class FullRational:
    """All of Q."""


@dataclass(frozen=True)
class FormalInteger:
    """A Z factor inserted by the rank construction."""


@dataclass(frozen=True)
class AdjoinedSurd:
    """base + Z*tau for an irrational quadratic tau; still rank 1."""

    base: "Component"
    tau: ExactReal

    def __post_init__(self):
        if self.tau.is_rational:
            raise InvariantError("adjoined tau must be irrational")
        if isinstance(self.base, AdjoinedSurd):
            raise InvariantError("at most one adjoined surd per component")


Component = Union[Cyclic, PPowerDivisible, FullRational, FormalInteger, AdjoinedSurd]


def _p_free_part(n: int, p: int) -> int:
    while n % p == 0:
        n //= p
    return n


def component_contains(comp: Component, x: ExactReal) -> bool:
    """Decide membership of an exact real in a rank-1 component."""
    if isinstance(comp, AdjoinedSurd):
        if x.is_rational:
            return component_contains(comp.base, x)
        if x.d != comp.tau.d:
            return False
        n = x.b / comp.tau.b
        if n.denominator != 1:
            return False
        rest = x - comp.tau.scaled(n)
        return component_contains(comp.base, rest)
    if not x.is_rational:
        return False
    q = x.rational_value
    if isinstance(comp, FullRational):
        return True
    if isinstance(comp, FormalInteger):
        return q.denominator == 1
    if isinstance(comp, Cyclic):
        return (q / comp.gen).denominator == 1
    if isinstance(comp, PPowerDivisible):
        return _p_free_part((q / comp.scale).denominator, comp.p) == 1
    raise InvariantError(f"unknown component {comp!r}")


def component_generator(comp: Component) -> ExactReal:
    """A canonical small positive member, used to build probe elements."""
    if isinstance(comp, (FullRational, FormalInteger)):
        return ExactReal.rational(1)
    if isinstance(comp, Cyclic):
        return ExactReal.rational(comp.gen)
    if isinstance(comp, PPowerDivisible):
        return ExactReal.rational(comp.scale)
    if isinstance(comp, AdjoinedSurd):
        return component_generator(comp.base)
    raise InvariantError(f"unknown component {comp!r}")


def _frac_gcd(a: Fraction, b: Fraction) -> Fraction:
    return Fraction(gcd(a.numerator * b.denominator, b.numerator * a.denominator),
                    a.denominator * b.denominator)


def _adjoin_rational(comp: Component, q: Fraction) -> Component:
    if isinstance(comp, FullRational):
        raise InvalidAdjoin("rational already contained in Q")
    if isinstance(comp, (Cyclic, FormalInteger)):
        gen = comp.gen if isinstance(comp, Cyclic) else Fraction(1)
        return Cyclic(_frac_gcd(gen, abs(q)))
    if isinstance(comp, PPowerDivisible):
        # scale*Z[1/p^inf] + q*Z = (scale/w)*Z[1/p^inf] with w the p-free
        # part of the denominator of q/scale.
        w = _p_free_part((q / comp.scale).denominator, comp.p)
        return PPowerDivisible(comp.p, comp.scale / w)
    raise InvariantError(f"cannot adjoin rational to {comp!r}")


def component_adjoin(comp: Component, r: ExactReal) -> Component:
    """Smallest representable component containing comp and r; rank stays 1."""
    if component_contains(comp, r):
        raise InvalidAdjoin(f"{r} already belongs to the component")
    if r.is_rational:
        if isinstance(comp, AdjoinedSurd):
            return AdjoinedSurd(_adjoin_rational(comp.base, r.rational_value), comp.tau)
        return _adjoin_rational(comp, r.rational_value)
    tau = r if r.b > 0 else -r
    if not isinstance(comp, AdjoinedSurd):
        return AdjoinedSurd(comp, tau)
    if tau.d != comp.tau.d:
        raise InvalidAdjoin(
            "component already carries a surd over a different radicand")
    # Combine Z*tau + Z*comp.tau: the sqrt(d) coefficients form a cyclic
    # group over g = gcd; Bezout yields the new tau, and the leftover
    # rational offsets land in the base.
    b1, b2 = comp.tau.b, tau.b
    g = _frac_gcd(abs(b1), abs(b2))
    m1, m2 = int(b1 / g), int(b2 / g)
    x, y = _bezout(m1, m2)
    new_tau = comp.tau.scaled(x) + tau.scaled(y)
    base = comp.base
    for old in (comp.tau, tau):
        n = old.b / new_tau.b
        rest = old - new_tau.scaled(n)
        if not rest.is_rational:
            raise InvariantError("surd combination left an irrational residue")
        if rest.rational_value and not component_contains(base, rest):
            base = _adjoin_rational(base, rest.rational_value)
    if new_tau.b < 0:
        new_tau = -new_tau
    return AdjoinedSurd(base, new_tau)


def _bezout(a: int, b: int) -> tuple[int, int]:
    """x, y with a*x + b*y = gcd(|a|, |b|)."""
    sa = -1 if a < 0 else 1
    sb = -1 if b < 0 else 1
    old_r, r = abs(a), abs(b)
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    return sa * old_x, sb * old_y


def component_label(comp: Component) -> str:
    if isinstance(comp, Cyclic):
        return f"{comp.gen}Z"
    if isinstance(comp, PPowerDivisible):
        pre = "" if comp.scale == 1 else f"{comp.scale}*"
        return f"{pre}Z[1/{comp.p}^inf]"
    if isinstance(comp, FullRational):
        return "Q"
    if isinstance(comp, FormalInteger):
        return "Z"
    if isinstance(comp, AdjoinedSurd):
        return f"{component_label(comp.base)}+Z({comp.tau})"
    return repr(comp)


# ---------------------------------------------------------------------------
# Values (group elements and extended tuples)


@dataclass(frozen=True)
class Value:
    """A lex-ordered tuple value; coords None encodes the scalar +infinity
    assigned to v(0), greater than every tuple."""

    coords: Optional[tuple[Coord, ...]]

    @staticmethod
    def of(*coords: Union[Coord, RationalLike]) -> "Value":
        return Value(tuple(_as_coord(c) for c in coords))

    @staticmethod
    def from_seq(coords: Iterable[Union[Coord, RationalLike]]) -> "Value":
        return Value(tuple(_as_coord(c) for c in coords))

    @property
    def is_infinity(self) -> bool:
        return self.coords is None

    @property
    def is_finite(self) -> bool:
        return self.coords is not None and all(
            isinstance(c, ExactReal) for c in self.coords)

    @property
    def arity(self) -> int:
        if self.coords is None:
            raise InvariantError("plus-infinity carries no coordinates")
        return len(self.coords)

    def compare(self, other: "Value") -> int:
        if not isinstance(other, Value):
            raise DescriptorMismatch(f"cannot compare Value with {other!r}")
        if self.is_infinity or other.is_infinity:
            si = 1 if self.is_infinity else 0
            oi = 1 if other.is_infinity else 0
            return (si > oi) - (si < oi)
        if len(self.coords) != len(other.coords):
            raise DescriptorMismatch(
                f"arity {len(self.coords)} vs {len(other.coords)}")
        for x, y in zip(self.coords, other.coords):
            c = coord_compare(x, y)
            if c:
                return c
        return 0

    def __lt__(self, other):
        return self.compare(other) < 0

    def __le__(self, other):
        return self.compare(other) <= 0

    def __gt__(self, other):
        return self.compare(other) > 0

    def __ge__(self, other):
        return self.compare(other) >= 0

    def __add__(self, other: "Value") -> "Value":
        if self.is_infinity or other.is_infinity:
            return INFINITY
        if len(self.coords) != len(other.coords):
            raise DescriptorMismatch("cannot add values of different arity")
        return Value(tuple(_coord_add(x, y) for x, y in zip(self.coords, other.coords)))

    def __neg__(self) -> "Value":
        if self.is_infinity:
            raise InvariantError("plus-infinity has no negative")
        return Value(tuple(-c for c in self.coords))

    def __sub__(self, other: "Value") -> "Value":
        return self + (-other)

    def scale(self, n: int) -> "Value":
        if self.is_infinity:
            if n <= 0:
                raise InvariantError("cannot scale plus-infinity by n <= 0")
            return INFINITY
        out = []
        for c in self.coords:
            if isinstance(c, _Infinity):
                if n == 0:
                    raise InvariantError("cannot scale an infinite coordinate by 0")
                out.append(c if n > 0 else -c)
            else:
                out.append(c.scaled(n))
        return Value(tuple(out))

    def __repr__(self) -> str:
        if self.is_infinity:
            return "v(0)=+inf"
        return "(" + ", ".join(repr(c) for c in self.coords) + ")"


INFINITY = Value(None)


def _as_coord(c: Union[Coord, RationalLike]) -> Coord:
    if isinstance(c, (ExactReal, _Infinity)):
        return c
    return ExactReal.rational(c)


def _coord_add(x: Coord, y: Coord) -> Coord:
    xi, yi = isinstance(x, _Infinity), isinstance(y, _Infinity)
    if xi and yi:
        if x.sign != y.sign:
            raise InvariantError("cannot add opposite infinities")
        return x
    if xi:
        return x
    if yi:
        return y
    return x + y


def compare(x: Value, y: Value) -> int:
    """Three-way lex comparison of extended values."""
    return x.compare(y)



# ---------------------------------------------------------------------------
# Group descriptors


@dataclass(frozen=True)
class GroupDescriptor:
    components: tuple[Component, ...]

    def __post_init__(self):
        if not self.components:
            raise InvariantError("a group descriptor needs at least one component")

    @staticmethod
    def of(*components: Component) -> "GroupDescriptor":
        return GroupDescriptor(tuple(components))

    def rank(self) -> int:
        # Each component has rank 1, so the lex product rank is the sum.
        return len(self.components)

    def contains(self, value: Value) -> bool:
        if not value.is_finite:
            return False
        if value.arity != len(self.components):
            raise DescriptorMismatch(
                f"element arity {value.arity} vs descriptor rank {self.rank()}")
        return all(component_contains(c, x)
                   for c, x in zip(self.components, value.coords))

    def insert_formal_integer(
            self, position: int) -> tuple["GroupDescriptor", Callable[[Value], Value]]:
        """Insert a Z factor at position; returns the extended descriptor and
        the order-preserving embedding (a zero coordinate at position)."""
        if not 0 <= position <= len(self.components):
            raise InvariantError(f"insert position {position} out of range")
        comps = (self.components[:position] + (FormalInteger(),)
                 + self.components[position:])
        return GroupDescriptor(comps), lambda v: insert_zero(v, position)

    def adjoin_at(self, position: int, r: ExactReal) -> "GroupDescriptor":
        if not 0 <= position < len(self.components):
            raise InvariantError(f"component index {position} out of range")
        comps = list(self.components)
        comps[position] = component_adjoin(comps[position], r)
        return GroupDescriptor(tuple(comps))

    def label(self) -> str:
        return "(" + " (+) ".join(component_label(c) for c in self.components) + ")_lex"


def insert_zero(value: Value, position: int) -> Value:
    """Order embedding used with insert_formal_integer."""
    if value.is_infinity:
        return value
    coords = value.coords
    if not 0 <= position <= len(coords):
        raise InvariantError(f"insert position {position} out of range")
    return Value(coords[:position] + (ExactReal.rational(0),) + coords[position:])


def drop_coordinate(value: Value, position: int) -> Value:
    if value.is_infinity:
        return value
    coords = value.coords
    return Value(coords[:position] + coords[position + 1:])


def contains_embedded(group: GroupDescriptor, value: Value,
                      insert_position: Optional[int] = None) -> bool:
    """Membership of value in (the embedded image of) group.

    With insert_position set, value has one extra coordinate from a formal
    integer insertion; it lies in the image iff that coordinate is zero and
    the rest is a member.
    """
    if insert_position is None:
        return group.contains(value)
    if not value.is_finite:
        return False
    if value.arity != group.rank() + 1:
        raise DescriptorMismatch(
            f"element arity {value.arity} vs embedded rank {group.rank()} + 1")
    extra = value.coords[insert_position]
    if extra != ExactReal.rational(0):
        return False
    return group.contains(drop_coordinate(value, insert_position))


def add(x: Value, y: Value) -> Value:
    return x + y


def negate(x: Value) -> Value:
    return -x


def scale(n: int, x: Value) -> Value:
    return x.scale(n)

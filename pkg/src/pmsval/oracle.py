"""Brute-force ground truth on concrete fields.

Two exact desk-scale fields: the rationals with a p-adic valuation (rank 1)
and rational functions in t over Q with the composite valuation
v(f) = (order in t, p-adic value of the lowest t-coefficient), a rank-2 lex
group.  Sequences of field elements are valuated directly and the affine
tail pattern d*delta_nu + beta is fitted independently of any root tagging.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .engine import DominatingForm, FactoredRationalFunction, dominating_degree
from .errors import InvariantError, SchemaError
from .groups import Cyclic, GroupDescriptor, INFINITY, Value
from .sequences import (PmsDescriptor, PmsKind, UltrametricConfiguration,
                        classify_from_prefix)


def padic_valuation(q: Fraction, p: int) -> int:
    """Exact exponent of p in q, q nonzero."""
    if q == 0:
        raise InvariantError("the zero element has value plus-infinity")
    v = 0
    num, den = q.numerator, q.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


# ---------------------------------------------------------------------------
# Exact rational functions in t over Q


def _trim(coeffs: Sequence[Fraction]) -> tuple[Fraction, ...]:
    out = list(coeffs)
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def _poly_add(a, b):
    n = max(len(a), len(b))
    return _trim([ (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
                   for i in range(n) ])


def _poly_mul(a, b):
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


@dataclass(frozen=True)
class QtElement:
    """num/den with polynomial parts over exact rationals; den nonzero."""

    num: tuple[Fraction, ...]
    den: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.den:
            raise InvariantError("denominator must be nonzero")

    @staticmethod
    def of(num: Sequence[Union[int, str, Fraction]],
           den: Sequence[Union[int, str, Fraction]] = (1,)) -> "QtElement":
        return QtElement(_trim([Fraction(c) for c in num]),
                         _trim([Fraction(c) for c in den]))

    @staticmethod
    def constant(q: Union[int, str, Fraction]) -> "QtElement":
        return QtElement.of([Fraction(q)])

    @property
    def is_zero(self) -> bool:
        return not self.num

    def __add__(self, other: "QtElement") -> "QtElement":
        return QtElement(
            _poly_add(_poly_mul(self.num, other.den),
                      _poly_mul(other.num, self.den)),
            _poly_mul(self.den, other.den))

    def __neg__(self) -> "QtElement":
        return QtElement(tuple(-c for c in self.num), self.den)

    def __sub__(self, other: "QtElement") -> "QtElement":
        return self + (-other)

    def __mul__(self, other: "QtElement") -> "QtElement":
        return QtElement(_poly_mul(self.num, other.num),
                         _poly_mul(self.den, other.den))

    def __eq__(self, other) -> bool:
        if not isinstance(other, QtElement):
            return NotImplemented
        return (self - other).is_zero

    def __hash__(self):
        raise TypeError("QtElement is not hashable (non-canonical form)")


def _poly_ord_and_low(coeffs: tuple[Fraction, ...]) -> tuple[int, Fraction]:
    for i, c in enumerate(coeffs):
        if c:
            return i, c
    raise InvariantError("the zero polynomial has no order")


# ---------------------------------------------------------------------------
# Concrete fields


@dataclass(frozen=True)
class PadicRationals:
    """(Q, v_p): value group Z."""

    p: int

    def group(self) -> GroupDescriptor:
        return GroupDescriptor.of(Cyclic(Fraction(1)))

    def element(self, raw) -> Fraction:
        return Fraction(raw)

    def valuate(self, x: Union[int, Fraction]) -> Value:
        x = Fraction(x)
        if x == 0:
            return INFINITY
        return Value.of(padic_valuation(x, self.p))


@dataclass(frozen=True)
class CompositeField:
    """(Q(t), v): v(f) = (ord_t f, v_p of the lowest t-coefficient), lex."""

    p: int

    def group(self) -> GroupDescriptor:
        return GroupDescriptor.of(Cyclic(Fraction(1)), Cyclic(Fraction(1)))

    def element(self, raw) -> QtElement:
        if isinstance(raw, QtElement):
            return raw
        return QtElement.constant(raw)

    def valuate(self, x: QtElement) -> Value:
        if x.is_zero:
            return INFINITY
        on, oc = _poly_ord_and_low(x.num)
        dn, dc = _poly_ord_and_low(x.den)
        return Value.of(on - dn, padic_valuation(oc, self.p)
                        - padic_valuation(dc, self.p))


ConcreteField = Union[PadicRationals, CompositeField]


@dataclass(frozen=True)
class ConcreteRationalFunction:
    """lead * prod(X - a_i) / prod(X - b_j) with concrete field elements."""

    lead: object
    num_roots: tuple = ()
    den_roots: tuple = ()

    def value_at(self, field: ConcreteField, x) -> Value:
        """Valuation of the function at x, computed factor by factor."""
        total = field.valuate(self.lead)
        for root in self.num_roots:
            total = total + field.valuate(x - root)
        for root in self.den_roots:
            v = field.valuate(x - root)
            if v.is_infinity:
                raise InvariantError("evaluation at a pole")
            total = total - v
        return total


def sequence_configuration(field: ConcreteField,
                           terms: Sequence) -> UltrametricConfiguration:
    """Pairwise valuation distances of the sequence members."""
    names = [f"z{i}" for i in range(len(terms))]
    dist = {}
    for i in range(len(terms)):
        for j in range(i + 1, len(terms)):
            dist[(names[i], names[j])] = field.valuate(terms[i] - terms[j])
    return UltrametricConfiguration.build(names, (), dist)


# ---------------------------------------------------------------------------
# Pattern fitting


@dataclass(frozen=True)
class FitOutcome:
    kind: str  # "constant" | "affine" | "inconsistent"
    degree: Optional[int] = None
    beta: Optional[Value] = None

    @property
    def is_consistent(self) -> bool:
        return self.kind != "inconsistent"


def fit_pattern(delta_prefix: Sequence[Value], values: Sequence[Value],
                tail_window: Optional[int] = None) -> FitOutcome:
    """Fit values_nu = d*delta_nu + beta on the tail, solving from the last
    two points and verifying over the window (default: the last half)."""
    m = min(len(delta_prefix), len(values))
    if m < 4:
        raise InvariantError("pattern fitting needs at least four tail points")
    deltas, values = list(delta_prefix[:m]), list(values[:m])
    window = tail_window if tail_window is not None else m // 2
    window = max(2, min(window, m))
    tail = range(m - window, m)
    if any(values[i].is_infinity for i in tail):
        return FitOutcome("inconsistent")
    increasing = all(a < b for a, b in zip(deltas, deltas[1:]))
    decreasing = all(a > b for a, b in zip(deltas, deltas[1:]))
    constant = all(a == deltas[0] for a in deltas)
    if not (increasing or decreasing or constant):
        raise InvariantError("distance prefix is neither monotone nor constant")
    if constant:
        if all(values[i] == values[m - 1] for i in tail):
            return FitOutcome("constant", 0, values[m - 1])
        return FitOutcome("inconsistent")
    d = _solve_degree(deltas[m - 1] - deltas[m - 2], values[m - 1] - values[m - 2])
    if d is None:
        return FitOutcome("inconsistent")
    beta = values[m - 1] - deltas[m - 1].scale(d)
    for i in tail:
        if values[i] != deltas[i].scale(d) + beta:
            return FitOutcome("inconsistent")
    if d == 0:
        return FitOutcome("constant", 0, beta)
    return FitOutcome("affine", d, beta)


def _solve_degree(ddelta: Value, dvalue: Value) -> Optional[int]:
    """Integer d with dvalue = d*ddelta, coordinate by coordinate."""
    d: Optional[int] = None
    for x, y in zip(ddelta.coords, dvalue.coords):
        if not x.is_rational or not y.is_rational:
            return None
        if x.rational_value == 0:
            if y.rational_value != 0:
                return None
            continue
        q = y.rational_value / x.rational_value
        if q.denominator != 1:
            return None
        if d is None:
            d = int(q)
        elif d != int(q):
            return None
    return d if d is not None else 0


# ---------------------------------------------------------------------------
# Cross-checking the tag calculus against the oracle


@dataclass(frozen=True)
class RootDiagnosis:
    side: str
    index: int
    declared_limit: bool
    actual_limit: bool
    declared_beta: Optional[Value]
    actual_beta: Optional[Value]

    @property
    def agrees(self) -> bool:
        return (self.declared_limit == self.actual_limit
                and self.declared_beta == self.actual_beta)


@dataclass(frozen=True)
class CrossCheckReport:
    agree: bool
    kind: PmsKind
    delta_prefix: tuple[Value, ...]
    fit: FitOutcome
    tagged_form: Optional[DominatingForm]
    mismatches: tuple[str, ...]
    diagnoses: tuple[RootDiagnosis, ...]


def cross_check(field: ConcreteField, terms: Sequence,
                phi: ConcreteRationalFunction,
                tagged: FactoredRationalFunction,
                E: Optional[PmsDescriptor] = None,
                tail_window: Optional[int] = None) -> CrossCheckReport:
    """Evaluate phi along the sequence, fit the tail pattern and compare the
    result with the declared root tagging; mismatches name the offending
    root by side and position."""
    if len(phi.num_roots) != len(tagged.num_roots) or \
            len(phi.den_roots) != len(tagged.den_roots):
        raise SchemaError("tagged and concrete root lists differ in shape")
    cfg = sequence_configuration(field, terms)
    kind, deltas = classify_from_prefix(cfg)
    values = [phi.value_at(field, z) for z in terms]
    # Align value index nu with the stored consecutive-distance index.
    if kind is PmsKind.PDS:
        aligned = values[1:]
    else:
        aligned = values[:len(deltas)]
    fit = fit_pattern(deltas, aligned, tail_window)
    mismatches: list[str] = []
    diagnoses: list[RootDiagnosis] = []
    window = tail_window if tail_window is not None else len(deltas) // 2
    for side, roots, tags in (("num", phi.num_roots, tagged.num_roots),
                              ("den", phi.den_roots, tagged.den_roots)):
        for idx, (root, tag) in enumerate(zip(roots, tags)):
            dists = [field.valuate(z - root) for z in terms]
            if kind is PmsKind.PDS:
                dists = dists[1:]
            else:
                dists = dists[:len(deltas)]
            root_fit = fit_pattern(deltas, dists, window)
            actual_limit = root_fit.kind == "affine" and root_fit.degree == 1 \
                and root_fit.beta == _zero_like(root_fit.beta)
            actual_beta = root_fit.beta if root_fit.kind == "constant" else None
            diag = RootDiagnosis(side, idx, tag.is_limit, actual_limit,
                                 tag.beta, actual_beta)
            diagnoses.append(diag)
            if not diag.agrees:
                mismatches.append(
                    f"{side}[{idx}]: declared "
                    f"{'limit' if tag.is_limit else f'beta={tag.beta}'}, "
                    f"oracle saw "
                    f"{'limit' if actual_limit else f'beta={actual_beta}'}")
    tagged_form = None
    if E is not None:
        tagged_form = dominating_degree(tagged, E)
    else:
        d = sum(t.multiplicity for t in tagged.num_roots if t.is_limit) \
            - sum(t.multiplicity for t in tagged.den_roots if t.is_limit)
        beta = tagged.lead_value
        for sign, tags in ((1, tagged.num_roots), (-1, tagged.den_roots)):
            for t in tags:
                if not t.is_limit:
                    beta = beta + t.beta.scale(sign * t.multiplicity)
        tagged_form = DominatingForm(d, beta)
    if fit.is_consistent:
        fit_d = fit.degree if fit.degree is not None else 0
        if fit_d != tagged_form.degree or fit.beta != tagged_form.beta:
            mismatches.append(
                f"overall: oracle fit d={fit_d}, beta={fit.beta}; tags give "
                f"d={tagged_form.degree}, beta={tagged_form.beta}")
    agree = fit.is_consistent and not mismatches
    return CrossCheckReport(agree, kind, tuple(deltas), fit, tagged_form,
                            tuple(mismatches), tuple(diagnoses))


def _zero_like(v: Value) -> Value:
    return Value.from_seq([0] * v.arity)

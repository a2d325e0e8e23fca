"""The dominating-degree calculus and the induced valuation on K(X).

Roots of rational functions are never materialized as field elements: the
limit-or-ultimately-constant alternative makes a tag (limit of the sequence,
or the ultimate distance value beta) a complete description for valuation
purposes.  The induced value of a function is then d*delta + beta where d
counts limit roots of the numerator minus the denominator.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence

from .errors import IndeterminateError, InvariantError, KindError
from .groups import GroupDescriptor, INFINITY, Value, contains_embedded
from .sequences import (PmsDescriptor, PmsKind, UltrametricConfiguration,
                        below_all_deltas, diverges_to_infinity,
                        exceeds_all_deltas, is_cauchy)


# ---------------------------------------------------------------------------
# Tagged rational functions


@dataclass(frozen=True)
class TaggedRoot:
    """A root known only through its relation to the sequence: either a
    limit, or at ultimate distance beta from the tail."""

    is_limit: bool
    beta: Optional[Value]
    multiplicity: int = 1

    def __post_init__(self):
        if self.multiplicity < 1:
            raise InvariantError("multiplicity must be positive")
        if self.is_limit and self.beta is not None:
            raise InvariantError("a limit root carries no distance value")
        if not self.is_limit and self.beta is None:
            raise InvariantError("a non-limit root needs its distance value")

    @staticmethod
    def limit(multiplicity: int = 1) -> "TaggedRoot":
        return TaggedRoot(True, None, multiplicity)

    @staticmethod
    def at_distance(beta: Value, multiplicity: int = 1) -> "TaggedRoot":
        return TaggedRoot(False, beta, multiplicity)


@dataclass(frozen=True)
class FactoredRationalFunction:
    """lead value plus tagged numerator and denominator roots (reduced)."""

    lead_value: Value
    num_roots: tuple[TaggedRoot, ...] = ()
    den_roots: tuple[TaggedRoot, ...] = ()

    def degree(self) -> int:
        return (sum(r.multiplicity for r in self.num_roots)
                - sum(r.multiplicity for r in self.den_roots))

    def product(self, other: "FactoredRationalFunction") -> "FactoredRationalFunction":
        return FactoredRationalFunction(
            self.lead_value + other.lead_value,
            self.num_roots + other.num_roots,
            self.den_roots + other.den_roots)


@dataclass(frozen=True)
class DominatingForm:
    """The affine tail pattern d*delta_nu + beta of the values along E."""

    degree: int
    beta: Value


def _validate_tags(phi: FactoredRationalFunction, E: PmsDescriptor) -> None:
    if not phi.lead_value.is_finite or not E.group.contains(phi.lead_value):
        raise InvariantError("lead value must be a member of the group")
    for root in phi.num_roots + phi.den_roots:
        if root.is_limit:
            if E.is_transcendental_pcs():
                raise InvariantError(
                    "a pcs of transcendental type admits no root limits")
        else:
            if not root.beta.is_finite or not E.group.contains(root.beta):
                raise InvariantError(
                    "root distance must be a member of the group")


def dominating_degree(phi: FactoredRationalFunction,
                      E: PmsDescriptor) -> DominatingForm:
    """d = limit roots of the numerator minus the denominator (counted with
    multiplicity); beta = lead value plus the non-limit distance values."""
    _validate_tags(phi, E)
    d = 0
    beta = phi.lead_value
    for sign, roots in ((1, phi.num_roots), (-1, phi.den_roots)):
        for root in roots:
            if root.is_limit:
                d += sign * root.multiplicity
            else:
                beta = beta + root.beta.scale(sign * root.multiplicity)
    return DominatingForm(d, beta)


# ---------------------------------------------------------------------------
# The induced valuation


@dataclass(frozen=True)
class InducedValue:
    """v_E of a function: its value, where it lives, and the tail pattern."""

    value: Value
    in_vk: bool
    in_rational_hull: bool
    form: DominatingForm
    over_extended: bool


def v_e(phi: FactoredRationalFunction, E: PmsDescriptor,
        rank_result=None) -> InducedValue:
    """Value of phi under the induced valuation.

    Ultimately constant values land in the base group; otherwise the value
    is d*alpha + beta over the extended group built by the rank walk (alpha
    the value of X minus a limit).
    """
    form = dominating_degree(phi, E)
    if E.kind is PmsKind.PCTS:
        value = E.pcts_delta.scale(form.degree) + form.beta if form.degree \
            else form.beta
        return InducedValue(value, True, True, form, False)
    if form.degree == 0:
        return InducedValue(form.beta, True, True, form, False)
    if rank_result is None:
        from .ranktree import rank_of_vE
        rank_result = rank_of_vE(E)
    if rank_result.alpha is None:
        raise IndeterminateError(
            "no extended placement available for a value outside the group")
    value = rank_result.alpha.scale(form.degree) + rank_result.embed(form.beta)
    return InducedValue(value, False, False, form, True)


def monomial_value(coeff_values: Iterable[tuple[int, Value]],
                   alpha: Value) -> Value:
    """min over i of v(c_i) + i*alpha, the monomial valuation at alpha."""
    best: Optional[Value] = None
    seen = False
    for i, vc in coeff_values:
        seen = True
        if vc.is_infinity:
            continue
        term = vc + alpha.scale(i) if i else vc
        if best is None or term < best:
            best = term
    if not seen:
        raise InvariantError("monomial valuation needs at least one coefficient")
    if best is None:
        # All coefficients vanish: the zero polynomial has value +infinity.
        return INFINITY
    return best


def pair_equality(alpha: Value, alpha_prime: Value, v_ab: Value) -> bool:
    """Two pairs define the same monomial valuation iff the values agree and
    the points are at distance at least alpha."""
    return alpha == alpha_prime and v_ab >= alpha


# ---------------------------------------------------------------------------
# Maximum-distance reasoning


@dataclass(frozen=True)
class MaxDistanceOutcome:
    status: str  # "confirmed" | "not-applicable" | "violation"
    point: Optional[str] = None
    alpha: Optional[Value] = None
    violator: Optional[str] = None


def max_distance_check(cfg: UltrametricConfiguration, y: str,
                       group: GroupDescriptor,
                       insert_position: Optional[int] = None
                       ) -> MaxDistanceOutcome:
    """If some distance from y lies outside the group, it must be the maximum
    distance from y; a violating point proves the configuration invalid.

    insert_position handles configurations over an extended descriptor: the
    membership test then runs against the embedded image of the group.
    """
    witness = None
    for other in cfg.names():
        if other == y or not cfg.has_distance(y, other):
            continue
        d = cfg.distance(y, other)
        if not d.is_infinity and not contains_embedded(group, d, insert_position):
            witness = other
            break
    if witness is None:
        return MaxDistanceOutcome("not-applicable")
    alpha = cfg.distance(y, witness)
    for other in cfg.names():
        if other == y or not cfg.has_distance(y, other):
            continue
        if cfg.distance(y, other) > alpha:
            return MaxDistanceOutcome("violation", point=witness, alpha=alpha,
                                      violator=other)
    return MaxDistanceOutcome("confirmed", point=witness, alpha=alpha)


class AlphaPosition(enum.Enum):
    ABOVE_ALL = "above-all"
    BELOW_ALL = "below-all"
    INSIDE = "inside"


def classify_alpha_position(E: PmsDescriptor) -> AlphaPosition:
    """Where the value of X minus a limit sits relative to the group: above
    everything exactly for Cauchy sequences of algebraic type, below
    everything exactly for divergence to infinity."""
    if E.kind is PmsKind.PCTS:
        return AlphaPosition.INSIDE
    if E.is_transcendental_pcs():
        raise KindError(
            "a pcs of transcendental type induces an immediate extension; "
            "there is no pair of definition to position")
    if E.kind is PmsKind.PCS:
        return AlphaPosition.ABOVE_ALL if is_cauchy(E) else AlphaPosition.INSIDE
    return AlphaPosition.BELOW_ALL if diverges_to_infinity(E) else AlphaPosition.INSIDE


def delta_of_polynomial(distances: Sequence[Value]) -> Value:
    """Max over the roots of the value of X minus the root."""
    if not distances:
        raise InvariantError("delta of a constant polynomial is undefined")
    return max(distances)


def root_distances(phi: FactoredRationalFunction, E: PmsDescriptor,
                   rank_result=None) -> list[Value]:
    """v_E(X - root) for each numerator root entry: alpha for limit roots,
    the ultimate distance beta otherwise."""
    if phi.den_roots:
        raise InvariantError("root distances apply to polynomials only")
    if not phi.num_roots:
        raise InvariantError("delta of a constant polynomial is undefined")
    needs_alpha = any(r.is_limit for r in phi.num_roots)
    alpha = None
    embed = lambda v: v
    if E.kind is PmsKind.PCTS:
        alpha = E.pcts_delta
    else:
        if rank_result is None and needs_alpha:
            from .ranktree import rank_of_vE
            rank_result = rank_of_vE(E)
        if rank_result is not None:
            embed = rank_result.embed
            alpha = rank_result.alpha
        if needs_alpha and alpha is None:
            raise IndeterminateError("no placement for limit-root distances")
    out = []
    for root in phi.num_roots:
        if root.is_limit:
            out.extend([alpha] * root.multiplicity)
        else:
            out.extend([embed(root.beta)] * root.multiplicity)
    return out


# ---------------------------------------------------------------------------
# Finite-witness checks of the value-transcendental equivalences


@dataclass(frozen=True)
class CheckOutcome:
    holds: bool
    counterexample: Optional[Value]
    checked: int


def check_pcs_equivalence_iii(E: PmsDescriptor, alpha: Value,
                              probes: Sequence[Value],
                              embed: Optional[Callable[[Value], Value]] = None
                              ) -> CheckOutcome:
    """For every probe beta in the group: beta > alpha iff beta exceeds every
    distance value of the increasing chain."""
    if E.kind is not PmsKind.PCS:
        raise KindError("the increasing-chain check applies to pcs descriptors")
    emb = embed or (lambda v: v)
    probes = list(probes)
    for beta in probes:
        if (emb(beta) > alpha) != exceeds_all_deltas(beta, E):
            return CheckOutcome(False, beta, len(probes))
    return CheckOutcome(True, None, len(probes))


def check_pds_equivalence_iii(E: PmsDescriptor, alpha: Value,
                              probes: Sequence[Value],
                              embed: Optional[Callable[[Value], Value]] = None
                              ) -> CheckOutcome:
    """Mirror check: beta < alpha iff beta is below every distance value."""
    if E.kind is not PmsKind.PDS:
        raise KindError("the decreasing-chain check applies to pds descriptors")
    emb = embed or (lambda v: v)
    probes = list(probes)
    for beta in probes:
        if (emb(beta) < alpha) != below_all_deltas(beta, E):
            return CheckOutcome(False, beta, len(probes))
    return CheckOutcome(True, None, len(probes))


# ---------------------------------------------------------------------------
# Extension classification


@dataclass(frozen=True)
class PairOfDefinition:
    point: str
    alpha: Value
    minimal: Optional[bool] = None


@dataclass(frozen=True)
class ExtensionReport:
    extension_kind: str  # "immediate" | "value-transcendental" | "residue-transcendental"
    pure: bool
    ic_label: str
    pair: Optional[PairOfDefinition]
    key_poly_sketch: Optional[str]


def extension_report(E: PmsDescriptor) -> ExtensionReport:
    """Classify the induced extension of the rational function field.

    The constant-field label is always the henselization: through pureness
    when the sequence has a limit in the ground field or is of
    transcendental type, through the key-polynomial sequence otherwise.
    """
    if E.is_transcendental_pcs():
        return ExtensionReport(
            "immediate", True, "K^h", None,
            "{X - z_nu : nu} (limits of the sequence itself)")
    if E.kind is PmsKind.PCTS:
        pair = PairOfDefinition("a", E.pcts_delta, minimal=True)
        return ExtensionReport(
            "residue-transcendental", True, "K^h", pair, "{X - a}")
    from .ranktree import rank_of_vE
    alpha = rank_of_vE(E).alpha
    if E.kind is PmsKind.PDS:
        pair = PairOfDefinition("z_mu", alpha, minimal=True)
        return ExtensionReport(
            "value-transcendental", True, "K^h", pair, "{X - z_mu}")
    deg = E.pcs_type.degree
    pair = PairOfDefinition("a (root of Q)", alpha, minimal=True)
    sketch = f"{{X - z_nu : nu}} U {{Q : deg {deg}}}"
    if deg == 1:
        return ExtensionReport("value-transcendental", True, "K^h", pair, sketch)
    return ExtensionReport(
        "value-transcendental", False, "K^h (via key polynomial sequence)",
        pair, sketch)


# ---------------------------------------------------------------------------
# The configuration induced by a descriptor with a prefix


def induced_configuration(E: PmsDescriptor, rank_result=None,
                          include_x: bool = True) -> UltrametricConfiguration:
    """Build the configuration of the prefix members together with X.

    The distance from X to z_nu is delta_nu for a pcs or pcts (X is a limit)
    and the constant alpha below every delta for a pds (X is not).
    """
    if E.prefix is None or len(E.prefix) < 2:
        raise IndeterminateError("need a prefix of length >= 2 to build the "
                                 "induced configuration")
    prefix = E.prefix
    m = len(prefix) + 1
    names = [f"z{i}" for i in range(m)]
    emb = lambda v: v
    if include_x and E.kind is PmsKind.PDS:
        if rank_result is None:
            from .ranktree import rank_of_vE
            rank_result = rank_of_vE(E)
        emb = rank_result.embed
        alpha = rank_result.alpha
    dist: dict[tuple[str, str], Value] = {}
    for i in range(m):
        for j in range(i + 1, m):
            # consecutive-entry index determined by the kind's pattern
            if E.kind is PmsKind.PCS:
                v = prefix[i]
            elif E.kind is PmsKind.PDS:
                v = prefix[j - 1]
            else:
                v = prefix[0]
            key = (names[i], names[j])
            dist[key] = emb(v)
    points: tuple[str, ...] = ()
    if include_x:
        points = ("X",)
        for nu in range(m):
            if E.kind is PmsKind.PCS:
                v = emb(prefix[nu]) if nu < len(prefix) else None
            elif E.kind is PmsKind.PCTS:
                v = prefix[0]
            else:
                v = alpha
            if v is not None:
                a, b = sorted((names[nu], "X"))
                dist[(a, b)] = v
    return UltrametricConfiguration.build(names, points, dist)

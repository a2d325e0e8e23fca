"""Pseudo monotone sequences: symbolic descriptors, finite prefixes,
classification from pairwise distances, limits, and sup/inf computation.

A transfinite sequence is represented by a stage chain (the asymptotic,
coordinate-by-coordinate truth about its distance values) together with an
optional finite prefix of concrete distance values used as witnesses.
Indices at or beyond the last declared stage count as tail witnesses.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

from .errors import (IndeterminateError, InvalidConfiguration, InvariantError,
                     KindError, NotAPms)
from .exact import ExactReal
from .groups import (INFINITY, NEG_INF, POS_INF, GroupDescriptor, Value,
                     component_contains)


class PmsKind(enum.Enum):
    PCS = "pcs"
    PDS = "pds"
    PCTS = "pcts"


class Direction(enum.Enum):
    INCREASING = "inc"
    DECREASING = "dec"


class Tri(enum.Enum):
    """Three-valued answer; INDETERMINATE means not enough witness data."""

    TRUE = "true"
    FALSE = "false"
    INDETERMINATE = "indeterminate"


# ---------------------------------------------------------------------------
# Stage chains


@dataclass(frozen=True)
class Unbounded:
    pass


@dataclass(frozen=True)
class BoundInGroup:
    r: ExactReal


@dataclass(frozen=True)
class BoundNotInGroup:
    r: ExactReal


Bound = Union[Unbounded, BoundInGroup, BoundNotInGroup]


@dataclass(frozen=True)
class ConstantFrom:
    """Coordinate ultimately constant at value, from prefix index stage on."""

    value: ExactReal
    stage: int


@dataclass(frozen=True)
class Terminal:
    """The first strictly moving coordinate: its direction and bound.

    For increasing chains the bound is a strict upper bound never attained;
    for decreasing chains a strict lower bound.
    """

    direction: Direction
    bound: Bound


@dataclass(frozen=True)
class StageChain:
    entries: tuple[Union[ConstantFrom, Terminal], ...]

    def __post_init__(self):
        if not self.entries:
            raise InvariantError("stage chain cannot be empty")
        *front, last = self.entries
        if not isinstance(last, Terminal):
            raise InvariantError(
                "chain must end in a terminal entry: an all-constant chain "
                "contradicts strict monotonicity")
        if any(not isinstance(e, ConstantFrom) for e in front):
            raise InvariantError("only the last chain entry may be terminal")
        stages = [e.stage for e in front]
        if any(s < 0 for s in stages) or stages != sorted(stages):
            raise InvariantError("stage labels must be nonnegative and nondecreasing")

    @property
    def constants(self) -> tuple[ConstantFrom, ...]:
        return self.entries[:-1]

    @property
    def terminal(self) -> Terminal:
        return self.entries[-1]

    @property
    def terminal_level(self) -> int:
        """1-based coordinate index of the strictly moving coordinate."""
        return len(self.entries)

    @property
    def tail_start(self) -> int:
        return max((e.stage for e in self.constants), default=0)


@dataclass(frozen=True)
class Transcendental:
    pass


@dataclass(frozen=True)
class Algebraic:
    degree: int

    def __post_init__(self):
        if self.degree < 1:
            raise InvariantError("minimal polynomial degree must be >= 1")


PcsType = Union[Transcendental, Algebraic]


@dataclass(frozen=True)
class PmsDescriptor:
    kind: PmsKind
    group: GroupDescriptor
    chain: Optional[StageChain] = None
    pcts_delta: Optional[Value] = None
    pcs_type: Optional[PcsType] = None
    prefix: Optional[tuple[Value, ...]] = None

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        n = self.group.rank()
        if self.kind is PmsKind.PCTS:
            if self.chain is not None:
                raise InvariantError("a pcts carries a single delta, not a chain")
            if self.pcts_delta is None:
                raise InvariantError("a pcts descriptor needs its delta value")
            if not self.group.contains(self.pcts_delta):
                raise InvariantError("pcts delta must belong to the group")
        else:
            if self.chain is None:
                raise InvariantError(f"a {self.kind.value} descriptor needs a chain")
            if self.pcts_delta is not None:
                raise InvariantError("pcts_delta is only meaningful for a pcts")
            self._validate_chain(n)
        if self.kind is PmsKind.PCS:
            if self.pcs_type is None:
                raise InvariantError("a pcs must declare its type")
        elif self.pcs_type is not None:
            raise InvariantError("pcs_type is only meaningful for a pcs")
        if self.prefix is not None:
            self._validate_prefix()

    def _validate_chain(self, n: int) -> None:
        chain = self.chain
        if chain.terminal_level > n:
            raise InvariantError(
                f"chain length {chain.terminal_level} exceeds group rank {n}")
        want = (Direction.INCREASING if self.kind is PmsKind.PCS
                else Direction.DECREASING)
        if chain.terminal.direction is not want:
            raise InvariantError(
                f"a {self.kind.value} requires a {want.value} terminal coordinate")
        for i, entry in enumerate(chain.constants):
            if not component_contains(self.group.components[i], entry.value):
                raise InvariantError(
                    f"chain constant {entry.value} is not a member of component {i}")
        bound = chain.terminal.bound
        comp = self.group.components[chain.terminal_level - 1]
        if isinstance(bound, BoundInGroup) and not component_contains(comp, bound.r):
            raise InvariantError(
                f"declared in-group bound {bound.r} is not a component member")
        if isinstance(bound, BoundNotInGroup) and component_contains(comp, bound.r):
            raise InvariantError(
                f"declared not-in-group bound {bound.r} is a component member")

    def _validate_prefix(self) -> None:
        prefix = self.prefix
        n = self.group.rank()
        for v in prefix:
            if not v.is_finite or v.arity != n:
                raise InvariantError("prefix entries must be finite group tuples")
            if not self.group.contains(v):
                raise InvariantError(f"prefix entry {v} is not a group member")
        if self.kind is PmsKind.PCTS:
            if any(v != prefix[0] for v in prefix[1:]):
                raise InvariantError("a pcts prefix must be constant")
            if prefix and prefix[0] != self.pcts_delta:
                raise InvariantError("pcts prefix must equal the declared delta")
            return
        inc = self.kind is PmsKind.PCS
        for a, b in zip(prefix, prefix[1:]):
            if not (a < b if inc else a > b):
                raise InvariantError(
                    f"prefix must be strictly {'increasing' if inc else 'decreasing'}")
        chain = self.chain
        j = chain.terminal_level
        for i, entry in enumerate(chain.constants):
            for nu in range(entry.stage, len(prefix)):
                if prefix[nu].coords[i] != entry.value:
                    raise InvariantError(
                        f"prefix coordinate {i} must equal {entry.value} "
                        f"from index {entry.stage} on")
        tail = range(chain.tail_start, len(prefix))
        coords = [prefix[nu].coords[j - 1] for nu in tail]
        for a, b in zip(coords, coords[1:]):
            if not (a < b if inc else a > b):
                raise InvariantError(
                    "terminal coordinate must move strictly with the chain direction")
        bound = chain.terminal.bound
        if isinstance(bound, (BoundInGroup, BoundNotInGroup)):
            for c in coords:
                if not (c < bound.r if inc else c > bound.r):
                    raise InvariantError(
                        f"terminal coordinate {c} violates the strict bound {bound.r}")

    @property
    def tail_start(self) -> int:
        return 0 if self.chain is None else self.chain.tail_start

    def is_algebraic_pcs(self) -> bool:
        return self.kind is PmsKind.PCS and isinstance(self.pcs_type, Algebraic)

    def is_transcendental_pcs(self) -> bool:
        return self.kind is PmsKind.PCS and isinstance(self.pcs_type, Transcendental)

    def limit_in_base_field(self) -> bool:
        """Whether some limit of the sequence lies in the ground field: every
        member of a pds (or pcts) is a limit; a pcs of algebraic type has one
        exactly when its minimal polynomial is linear."""
        if self.kind in (PmsKind.PDS, PmsKind.PCTS):
            return True
        return isinstance(self.pcs_type, Algebraic) and self.pcs_type.degree == 1


# ---------------------------------------------------------------------------
# Ultrametric configurations


def _pair(p: str, q: str) -> tuple[str, str]:
    return (p, q) if p <= q else (q, p)


@dataclass(frozen=True)
class UltrametricConfiguration:
    """A finite named point set with exact pairwise valuation distances.

    sequence lists the ordered names of the sequence members; points holds
    any extra named points (limit candidates, X, ...).  Distances are
    symmetric; the self-distance is plus-infinity.
    """

    sequence: tuple[str, ...]
    points: tuple[str, ...]
    dist: dict[tuple[str, str], Value] = field(hash=False)

    def __post_init__(self):
        names = set(self.sequence) | set(self.points)
        if len(names) != len(self.sequence) + len(self.points):
            raise InvalidConfiguration("point names must be distinct")
        arities = set()
        for (p, q), v in self.dist.items():
            if p not in names or q not in names:
                raise InvalidConfiguration(f"distance references unknown point {p},{q}")
            if (p, q) != _pair(p, q):
                raise InvalidConfiguration("distance keys must be sorted pairs")
            if not v.is_infinity:
                arities.add(v.arity)
        if len(arities) > 1:
            raise InvalidConfiguration("distance values have mixed arities")

    @staticmethod
    def build(sequence: Sequence[str], points: Sequence[str],
              distances: dict[tuple[str, str], Value]) -> "UltrametricConfiguration":
        canon = {_pair(p, q): v for (p, q), v in distances.items()}
        cfg = UltrametricConfiguration(tuple(sequence), tuple(points), canon)
        bad = cfg.isosceles_violation()
        if bad is not None:
            raise InvalidConfiguration(
                f"isosceles law fails on points {bad[0]}, {bad[1]}, {bad[2]}")
        return cfg

    def names(self) -> tuple[str, ...]:
        return self.sequence + self.points

    def has_distance(self, p: str, q: str) -> bool:
        return p == q or _pair(p, q) in self.dist

    def distance(self, p: str, q: str) -> Value:
        if p == q:
            return INFINITY
        key = _pair(p, q)
        if key not in self.dist:
            raise IndeterminateError(f"no distance recorded for {p}, {q}")
        return self.dist[key]

    def isosceles_violation(self) -> Optional[tuple[str, str, str]]:
        """A triple where the minimum pairwise distance is attained once."""
        names = [n for n in self.names()]
        for i, p in enumerate(names):
            for j in range(i + 1, len(names)):
                for k in range(j + 1, len(names)):
                    q, r = names[j], names[k]
                    if not (self.has_distance(p, q) and self.has_distance(p, r)
                            and self.has_distance(q, r)):
                        continue
                    d1, d2, d3 = (self.distance(p, q), self.distance(p, r),
                                  self.distance(q, r))
                    lo = min(d1, d2, d3)
                    if sum(1 for d in (d1, d2, d3) if d == lo) < 2:
                        return (p, q, r)
        return None


def classify_from_prefix(cfg: UltrametricConfiguration) -> tuple[PmsKind, list[Value]]:
    """Classify the sequence points of cfg and return the distance prefix.

    The prefix is indexed so that entry nu is v(z_nu - z_{nu+1}) for a pcs,
    v(z_{nu+1} - z_mu), mu <= nu, for a pds, and the constant for a pcts.
    """
    zs = cfg.sequence
    if len(zs) < 3:
        raise IndeterminateError("need at least three sequence points to classify")
    consec = [cfg.distance(zs[i], zs[i + 1]) for i in range(len(zs) - 1)]
    increasing = all(a < b for a, b in zip(consec, consec[1:]))
    decreasing = all(a > b for a, b in zip(consec, consec[1:]))
    all_pairs = [cfg.distance(zs[i], zs[j])
                 for i in range(len(zs)) for j in range(i + 1, len(zs))
                 if cfg.has_distance(zs[i], zs[j])]
    constant = all(v == all_pairs[0] for v in all_pairs)
    if constant:
        return PmsKind.PCTS, [all_pairs[0]] * len(consec)
    if increasing:
        expect = lambda i, j: consec[min(i, j)]
        kind = PmsKind.PCS
    elif decreasing:
        expect = lambda i, j: consec[max(i, j) - 1]
        kind = PmsKind.PDS
    else:
        raise NotAPms("consecutive distances are neither strictly increasing, "
                      "strictly decreasing, nor all equal")
    for i in range(len(zs)):
        for j in range(i + 1, len(zs)):
            if cfg.has_distance(zs[i], zs[j]):
                if cfg.distance(zs[i], zs[j]) != expect(i, j):
                    raise InvalidConfiguration(
                        f"distance {zs[i]},{zs[j]} contradicts the "
                        f"{kind.value} pattern")
    return kind, consec


# ---------------------------------------------------------------------------
# Symbolic tail comparisons against the chain


def _split_versus_constants(beta: Value, E: PmsDescriptor) -> tuple[int, int]:
    """Lex-compare beta against the chain constants on the leading
    coordinates.  Returns (cmp, terminal_index)."""
    chain = E.chain
    j = chain.terminal_level
    for i, entry in enumerate(chain.constants):
        c = beta.coords[i].compare(entry.value)
        if c:
            return c, j - 1
    return 0, j - 1


def exceeds_all_deltas(beta: Value, E: PmsDescriptor) -> bool:
    """beta > delta_nu for every index nu (pcs chains).

    Because the distance values are strictly increasing, this matches
    beta >= every delta_nu as well: the bound is never attained.
    """
    if E.kind is not PmsKind.PCS:
        raise KindError("exceeds_all_deltas applies to pcs descriptors")
    if beta.is_infinity:
        return True
    _require_group_member(beta, E)
    cmp, jm1 = _split_versus_constants(beta, E)
    if cmp:
        return cmp > 0
    bound = E.chain.terminal.bound
    if isinstance(bound, Unbounded):
        return False
    return beta.coords[jm1].compare(bound.r) >= 0


def below_all_deltas(beta: Value, E: PmsDescriptor) -> bool:
    """beta < delta_nu for every index nu (pds chains)."""
    if E.kind is not PmsKind.PDS:
        raise KindError("below_all_deltas applies to pds descriptors")
    if beta.is_infinity:
        return False
    _require_group_member(beta, E)
    cmp, jm1 = _split_versus_constants(beta, E)
    if cmp:
        return cmp < 0
    bound = E.chain.terminal.bound
    if isinstance(bound, Unbounded):
        return False
    return beta.coords[jm1].compare(bound.r) <= 0


def _require_group_member(beta: Value, E: PmsDescriptor) -> None:
    if not E.group.contains(beta):
        raise InvariantError(f"{beta} is not a member of the declared group")


# ---------------------------------------------------------------------------
# Cauchy / divergence, sup / inf


def is_cauchy(E: PmsDescriptor) -> bool:
    """Cofinality of the distance values in a lex group with archimedean
    leading component reduces to unboundedness of the first coordinate."""
    if E.kind is not PmsKind.PCS:
        raise KindError("is_cauchy applies to pcs descriptors")
    chain = E.chain
    return chain.terminal_level == 1 and isinstance(chain.terminal.bound, Unbounded)


def diverges_to_infinity(E: PmsDescriptor) -> bool:
    if E.kind is not PmsKind.PDS:
        raise KindError("diverges_to_infinity applies to pds descriptors")
    chain = E.chain
    return chain.terminal_level == 1 and isinstance(chain.terminal.bound, Unbounded)


@dataclass(frozen=True)
class SupInf:
    """sup or inf of the distance set in the coordinatewise completion,
    with the membership verdict for the ambient group."""

    value: Value
    in_group: bool


def sup_of(E: PmsDescriptor) -> SupInf:
    """Least upper bound of the distance values of a pcs: the chain constants,
    then the terminal bound (or +inf), padded with -inf."""
    if E.kind is not PmsKind.PCS:
        raise KindError("sup_of applies to pcs descriptors")
    return _extremum(E, POS_INF, NEG_INF)


def inf_of(E: PmsDescriptor) -> SupInf:
    if E.kind is not PmsKind.PDS:
        raise KindError("inf_of applies to pds descriptors")
    return _extremum(E, NEG_INF, POS_INF)


def _extremum(E: PmsDescriptor, unbounded_mark, pad) -> SupInf:
    chain = E.chain
    n = E.group.rank()
    j = chain.terminal_level
    coords: list = [e.value for e in chain.constants]
    bound = chain.terminal.bound
    coords.append(unbounded_mark if isinstance(bound, Unbounded) else bound.r)
    coords.extend([pad] * (n - j))
    in_group = j == n and isinstance(bound, BoundInGroup)
    return SupInf(Value(tuple(coords)), in_group)


# ---------------------------------------------------------------------------
# Limits


def _tail_indices(E: PmsDescriptor, cfg: UltrametricConfiguration,
                  y: str) -> list[int]:
    # For a pds the distance value at index 0 is undefined (it compares
    # against earlier members), so witnessing starts at 1.
    floor = max(E.tail_start, 1) if E.kind is PmsKind.PDS else E.tail_start
    out = []
    for nu in range(len(cfg.sequence)):
        if nu >= floor and cfg.has_distance(y, cfg.sequence[nu]):
            out.append(nu)
    return out


def _delta_at(E: PmsDescriptor, cfg: UltrametricConfiguration,
              nu: int) -> Optional[Value]:
    """delta_nu in sequence indexing, or None when not witnessed.

    Consecutive distances are stored so that entry k is v(z_k - z_{k+1});
    for a pcs that is delta_k, for a pds delta_{k+1}.
    """
    k = nu if E.kind is not PmsKind.PDS else nu - 1
    if k < 0:
        return None
    if E.prefix is not None and k < len(E.prefix):
        return E.prefix[k]
    kind, consec = classify_from_prefix(cfg)
    if kind is not E.kind:
        raise InvalidConfiguration(
            f"configuration classifies as {kind.value}, descriptor says "
            f"{E.kind.value}")
    return consec[k] if k < len(consec) else None


def is_limit(y: str, E: PmsDescriptor, cfg: UltrametricConfiguration,
             known_limit: Optional[str] = None) -> Tri:
    """Is v(y - z_nu) = delta_nu on the witnessed tail?

    Sequence members are decided outright: every member of a pds or pcts is
    a limit, no member of a pcs is.  With a known limit point the check runs
    through the distance to that point instead (the two are equivalent by
    the ultrametric law).
    """
    if y in cfg.sequence:
        return Tri.FALSE if E.kind is PmsKind.PCS else Tri.TRUE
    if known_limit is not None:
        return _is_limit_via(y, E, cfg, known_limit)
    checked = 0
    for nu in _tail_indices(E, cfg, y):
        delta = _delta_at(E, cfg, nu)
        if delta is None:
            continue
        if cfg.distance(y, cfg.sequence[nu]) != delta:
            return Tri.FALSE
        checked += 1
    return Tri.TRUE if checked else Tri.INDETERMINATE


def _is_limit_via(y: str, E: PmsDescriptor, cfg: UltrametricConfiguration,
                  known_limit: str) -> Tri:
    if not cfg.has_distance(y, known_limit):
        return Tri.INDETERMINATE
    d = cfg.distance(y, known_limit)
    if d.is_infinity:
        return Tri.TRUE
    if E.kind is PmsKind.PCTS:
        return Tri.TRUE if d >= E.pcts_delta else Tri.FALSE
    if E.kind is PmsKind.PCS:
        # v(y - limit) must weakly exceed every distance value; with a strict
        # never-attained bound this coincides with exceeding them all.
        return Tri.TRUE if exceeds_all_deltas(d, E) else Tri.FALSE
    return Tri.FALSE if below_all_deltas(d, E) else Tri.TRUE


@dataclass(frozen=True)
class Dichotomy:
    """Outcome of the limit-or-ultimately-constant alternative."""

    is_limit: bool
    constant_value: Optional[Value]


def limit_dichotomy_check(y: str, E: PmsDescriptor,
                          cfg: UltrametricConfiguration) -> Dichotomy:
    tail = _tail_indices(E, cfg, y)
    if E.kind is PmsKind.PCTS:
        if not tail:
            raise IndeterminateError("no tail witnesses for the dichotomy")
        values = [cfg.distance(y, cfg.sequence[nu]) for nu in tail]
        if any(v != values[0] for v in values[1:]):
            raise InvalidConfiguration(
                "distances to a pcts are ultimately constant; witnessed tail "
                "is not")
        return Dichotomy(values[0] >= E.pcts_delta, values[0])
    if len(tail) < 2:
        raise IndeterminateError(
            "need at least two tail witnesses to separate the limit pattern "
            "from an ultimately constant one")
    values = [cfg.distance(y, cfg.sequence[nu]) for nu in tail]
    checkable = [(nu, _delta_at(E, cfg, nu)) for nu in tail]
    checkable = [(nu, d) for nu, d in checkable if d is not None]
    if checkable and all(cfg.distance(y, cfg.sequence[nu]) == d
                         for nu, d in checkable):
        return Dichotomy(True, None)
    if all(v == values[0] for v in values[1:]):
        return Dichotomy(False, values[0])
    raise InvalidConfiguration(
        f"distances from {y} neither follow the distance values nor settle; "
        "not valid pseudo monotone data")


# ---------------------------------------------------------------------------
# Mirror duality


def mirror(E: PmsDescriptor, pcs_type: Optional[PcsType] = None) -> PmsDescriptor:
    """Negate every distance value: swaps the pcs and pds worlds."""
    if E.kind is PmsKind.PCTS:
        return PmsDescriptor(PmsKind.PCTS, E.group, pcts_delta=-E.pcts_delta,
                             prefix=tuple(-v for v in E.prefix) if E.prefix else None)
    chain = E.chain
    flipped = Direction.DECREASING if E.kind is PmsKind.PCS else Direction.INCREASING
    bound = chain.terminal.bound
    if isinstance(bound, BoundInGroup):
        bound = BoundInGroup(-bound.r)
    elif isinstance(bound, BoundNotInGroup):
        bound = BoundNotInGroup(-bound.r)
    entries = tuple(ConstantFrom(-e.value, e.stage) for e in chain.constants)
    entries += (Terminal(flipped, bound),)
    kind = PmsKind.PDS if E.kind is PmsKind.PCS else PmsKind.PCS
    if kind is PmsKind.PCS and pcs_type is None:
        pcs_type = E.pcs_type if E.pcs_type is not None else Algebraic(1)
    return PmsDescriptor(
        kind, E.group, chain=StageChain(entries),
        pcs_type=pcs_type if kind is PmsKind.PCS else None,
        prefix=tuple(-v for v in E.prefix) if E.prefix else None)

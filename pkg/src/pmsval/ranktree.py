"""Rank of the induced valuation via the level-by-level decision tree.

Walking the stage chain coordinate by coordinate: a constant coordinate
descends one level; the strictly moving coordinate ends the walk at one of
three leaves.  An unbounded coordinate or an in-group strict bound inserts a
formal integer factor (rank goes up by one); a bound outside the component
is adjoined to it (rank unchanged).  The placement of the value alpha of
X minus a limit is verified internally against the finite-witness check of
the increasing/decreasing chain contract.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from .engine import check_pcs_equivalence_iii, check_pds_equivalence_iii
from .errors import InvariantError, KindError
from .exact import ExactReal
from .groups import (GroupDescriptor, Value, component_generator, insert_zero)
from .sequences import (BoundInGroup, BoundNotInGroup, PmsDescriptor, PmsKind,
                        SupInf, Unbounded, diverges_to_infinity, inf_of,
                        is_cauchy, sup_of)


class Branch(enum.Enum):
    SUP_INFINITE = "sup-infinite"
    BOUND_NOT_IN_GROUP = "bound-not-in-group"
    BOUND_IN_GROUP_STRICT = "bound-in-group-strict"
    BOUND_IN_GROUP_CONSTANT = "bound-in-group-constant"


class LeafKind(enum.Enum):
    RANK_PLUS_ONE = "rank+1"
    RANK_SAME = "rank-same"


_LEAF_OF_BRANCH = {
    Branch.SUP_INFINITE: LeafKind.RANK_PLUS_ONE,
    Branch.BOUND_NOT_IN_GROUP: LeafKind.RANK_SAME,
    Branch.BOUND_IN_GROUP_STRICT: LeafKind.RANK_PLUS_ONE,
}


@dataclass(frozen=True)
class TreeTrace:
    steps: tuple[tuple[int, Branch], ...]
    leaf: LeafKind


@dataclass(frozen=True)
class RankResult:
    input_rank: int
    output_rank: int
    extended_group: GroupDescriptor
    alpha: Optional[Value]
    trace: Optional[TreeTrace]
    sup_or_inf: Optional[SupInf]
    insert_position: Optional[int]
    group_note: str

    def embed(self, value: Value) -> Value:
        """Order embedding of the base group into the extended group."""
        if self.insert_position is None:
            return value
        return insert_zero(value, self.insert_position)

    @property
    def delta(self) -> int:
        return self.output_rank - self.input_rank


def rank_of_vE(E: PmsDescriptor) -> RankResult:
    """Rank of the induced valuation on the rational function field.

    Sequences that leave the value group unchanged (pcs of transcendental
    type, pcts) short-circuit; otherwise the chain is walked and the result
    carries the extended group model, the placed alpha and the trace.
    """
    n = E.group.rank()
    if E.kind is PmsKind.PCTS or E.is_transcendental_pcs():
        return RankResult(n, n, E.group, None, None, None, None,
                          "value group unchanged")
    if E.kind is PmsKind.PCS and E.pcs_type is None:
        raise KindError("rank walk needs the declared pcs type")
    chain = E.chain
    j = chain.terminal_level
    consts = [e.value for e in chain.constants]
    steps = [(i + 1, Branch.BOUND_IN_GROUP_CONSTANT) for i in range(j - 1)]
    bound = chain.terminal.bound
    pcs = E.kind is PmsKind.PCS
    zero = ExactReal.rational(0)
    unit = ExactReal.rational(1)
    if isinstance(bound, Unbounded):
        branch = Branch.SUP_INFINITE
        extended, _ = E.group.insert_formal_integer(j - 1)
        insert_position = j - 1
        alpha_coords = consts + [unit if pcs else -unit] + [zero] * (n - j + 1)
    elif isinstance(bound, BoundNotInGroup):
        branch = Branch.BOUND_NOT_IN_GROUP
        extended = E.group.adjoin_at(j - 1, bound.r)
        insert_position = None
        alpha_coords = consts + [bound.r] + [zero] * (n - j)
    elif isinstance(bound, BoundInGroup):
        branch = Branch.BOUND_IN_GROUP_STRICT
        extended, _ = E.group.insert_formal_integer(j)
        insert_position = j
        alpha_coords = consts + [bound.r, -unit if pcs else unit] + [zero] * (n - j)
    else:
        raise InvariantError(f"unknown bound {bound!r}")
    steps.append((j, branch))
    leaf = _LEAF_OF_BRANCH[branch]
    trace = TreeTrace(tuple(steps), leaf)
    alpha = Value(tuple(alpha_coords))
    output_rank = extended.rank()
    if output_rank != n + (1 if leaf is LeafKind.RANK_PLUS_ONE else 0):
        raise InvariantError("constructed group rank disagrees with the leaf")
    result = RankResult(n, output_rank, extended, alpha, trace,
                        sup_of(E) if pcs else inf_of(E), insert_position,
                        "model of the extended value group over the "
                        "algebraic closure")
    _verify_alpha(E, result)
    return result


def _verify_alpha(E: PmsDescriptor, result: RankResult) -> None:
    probes = auto_probes(E)
    if E.kind is PmsKind.PCS:
        outcome = check_pcs_equivalence_iii(E, result.alpha, probes, result.embed)
    else:
        outcome = check_pds_equivalence_iii(E, result.alpha, probes, result.embed)
    if not outcome.holds:
        raise InvariantError(
            f"alpha placement fails its chain contract at probe "
            f"{outcome.counterexample}")


def auto_probes(E: PmsDescriptor) -> list[Value]:
    """Group elements straddling the chain: at each level the constant (or
    bound) nudged by the component generator, zero-padded."""
    chain = E.chain
    if chain is None:
        raise KindError("probes are generated from a stage chain")
    n = E.group.rank()
    j = chain.terminal_level
    consts = [e.value for e in chain.constants]
    zero = ExactReal.rational(0)
    probes: list[Value] = []
    seen: set = set()

    def push(coords: list[ExactReal]) -> None:
        v = Value(tuple(coords))
        if v not in seen:
            seen.add(v)
            probes.append(v)

    bound = chain.terminal.bound
    for level in range(1, j + 1):
        comp = E.group.components[level - 1]
        gen = component_generator(comp)
        if level < j:
            center = consts[level - 1]
        elif isinstance(bound, BoundInGroup):
            center = bound.r
        else:
            center = zero
        for k in (-2, -1, 0, 1, 2):
            coord = center + gen.scaled(k)
            push(consts[:level - 1] + [coord] + [zero] * (n - level))
    return probes


# ---------------------------------------------------------------------------
# Leaf enumeration


@dataclass(frozen=True)
class LeafShape:
    """A chain shape: constants down to terminal_level, then one branch."""

    terminal_level: int
    branch: Branch
    rank_delta: int


def enumerate_leaves(n: int) -> list[LeafShape]:
    """All leaves of the depth-n tree: three per level, constant descends;
    a constant coordinate at the last level is contradictory and excluded."""
    if not 1 <= n <= 4:
        raise InvariantError("leaf enumeration supports ranks 1..4")
    out = []
    for level in range(1, n + 1):
        for branch in (Branch.SUP_INFINITE, Branch.BOUND_NOT_IN_GROUP,
                       Branch.BOUND_IN_GROUP_STRICT):
            delta = 1 if _LEAF_OF_BRANCH[branch] is LeafKind.RANK_PLUS_ONE else 0
            out.append(LeafShape(level, branch, delta))
    return out


# ---------------------------------------------------------------------------
# The rank theorem


@dataclass(frozen=True)
class TheoremCheck:
    conditions: dict[str, bool]
    predicate: bool
    rank_delta: int
    holds: bool


def theorem_rank_check(E: PmsDescriptor) -> TheoremCheck:
    """The four sufficient conditions for rank incrementation; necessary as
    well when the input rank is 1."""
    if E.kind is PmsKind.PCTS or E.is_transcendental_pcs():
        raise KindError("the rank theorem concerns algebraic-type pcs and pds")
    pcs = E.kind is PmsKind.PCS
    conditions = {
        "cauchy": pcs and is_cauchy(E),
        "sup_in_group": pcs and sup_of(E).in_group,
        "diverges_to_infinity": (not pcs) and diverges_to_infinity(E),
        "inf_in_group": (not pcs) and inf_of(E).in_group,
    }
    predicate = any(conditions.values())
    result = rank_of_vE(E)
    holds = (not predicate) or result.delta == 1
    if E.group.rank() == 1 and result.delta == 1 and not predicate:
        holds = False
    return TheoremCheck(conditions, predicate, result.delta, holds)


# ---------------------------------------------------------------------------
# DOT rendering of the decision tree


def _labels(pcs: bool, i: int) -> dict[str, str]:
    d = f"δ({i},ν)"  # delta(i,nu)
    if pcs:
        return {
            "inf": f"sup {d} = ∞",
            "real": f"r{i} := sup {d} ∈ R",
            "notin": f"r{i} ∉ Γ{i}",
            "in": f"r{i} ∈ Γ{i}",
            "strict": f"r{i} > {d} for all ν",
            "const": f"r{i} = {d} ultimately",
        }
    return {
        "inf": f"inf {d} = -∞",
        "real": f"r'{i} := inf {d} ∈ R",
        "notin": f"r'{i} ∉ Γ{i}",
        "in": f"r'{i} ∈ Γ{i}",
        "strict": f"r'{i} < {d} for all ν",
        "const": f"r'{i} = {d} ultimately",
    }


def tree_dot(kind: PmsKind, n: int, trace: Optional[TreeTrace] = None) -> str:
    """Graphviz source for the depth-n tree, optionally highlighting a trace.

    The square (constant-coordinate) node of level i doubles as the root of
    level i+1; at the last level it marks the contradictory input instead.
    """
    if kind not in (PmsKind.PCS, PmsKind.PDS):
        raise KindError("the decision tree applies to pcs or pds input")
    pcs = kind is PmsKind.PCS
    taken: set[str] = set()
    if trace is not None:
        taken.add("root1")
        for level, branch in trace.steps:
            if branch is Branch.SUP_INFINITE:
                taken.add(f"inf{level}")
            else:
                taken.add(f"real{level}")
            if branch is Branch.BOUND_NOT_IN_GROUP:
                taken.add(f"notin{level}")
            elif branch is Branch.BOUND_IN_GROUP_STRICT:
                taken.update({f"in{level}", f"strict{level}"})
            elif branch is Branch.BOUND_IN_GROUP_CONSTANT:
                taken.add(f"in{level}")
                taken.add(f"root{level + 1}" if level < n else f"const{level}")

    lines = [
        "digraph rank_walk {",
        "  rankdir=TB;",
        '  node [fontname="Helvetica"];',
    ]

    def node(name: str, label: str, shape: str) -> None:
        style = ", color=red, penwidth=2" if name in taken else ""
        lines.append(f'  {name} [label="{label}", shape={shape}{style}];')

    def edge(a: str, b: str, mark: str = "") -> None:
        attrs = [f'label="{mark}"'] if mark else []
        if a in taken and b in taken:
            attrs.append("color=red")
            attrs.append("penwidth=2")
        inner = f" [{', '.join(attrs)}]" if attrs else ""
        lines.append(f"  {a} -> {b}{inner};")

    seq = "pcs of algebraic type" if pcs else "pds"
    for i in range(1, n + 1):
        lab = _labels(pcs, i)
        if i == 1:
            node("root1", f"rank vK = {n} ({seq})", "circle")
        else:
            node(f"root{i}", _labels(pcs, i - 1)["const"], "box")
        node(f"inf{i}", lab["inf"] + "\\n(*) rank+1", "ellipse")
        node(f"real{i}", lab["real"], "circle")
        node(f"notin{i}", lab["notin"] + "\\n(#) rank same", "ellipse")
        node(f"in{i}", lab["in"], "circle")
        node(f"strict{i}", lab["strict"] + "\\n(*) rank+1", "ellipse")
        edge(f"root{i}", f"inf{i}", "(*)")
        edge(f"root{i}", f"real{i}")
        edge(f"real{i}", f"notin{i}", "(#)")
        edge(f"real{i}", f"in{i}")
        edge(f"in{i}", f"strict{i}", "(*)")
        if i < n:
            edge(f"in{i}", f"root{i + 1}")
        else:
            node(f"const{i}", lab["const"]
                 + "\\ncontradicts strict monotonicity", "box")
            edge(f"in{i}", f"const{i}")
    lines.append("}")
    return "\n".join(lines) + "\n"

"""JSON encoding and decoding of problem files and reports.

Reports are serialized deterministically (sorted keys) so identical inputs
produce byte-identical outputs.  Rationals travel as strings "p/q"; exact
reals as {"rat": ...} or {"surd": {"a", "b", "d"}}; infinities as "inf" and
"-inf"; the scalar value of zero as "inf" in value position.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Optional

from .engine import FactoredRationalFunction, TaggedRoot
from .errors import InvariantError, SchemaError
from .exact import ExactReal
from .groups import (AdjoinedSurd, Component, Cyclic, FormalInteger,
                     FullRational, GroupDescriptor, INFINITY, NEG_INF,
                     POS_INF, PPowerDivisible, Value, _Infinity)
from .oracle import (CompositeField, ConcreteField, ConcreteRationalFunction,
                     PadicRationals, QtElement)
from .sequences import (Algebraic, BoundInGroup, BoundNotInGroup,
                        ConstantFrom, Direction, PmsDescriptor, PmsKind,
                        StageChain, Terminal, Transcendental,
                        UltrametricConfiguration, Unbounded)

SCHEMA_VERSION = "1"


def _fail(path: str, msg: str) -> SchemaError:
    return SchemaError(f"{path}: {msg}")


def _fraction(raw: Any, path: str) -> Fraction:
    try:
        return Fraction(str(raw))
    except (ValueError, ZeroDivisionError) as exc:
        raise _fail(path, f"not a rational number: {raw!r} ({exc})")


# ---------------------------------------------------------------------------
# Exact reals and values


def encode_exact(x: ExactReal) -> Any:
    if x.is_rational:
        return {"rat": str(x.a)}
    return {"surd": {"a": str(x.a), "b": str(x.b), "d": x.d}}


def decode_exact(raw: Any, path: str = "value") -> ExactReal:
    if isinstance(raw, (str, int)):
        return ExactReal.rational(_fraction(raw, path))
    if isinstance(raw, dict):
        if "rat" in raw:
            return ExactReal.rational(_fraction(raw["rat"], path))
        if "surd" in raw:
            s = raw["surd"]
            if not isinstance(s, dict) or not {"a", "b", "d"} <= set(s):
                raise _fail(path, "surd needs fields a, b, d")
            if not isinstance(s["d"], int):
                raise _fail(path, "surd radicand d must be an integer")
            try:
                return ExactReal.surd(_fraction(s["a"], path),
                                      _fraction(s["b"], path), s["d"])
            except InvariantError as exc:
                raise _fail(path, str(exc))
    raise _fail(path, f"not an exact real: {raw!r}")


def encode_coord(c) -> Any:
    if isinstance(c, _Infinity):
        return "inf" if c is POS_INF else "-inf"
    return encode_exact(c)


def decode_coord(raw: Any, path: str):
    if raw == "inf":
        return POS_INF
    if raw == "-inf":
        return NEG_INF
    return decode_exact(raw, path)


def encode_value(v: Value) -> Any:
    if v.is_infinity:
        return "inf"
    return [encode_coord(c) for c in v.coords]


def decode_value(raw: Any, path: str = "value") -> Value:
    if raw == "inf":
        return INFINITY
    if isinstance(raw, (str, int)):
        return Value.of(decode_exact(raw, path))
    if isinstance(raw, list):
        return Value(tuple(decode_coord(c, f"{path}[{i}]")
                           for i, c in enumerate(raw)))
    raise _fail(path, f"not a value tuple: {raw!r}")


# ---------------------------------------------------------------------------
# Components and group descriptors


def encode_component(c: Component) -> dict:
    if isinstance(c, Cyclic):
        return {"kind": "cyclic", "gen": str(c.gen)}
    if isinstance(c, PPowerDivisible):
        return {"kind": "p_divisible", "p": c.p, "scale": str(c.scale)}
    if isinstance(c, FullRational):
        return {"kind": "rationals"}
    if isinstance(c, FormalInteger):
        return {"kind": "formal_integer"}
    if isinstance(c, AdjoinedSurd):
        return {"kind": "adjoined_surd", "base": encode_component(c.base),
                "tau": encode_exact(c.tau)}
    raise SchemaError(f"unknown component {c!r}")


def decode_component(raw: Any, path: str) -> Component:
    if not isinstance(raw, dict) or "kind" not in raw:
        raise _fail(path, "component must be an object with a kind")
    kind = raw["kind"]
    try:
        if kind == "cyclic":
            return Cyclic(_fraction(raw.get("gen", 1), f"{path}.gen"))
        if kind == "p_divisible":
            if not isinstance(raw.get("p"), int):
                raise _fail(path, "p_divisible needs an integer p")
            return PPowerDivisible(raw["p"], _fraction(raw.get("scale", 1),
                                                       f"{path}.scale"))
        if kind == "rationals":
            return FullRational()
        if kind == "formal_integer":
            return FormalInteger()
        if kind == "adjoined_surd":
            if "base" not in raw or "tau" not in raw:
                raise _fail(path, "adjoined_surd needs base and tau")
            return AdjoinedSurd(decode_component(raw["base"], f"{path}.base"),
                                decode_exact(raw["tau"], f"{path}.tau"))
    except InvariantError as exc:
        raise _fail(path, str(exc))
    raise _fail(path, f"unknown component kind {kind!r}")


def encode_group(g: GroupDescriptor) -> dict:
    return {"components": [encode_component(c) for c in g.components]}


def decode_group(raw: Any, path: str = "group") -> GroupDescriptor:
    if not isinstance(raw, dict) or "components" not in raw:
        raise _fail(path, "group must be an object with components")
    comps = raw["components"]
    if not isinstance(comps, list) or not comps:
        raise _fail(path, "components must be a nonempty list")
    return GroupDescriptor(tuple(
        decode_component(c, f"{path}.components[{i}]")
        for i, c in enumerate(comps)))


# ---------------------------------------------------------------------------
# Sequence descriptors


def encode_chain(chain: StageChain) -> list:
    out: list = []
    for e in chain.constants:
        out.append({"const": {"v": encode_exact(e.value), "from": e.stage}})
    t = chain.terminal
    if isinstance(t.bound, Unbounded):
        bound: Any = "unbounded"
    elif isinstance(t.bound, BoundInGroup):
        bound = {"in_group": encode_exact(t.bound.r)}
    else:
        bound = {"not_in_group": encode_exact(t.bound.r)}
    out.append({"terminal": {"dir": t.direction.value, "bound": bound}})
    return out


def decode_chain(raw: Any, path: str) -> StageChain:
    if not isinstance(raw, list) or not raw:
        raise _fail(path, "chain must be a nonempty list")
    entries: list = []
    for i, e in enumerate(raw):
        p = f"{path}[{i}]"
        if not isinstance(e, dict):
            raise _fail(p, "chain entry must be an object")
        if "const" in e:
            c = e["const"]
            if not isinstance(c, dict) or "v" not in c:
                raise _fail(p, "const entry needs a value v")
            stage = c.get("from", 0)
            if not isinstance(stage, int) or stage < 0:
                raise _fail(p, "const stage must be a nonnegative integer")
            entries.append(ConstantFrom(decode_exact(c["v"], f"{p}.v"), stage))
        elif "terminal" in e:
            t = e["terminal"]
            if not isinstance(t, dict) or "dir" not in t or "bound" not in t:
                raise _fail(p, "terminal entry needs dir and bound")
            try:
                direction = Direction(t["dir"])
            except ValueError:
                raise _fail(p, f"unknown direction {t['dir']!r}")
            b = t["bound"]
            if b == "unbounded":
                bound: Any = Unbounded()
            elif isinstance(b, dict) and "in_group" in b:
                bound = BoundInGroup(decode_exact(b["in_group"], f"{p}.bound"))
            elif isinstance(b, dict) and "not_in_group" in b:
                bound = BoundNotInGroup(decode_exact(b["not_in_group"],
                                                     f"{p}.bound"))
            else:
                raise _fail(p, f"unknown bound {b!r}")
            entries.append(Terminal(direction, bound))
        else:
            raise _fail(p, "chain entry must be const or terminal")
    return StageChain(tuple(entries))


def encode_descriptor(E: PmsDescriptor) -> dict:
    out: dict = {"kind": E.kind.value, "group": encode_group(E.group)}
    if E.chain is not None:
        out["chain"] = encode_chain(E.chain)
    if E.pcts_delta is not None:
        out["pcts_delta"] = encode_value(E.pcts_delta)
    if E.pcs_type is not None:
        out["pcs_type"] = ("transcendental" if isinstance(E.pcs_type, Transcendental)
                           else {"algebraic": {"deg": E.pcs_type.degree}})
    if E.prefix is not None:
        out["prefix"] = [encode_value(v) for v in E.prefix]
    return out


def decode_descriptor(raw: Any, path: str = "sequence") -> PmsDescriptor:
    if not isinstance(raw, dict):
        raise _fail(path, "sequence must be an object")
    try:
        kind = PmsKind(raw.get("kind"))
    except ValueError:
        raise _fail(path, f"unknown kind {raw.get('kind')!r}")
    if "group" not in raw:
        raise _fail(path, "sequence needs its group")
    group = decode_group(raw["group"], f"{path}.group")
    chain = decode_chain(raw["chain"], f"{path}.chain") if "chain" in raw else None
    pcts_delta = (decode_value(raw["pcts_delta"], f"{path}.pcts_delta")
                  if "pcts_delta" in raw else None)
    pcs_type = None
    if "pcs_type" in raw:
        pt = raw["pcs_type"]
        if pt == "transcendental":
            pcs_type = Transcendental()
        elif isinstance(pt, dict) and "algebraic" in pt:
            deg = pt["algebraic"].get("deg") if isinstance(pt["algebraic"], dict) \
                else None
            if not isinstance(deg, int):
                raise _fail(path, "algebraic pcs_type needs an integer deg")
            pcs_type = Algebraic(deg)
        else:
            raise _fail(path, f"unknown pcs_type {pt!r}")
    prefix = None
    if "prefix" in raw:
        if not isinstance(raw["prefix"], list):
            raise _fail(path, "prefix must be a list")
        prefix = tuple(decode_value(v, f"{path}.prefix[{i}]")
                       for i, v in enumerate(raw["prefix"]))
    return PmsDescriptor(kind, group, chain=chain, pcts_delta=pcts_delta,
                         pcs_type=pcs_type, prefix=prefix)


# ---------------------------------------------------------------------------
# Configurations


def encode_configuration(cfg: UltrametricConfiguration) -> dict:
    return {
        "sequence": list(cfg.sequence),
        "points": list(cfg.points),
        "distances": [
            {"pair": [p, q], "v": encode_value(v)}
            for (p, q), v in sorted(cfg.dist.items())
        ],
    }


def decode_configuration(raw: Any, path: str = "configuration"
                         ) -> UltrametricConfiguration:
    if not isinstance(raw, dict):
        raise _fail(path, "configuration must be an object")
    seq = raw.get("sequence", [])
    pts = raw.get("points", [])
    if not isinstance(seq, list) or not isinstance(pts, list):
        raise _fail(path, "sequence and points must be name lists")
    dist = {}
    for i, entry in enumerate(raw.get("distances", [])):
        p = f"{path}.distances[{i}]"
        if not isinstance(entry, dict) or "pair" not in entry or "v" not in entry:
            raise _fail(p, "distance entry needs pair and v")
        pair = entry["pair"]
        if not isinstance(pair, list) or len(pair) != 2:
            raise _fail(p, "pair must name two points")
        a, b = sorted(str(x) for x in pair)
        dist[(a, b)] = decode_value(entry["v"], f"{p}.v")
    return UltrametricConfiguration.build([str(s) for s in seq],
                                          [str(s) for s in pts], dist)


# ---------------------------------------------------------------------------
# Tagged rational functions


def encode_function(phi: FactoredRationalFunction) -> dict:
    def enc(roots):
        out = []
        for r in roots:
            if r.is_limit:
                out.append({"limit": True, "mult": r.multiplicity})
            else:
                out.append({"beta": encode_value(r.beta), "mult": r.multiplicity})
        return out

    return {"lead": encode_value(phi.lead_value), "num": enc(phi.num_roots),
            "den": enc(phi.den_roots)}


def decode_function(raw: Any, path: str) -> FactoredRationalFunction:
    if not isinstance(raw, dict) or "lead" not in raw:
        raise _fail(path, "function needs a lead value")

    def dec(key: str) -> tuple[TaggedRoot, ...]:
        roots = raw.get(key, [])
        if not isinstance(roots, list):
            raise _fail(f"{path}.{key}", "roots must be a list")
        out = []
        for i, r in enumerate(roots):
            p = f"{path}.{key}[{i}]"
            if not isinstance(r, dict):
                raise _fail(p, "root must be an object")
            mult = r.get("mult", 1)
            if not isinstance(mult, int) or mult < 1:
                raise _fail(p, "mult must be a positive integer")
            if r.get("limit"):
                out.append(TaggedRoot.limit(mult))
            elif "beta" in r:
                out.append(TaggedRoot.at_distance(decode_value(r["beta"],
                                                               f"{p}.beta"), mult))
            else:
                raise _fail(p, "root must be tagged limit or carry beta")
        return tuple(out)

    return FactoredRationalFunction(decode_value(raw["lead"], f"{path}.lead"),
                                    dec("num"), dec("den"))


# ---------------------------------------------------------------------------
# Oracle sections


def decode_field(raw: Any, path: str) -> ConcreteField:
    if not isinstance(raw, dict) or "kind" not in raw:
        raise _fail(path, "field must be an object with a kind")
    p = raw.get("p")
    if not isinstance(p, int):
        raise _fail(path, "field needs an integer prime p")
    if raw["kind"] == "padic":
        return PadicRationals(p)
    if raw["kind"] == "composite":
        return CompositeField(p)
    raise _fail(path, f"unknown field kind {raw['kind']!r}")


def decode_field_element(field: ConcreteField, raw: Any, path: str):
    if isinstance(field, PadicRationals):
        return _fraction(raw, path)
    if isinstance(raw, (str, int)):
        return QtElement.constant(_fraction(raw, path))
    if isinstance(raw, dict) and "num" in raw:
        num = raw["num"]
        den = raw.get("den", ["1"])
        if not isinstance(num, list) or not isinstance(den, list):
            raise _fail(path, "t-polynomial coefficients must be lists")
        return QtElement.of([_fraction(c, path) for c in num],
                            [_fraction(c, path) for c in den])
    raise _fail(path, f"not a field element: {raw!r}")


def encode_field_element(x) -> Any:
    if isinstance(x, Fraction):
        return str(x)
    return {"num": [str(c) for c in x.num], "den": [str(c) for c in x.den]}


@dataclass(frozen=True)
class OracleSection:
    field: ConcreteField
    terms: tuple
    functions: tuple[tuple[ConcreteRationalFunction, FactoredRationalFunction], ...]


def decode_oracle(raw: Any, path: str = "oracle") -> OracleSection:
    if not isinstance(raw, dict):
        raise _fail(path, "oracle must be an object")
    if "field" not in raw or "sequence" not in raw:
        raise _fail(path, "oracle needs field and sequence")
    field = decode_field(raw["field"], f"{path}.field")
    seq = raw["sequence"]
    if not isinstance(seq, list) or len(seq) < 3:
        raise _fail(path, "oracle sequence needs at least three terms")
    terms = tuple(decode_field_element(field, t, f"{path}.sequence[{i}]")
                  for i, t in enumerate(seq))
    functions = []
    for i, f in enumerate(raw.get("functions", [])):
        p = f"{path}.functions[{i}]"
        if not isinstance(f, dict) or "tagged" not in f:
            raise _fail(p, "oracle function needs its tagged counterpart")
        lead = decode_field_element(field, f.get("lead", "1"), f"{p}.lead")
        num = tuple(decode_field_element(field, r, f"{p}.num_roots[{k}]")
                    for k, r in enumerate(f.get("num_roots", [])))
        den = tuple(decode_field_element(field, r, f"{p}.den_roots[{k}]")
                    for k, r in enumerate(f.get("den_roots", [])))
        concrete = ConcreteRationalFunction(lead, num, den)
        tagged = decode_function(f["tagged"], f"{p}.tagged")
        functions.append((concrete, tagged))
    return OracleSection(field, terms, tuple(functions))


# ---------------------------------------------------------------------------
# Problem files


@dataclass(frozen=True)
class Problem:
    group: Optional[GroupDescriptor]
    sequence: Optional[PmsDescriptor]
    functions: tuple[FactoredRationalFunction, ...]
    configuration: Optional[UltrametricConfiguration]
    oracle: Optional[OracleSection]
    probes: Optional[tuple[Value, ...]]


def decode_problem(raw: Any) -> Problem:
    if not isinstance(raw, dict):
        raise SchemaError("problem file must be a JSON object")
    version = raw.get("version", SCHEMA_VERSION)
    if str(version) != SCHEMA_VERSION:
        raise SchemaError(f"unsupported schema version {version!r}")
    group = decode_group(raw["group"]) if "group" in raw else None
    sequence = decode_descriptor(raw["sequence"]) if "sequence" in raw else None
    functions = tuple(decode_function(f, f"functions[{i}]")
                      for i, f in enumerate(raw.get("functions", [])))
    configuration = (decode_configuration(raw["configuration"])
                     if "configuration" in raw else None)
    oracle = decode_oracle(raw["oracle"]) if "oracle" in raw else None
    probes = None
    if "probes" in raw:
        if not isinstance(raw["probes"], list):
            raise SchemaError("probes must be a list of group elements")
        probes = tuple(decode_value(v, f"probes[{i}]")
                       for i, v in enumerate(raw["probes"]))
    return Problem(group, sequence, functions, configuration, oracle, probes)


def loads_problem(text: str) -> Problem:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}")
    return decode_problem(raw)


def dump_report(report: Any) -> str:
    """Canonical serialization: sorted keys, two-space indent."""
    return json.dumps(report, sort_keys=True, indent=2) + "\n"

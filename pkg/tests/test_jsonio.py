"""JSON round-trips and schema diagnostics."""

from __future__ import annotations

import json
import random

import pytest

from pmsval import ExactReal, INFINITY, Value
from pmsval.errors import InvariantError, SchemaError
from pmsval.jsonio import (decode_chain, decode_descriptor, decode_exact,
                           decode_function, decode_group, decode_problem,
                           decode_value, dump_report, encode_chain,
                           encode_descriptor, encode_exact, encode_function,
                           encode_group, encode_value, loads_problem)

from gen import random_descriptor, random_value


def test_exact_round_trip():
    for x in (ExactReal.rational("3/7"), ExactReal.surd(1, -2, 3),
              ExactReal.rational(-4)):
        assert decode_exact(encode_exact(x)) == x
    assert decode_exact("5/2") == ExactReal.rational("5/2")
    with pytest.raises(SchemaError):
        decode_exact({"surd": {"a": "1", "b": "1"}})
    with pytest.raises(SchemaError):
        decode_exact([1, 2])


def test_value_round_trip():
    rng = random.Random(0)
    for _ in range(50):
        v = random_value(rng, rng.randint(1, 3))
        assert decode_value(encode_value(v)) == v
    assert decode_value("inf").is_infinity
    assert decode_value(encode_value(INFINITY)).is_infinity
    v = Value((ExactReal.rational(1),))
    assert decode_value(["1"]) == v


def test_group_round_trip():
    rng = random.Random(1)
    for _ in range(30):
        E = random_descriptor(rng, rng.randint(1, 3))
        assert decode_group(encode_group(E.group)) == E.group
    with pytest.raises(SchemaError):
        decode_group({"components": []})
    with pytest.raises(SchemaError):
        decode_group({"components": [{"kind": "galaxy"}]})


def test_descriptor_round_trip():
    rng = random.Random(2)
    for _ in range(40):
        E = random_descriptor(rng, rng.randint(1, 3))
        assert decode_descriptor(encode_descriptor(E)) == E


def test_chain_round_trip_and_wire_shape():
    raw = [{"const": {"v": "2", "from": 3}},
           {"terminal": {"dir": "inc", "bound": {"in_group": "0"}}}]
    chain = decode_chain(raw, "chain")
    assert chain.terminal_level == 2
    assert chain.tail_start == 3
    assert decode_chain(encode_chain(chain), "chain") == chain
    with pytest.raises(SchemaError):
        decode_chain([{"terminal": {"dir": "sideways", "bound": "unbounded"}}],
                     "chain")


def test_function_round_trip_matches_wire_encoding():
    raw = {"lead": ["0"], "num": [{"limit": True, "mult": 1},
                                  {"beta": ["3"], "mult": 1}],
           "den": [{"beta": ["1"], "mult": 1}]}
    phi = decode_function(raw, "f")
    assert phi.num_roots[0].is_limit
    assert phi.den_roots[0].beta == Value.of(1)
    assert decode_function(encode_function(phi), "f") == phi
    with pytest.raises(SchemaError):
        decode_function({"lead": ["0"], "num": [{"mult": 1}]}, "f")


def test_decode_problem_validates_mathematics():
    # Schema-valid JSON carrying an invalid chain must raise the invariant,
    # not pass through silently.
    raw = {
        "version": "1",
        "sequence": {
            "kind": "pcs",
            "group": {"components": [{"kind": "cyclic", "gen": "1"}]},
            "chain": [{"terminal": {"dir": "inc", "bound": {"in_group": "1/2"}}}],
            "pcs_type": {"algebraic": {"deg": 1}},
        },
    }
    with pytest.raises(InvariantError):
        decode_problem(raw)


def test_problem_version_and_json_errors():
    with pytest.raises(SchemaError):
        loads_problem("{not json")
    with pytest.raises(SchemaError):
        decode_problem({"version": "99"})
    with pytest.raises(SchemaError):
        decode_problem([])


def test_dump_report_deterministic():
    a = dump_report({"b": 1, "a": [3, 2]})
    b = dump_report({"a": [3, 2], "b": 1})
    assert a == b
    assert json.loads(a) == {"a": [3, 2], "b": 1}


def test_malformed_values_are_schema_errors():
    with pytest.raises(SchemaError):
        decode_exact({"surd": {"a": "1", "b": "1", "d": 0}})
    with pytest.raises(SchemaError):
        decode_group({"components": [{"kind": "cyclic", "gen": "0"}]})
    with pytest.raises(SchemaError):
        decode_group({"components": [{"kind": "p_divisible", "p": 4}]})
    with pytest.raises(SchemaError):
        decode_exact("1/0")


def test_decoder_fuzz_only_package_errors():
    from pmsval.errors import PmsvalError
    rng = random.Random(0xFEED)

    def junk(depth=0):
        roll = rng.random()
        if depth > 3 or roll < 0.25:
            return rng.choice(["1/2", "x", "inf", 0, -3, True, None, "surd",
                               "1/0", {"rat": "q"}, []])
        if roll < 0.5:
            return [junk(depth + 1) for _ in range(rng.randint(0, 3))]
        keys = ["version", "group", "sequence", "kind", "chain", "components",
                "prefix", "functions", "oracle", "probes", "const",
                "terminal", "surd", "a", "b", "d", "v", "pair"]
        return {rng.choice(keys): junk(depth + 1)
                for _ in range(rng.randint(0, 4))}

    for _ in range(400):
        try:
            decode_problem(junk())
        except PmsvalError:
            pass

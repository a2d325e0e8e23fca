"""Command-line front end.

Reads a JSON problem file, dispatches to the engines and writes a JSON
report (sorted keys, so identical inputs give byte-identical outputs).
Exit codes: 0 success, 1 negative outcome (oracle disagreement, failed
probe), 2 schema error, 3 invariant violation, 4 indeterminate.
"""

from __future__ import annotations

import argparse
import sys
from importlib import resources
from pathlib import Path
from typing import Optional

from . import engine, jsonio, oracle, ranktree, sequences
from .errors import (IndeterminateError, InvariantError, PmsvalError,
                     SchemaError)
from .groups import Value
from .jsonio import Problem
from .sequences import PmsKind

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_SCHEMA = 2
EXIT_INVARIANT = 3
EXIT_INDETERMINATE = 4


def _load_problem(name: str) -> Problem:
    path = Path(name)
    if path.exists():
        return jsonio.loads_problem(path.read_text())
    bundled = resources.files("pmsval").joinpath("problems", name)
    if bundled.is_file():
        return jsonio.loads_problem(bundled.read_text())
    raise SchemaError(f"no such problem file or bundled problem: {name}")


def _write(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _require(problem: Problem, attr: str):
    value = getattr(problem, attr)
    if value is None or value == ():
        raise SchemaError(f"this command needs a '{attr}' section in the input")
    return value


# ---------------------------------------------------------------------------
# Report builders


def _supinf_dict(si: sequences.SupInf) -> dict:
    return {"value": jsonio.encode_value(si.value), "in_group": si.in_group}


def _rank_dict(result: ranktree.RankResult, E) -> dict:
    out = {
        "input_rank": result.input_rank,
        "output_rank": result.output_rank,
        "rank_delta": result.delta,
        "extended_group": jsonio.encode_group(result.extended_group),
        "extended_group_label": result.extended_group.label(),
        "group_note": result.group_note,
        "alpha": (jsonio.encode_value(result.alpha)
                  if result.alpha is not None else None),
        "trace": ([{"level": lvl, "branch": br.value}
                   for lvl, br in result.trace.steps]
                  if result.trace is not None else None),
        "leaf": result.trace.leaf.value if result.trace is not None else None,
    }
    if result.sup_or_inf is not None:
        key = "sup" if E.kind is PmsKind.PCS else "inf"
        out[key] = _supinf_dict(result.sup_or_inf)
    return out


def _extension_dict(rep: engine.ExtensionReport) -> dict:
    return {
        "extension_kind": rep.extension_kind,
        "pure": rep.pure,
        "ic_label": rep.ic_label,
        "pair": ({"point": rep.pair.point,
                  "alpha": jsonio.encode_value(rep.pair.alpha),
                  "minimal": rep.pair.minimal}
                 if rep.pair is not None else None),
        "key_polynomials": rep.key_poly_sketch,
    }


def cmd_classify(problem: Problem) -> tuple[dict, int]:
    report: dict = {"command": "classify"}
    kind = None
    if problem.configuration is not None:
        kind, prefix = sequences.classify_from_prefix(problem.configuration)
        report["kind"] = kind.value
        report["delta_prefix"] = [jsonio.encode_value(v) for v in prefix]
    E = problem.sequence
    if E is not None:
        report["declared_kind"] = E.kind.value
        if kind is not None and kind is not E.kind:
            raise InvariantError(
                f"configuration classifies as {kind.value} but the descriptor "
                f"declares {E.kind.value}")
        if kind is not None and E.prefix:
            for nu, (got, declared) in enumerate(zip(prefix, E.prefix)):
                if got != declared:
                    raise InvariantError(
                        f"configuration distance {nu} is {got}, declared "
                        f"prefix says {declared}")
        report.setdefault("kind", E.kind.value)
        if E.prefix:
            report.setdefault("delta_prefix",
                              [jsonio.encode_value(v) for v in E.prefix])
        report["is_cauchy"] = (sequences.is_cauchy(E)
                               if E.kind is PmsKind.PCS else None)
        report["diverges_to_infinity"] = (sequences.diverges_to_infinity(E)
                                          if E.kind is PmsKind.PDS else None)
        report["extension"] = _extension_dict(engine.extension_report(E))
    if kind is None and E is None:
        raise SchemaError("classify needs a configuration or a sequence")
    return report, EXIT_OK


def cmd_ve(problem: Problem) -> tuple[dict, int]:
    E = _require(problem, "sequence")
    functions = _require(problem, "functions")
    rank_result = None
    if E.kind is not PmsKind.PCTS and not E.is_transcendental_pcs():
        rank_result = ranktree.rank_of_vE(E)
    out = []
    for phi in functions:
        iv = engine.v_e(phi, E, rank_result)
        out.append({
            "dominating_degree": iv.form.degree,
            "beta": jsonio.encode_value(iv.form.beta),
            "value": jsonio.encode_value(iv.value),
            "in_vk": iv.in_vk,
            "in_rational_hull_of_vk": iv.in_rational_hull,
            "over_extended_group": iv.over_extended,
        })
    report = {"command": "ve", "functions": out}
    if rank_result is not None:
        report["extended_group"] = jsonio.encode_group(rank_result.extended_group)
    return report, EXIT_OK


def cmd_rank(problem: Problem, dot: Optional[str] = None) -> tuple[dict, int]:
    E = _require(problem, "sequence")
    result = ranktree.rank_of_vE(E)
    report = {"command": "rank", **_rank_dict(result, E)}
    if dot:
        trace = result.trace
        Path(dot).write_text(ranktree.tree_dot(E.kind, E.group.rank(), trace))
        report["dot"] = dot
    return report, EXIT_OK


def cmd_sup(problem: Problem) -> tuple[dict, int]:
    E = _require(problem, "sequence")
    report: dict = {"command": "sup"}
    if E.kind is PmsKind.PCS:
        report["sup"] = _supinf_dict(sequences.sup_of(E))
    elif E.kind is PmsKind.PDS:
        report["inf"] = _supinf_dict(sequences.inf_of(E))
    else:
        d = {"value": jsonio.encode_value(E.pcts_delta), "in_group": True}
        report["sup"] = d
        report["inf"] = d
    return report, EXIT_OK


def cmd_oracle_check(problem: Problem,
                     tail_window: Optional[int] = None) -> tuple[dict, int]:
    section = _require(problem, "oracle")
    if not section.functions:
        raise SchemaError("oracle section lists no functions to check")
    results = []
    all_agree = True
    for concrete, tagged in section.functions:
        rep = oracle.cross_check(section.field, section.terms, concrete,
                                 tagged, problem.sequence, tail_window)
        all_agree = all_agree and rep.agree
        results.append({
            "agree": rep.agree,
            "kind": rep.kind.value,
            "delta_prefix": [jsonio.encode_value(v) for v in rep.delta_prefix],
            "fit": {"kind": rep.fit.kind, "degree": rep.fit.degree,
                    "beta": (jsonio.encode_value(rep.fit.beta)
                             if rep.fit.beta is not None else None)},
            "tagged": {"degree": rep.tagged_form.degree,
                       "beta": jsonio.encode_value(rep.tagged_form.beta)},
            "mismatches": list(rep.mismatches),
        })
    report = {"command": "oracle-check", "all_agree": all_agree,
              "functions": results}
    return report, EXIT_OK if all_agree else EXIT_NEGATIVE


def cmd_probe(problem: Problem,
              probes_file: Optional[str] = None) -> tuple[dict, int]:
    E = _require(problem, "sequence")
    result = ranktree.rank_of_vE(E)
    if result.alpha is None:
        raise IndeterminateError(
            "no alpha to probe: the sequence leaves the value group unchanged")
    probes: Optional[tuple[Value, ...]] = problem.probes
    if probes_file:
        extra = _load_problem(probes_file)
        probes = extra.probes if extra.probes is not None else probes
    probe_list = list(probes) if probes else ranktree.auto_probes(E)
    if E.kind is PmsKind.PCS:
        outcome = engine.check_pcs_equivalence_iii(E, result.alpha, probe_list,
                                                   result.embed)
        contract = "beta > alpha iff beta > every delta"
    else:
        outcome = engine.check_pds_equivalence_iii(E, result.alpha, probe_list,
                                                   result.embed)
        contract = "beta < alpha iff beta < every delta"
    report = {
        "command": "probe",
        "contract": contract,
        "alpha": jsonio.encode_value(result.alpha),
        "holds": outcome.holds,
        "probes_checked": outcome.checked,
        "counterexample": (jsonio.encode_value(outcome.counterexample)
                           if outcome.counterexample is not None else None),
        "auto_probes": not probes,
    }
    return report, EXIT_OK if outcome.holds else EXIT_NEGATIVE


def cmd_leaves(levels: int, kind: str, dot: Optional[str] = None
               ) -> tuple[dict, int]:
    shapes = ranktree.enumerate_leaves(levels)
    report = {
        "command": "leaves",
        "levels": levels,
        "leaves": [{"terminal_level": s.terminal_level,
                    "branch": s.branch.value,
                    "rank_delta": s.rank_delta} for s in shapes],
    }
    if dot:
        Path(dot).write_text(
            ranktree.tree_dot(PmsKind(kind), levels, None))
        report["dot"] = dot
    return report, EXIT_OK


# ---------------------------------------------------------------------------
# Entry point


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pmsval",
        description="Classify pseudo monotone sequences, evaluate the induced "
                    "valuation on the rational function field, and compute "
                    "the rank of its value group.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, needs_in: bool = True) -> argparse.ArgumentParser:
        p = sub.add_parser(name)
        if needs_in:
            p.add_argument("--in", dest="infile", required=True,
                           help="problem file (path or bundled name)")
        p.add_argument("--out", dest="outfile", help="write the report here")
        return p

    add("classify")
    add("ve")
    rank = add("rank")
    rank.add_argument("--dot", help="write the highlighted decision tree here")
    add("sup")
    oc = add("oracle-check")
    oc.add_argument("--tail-window", type=int, dest="tail_window",
                    help="number of trailing points the fit must hold on")
    probe = add("probe")
    probe.add_argument("--probes", help="JSON file with a probes list")
    leaves = add("leaves", needs_in=False)
    leaves.add_argument("--levels", type=int, default=3,
                        help="tree depth to enumerate (1..4)")
    leaves.add_argument("--kind", choices=["pcs", "pds"], default="pcs",
                        help="which tree to render with --dot")
    leaves.add_argument("--dot", help="write the full decision tree here")
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "leaves":
            report, code = cmd_leaves(args.levels, args.kind, args.dot)
        else:
            problem = _load_problem(args.infile)
            if args.command == "classify":
                report, code = cmd_classify(problem)
            elif args.command == "ve":
                report, code = cmd_ve(problem)
            elif args.command == "rank":
                report, code = cmd_rank(problem, args.dot)
            elif args.command == "sup":
                report, code = cmd_sup(problem)
            elif args.command == "oracle-check":
                report, code = cmd_oracle_check(problem, args.tail_window)
            elif args.command == "probe":
                report, code = cmd_probe(problem, args.probes)
            else:  # pragma: no cover
                raise SchemaError(f"unknown command {args.command}")
    except SchemaError as exc:
        _write(jsonio.dump_report({"error": "schema", "detail": str(exc)}),
               getattr(args, "outfile", None))
        return EXIT_SCHEMA
    except IndeterminateError as exc:
        _write(jsonio.dump_report({"error": "indeterminate", "detail": str(exc)}),
               getattr(args, "outfile", None))
        return EXIT_INDETERMINATE
    except (InvariantError, PmsvalError) as exc:
        _write(jsonio.dump_report({"error": "invariant", "detail": str(exc)}),
               getattr(args, "outfile", None))
        return EXIT_INVARIANT
    _write(jsonio.dump_report(report), args.outfile)
    return code


if __name__ == "__main__":
    sys.exit(main())

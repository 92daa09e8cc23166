"""Command-line front end.

Exit codes: 0 ok, 1 negative verdict (UNCOVERABLE or FAIL), 2 input error,
3 size limit exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional, Sequence

from . import approx, generate
from .allequal import BcuInstance, bcu_from_allequal, bcu_solve, reduce_djpsy_to_allequal
from .cnf import Decided, parse_dimacs, preprocess_for_reduction, validate_djpsy_form, write_dimacs
from .core import ScInstance
from .equivalence import contiguous_sat_to_sc
from .reduce3sat import reduce_3sat_to_sc
from .solver import DEFAULT_LIMIT, LimitExceededError, count_covers, dimacs_text, solve
from .svg import render_svg
from .verify import exhaustive_family, random_family, run_verification
from .visibility import Scene, project

OK, NEGATIVE, INPUT_ERROR, LIMIT = 0, 1, 2, 3

REDUCE_KINDS = ("3sat", "allequal", "csat2sc", "sc2csat", "sc2wmaxsat", "bcu", "gap", "amplify")
GEN_KINDS = ("random-sc", "random-3cnf", "djpsy-3cnf", "allequal", "scene")


class InputError(Exception):
    pass


def _read(path: Optional[str]) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc


def _write(path: Optional[str], text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _json(data: Any) -> str:
    return json.dumps(data, indent=2) + "\n"


def _load_instance(text: str) -> ScInstance:
    data = json.loads(text)
    # Reduction outputs wrap the instance next to its certificate.
    if "instance" in data:
        data = data["instance"]
    return ScInstance.from_json(data)


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _decided_json(d: Decided) -> dict:
    return {"decided": {"satisfiable": d.satisfiable, "witness": None if d.witness is None else list(d.witness)}}


def _gap_json(gap: approx.GapInstance) -> dict:
    return {
        "instance": gap.instance.to_json(),
        "epsilon": str(gap.epsilon),
        "j_prime": gap.j_prime.to_json(),
        "t_segments": [list(t) for t in gap.t_segments],
        "graphs": [{"var": g.var,
                    "positive": [None if v.dummy else list(v.slot) for v in g.positive],
                    "negative": [None if v.dummy else list(v.slot) for v in g.negative],
                    "edges": [e.segment for e in g.edges]} for g in gap.graphs],
    }


def cmd_reduce(args) -> int:
    text = _read(args.input)
    kind = args.kind
    if kind in ("3sat", "allequal", "csat2sc", "gap"):
        formula = parse_dimacs(text)
        if kind == "3sat":
            pre = preprocess_for_reduction(formula)
            if isinstance(pre, Decided):
                out = _decided_json(pre)
            else:
                inst, cert = reduce_3sat_to_sc(pre.formula)
                out = {"instance": inst.to_json(), "certificate": cert.to_json(),
                       "fixed": {str(v): b for v, b in sorted(pre.fixed.items())}}
        elif kind == "allequal":
            inst, cert = reduce_djpsy_to_allequal(formula)
            out = {"instance": inst.to_json(), "certificate": cert.to_json()}
        elif kind == "csat2sc":
            out = {"instance": contiguous_sat_to_sc(formula).instance.to_json()}
        else:
            out = _gap_json(approx.gap_instance_from_e3sat(formula, args.epsilon))
        _write(args.output, _json(out))
        return OK
    inst = _load_instance(text)
    if kind == "sc2csat":
        _write(args.output, dimacs_text(inst))
    elif kind == "sc2wmaxsat":
        _write(args.output, approx.write_wdimacs(approx.sc_to_weighted_maxsat(inst)))
    elif kind == "bcu":
        _write(args.output, bcu_from_allequal(inst).dumps())
    else:
        amp = approx.amplify(inst, args.eps_ratio)
        out = {"instance": amp.to_json(), "copies": approx.amplification_factor(inst.target.length, args.eps_ratio),
               "eps_ratio": str(args.eps_ratio)}
        _write(args.output, _json(out))
    return OK


def cmd_solve(args) -> int:
    inst = _load_instance(_read(args.input))
    if args.engine == "count":
        n = count_covers(inst, args.limit)
        report = {"status": "COVERABLE" if n else "UNCOVERABLE", "covers": n}
    else:
        report = solve(inst, args.engine, args.limit).to_json()
    print(report["status"])
    if args.output:
        _write(args.output, _json(report))
    return OK if report["status"] == "COVERABLE" else NEGATIVE


def cmd_approx(args) -> int:
    inst = _load_instance(_read(args.input))
    choice, value = approx.approx_max_sc(inst)
    report = {"value": str(value), "target_length": str(inst.target.length),
              "choice": [p.name for p in choice], "covered": value == inst.target.length}
    print(f"covered length {value} of {inst.target.length}")
    if args.output:
        _write(args.output, _json(report))
    return OK


def cmd_verify(args) -> int:
    if args.input:
        formulas = [parse_dimacs(_read(args.input))]
        formulas += list(random_family(args.trials, args.seed))
    else:
        formulas = list(exhaustive_family()) + list(random_family(args.trials, args.seed))
    report = run_verification(formulas)
    sys.stdout.write(report.text())
    if args.output:
        _write(args.output, _json(report.to_json()))
    return OK if report.passed else NEGATIVE


def cmd_gen(args) -> int:
    kind = args.kind
    if kind == "random-sc":
        text = generate.random_sc(args.n, args.seed).dumps()
    elif kind == "random-3cnf":
        text = write_dimacs(generate.random_3cnf(args.m, args.s, args.seed))
    elif kind == "djpsy-3cnf":
        formula = generate.djpsy_3cnf(args.m, args.seed)
        assert validate_djpsy_form(formula, exact=True).ok
        text = write_dimacs(formula)
    elif kind == "allequal":
        text = generate.random_allequal(args.n, args.seed).dumps()
    else:
        text = generate.random_scene(args.n, args.seed).dumps()
    _write(args.output, text)
    return OK


def cmd_viz(args) -> int:
    _write(args.output, render_svg(_load_instance(_read(args.input))))
    return OK


def cmd_bcu(args) -> int:
    data = json.loads(_read(args.input))
    bcu = BcuInstance.from_json(data) if "regions" in data else bcu_from_allequal(_load_instance(json.dumps(data)))
    radius, selection = bcu_solve(bcu)
    report = {"radius": str(radius), "r": str(bcu.r), "selection": list(selection),
              "status": "COVERABLE" if radius == bcu.r else "UNCOVERABLE"}
    print(f"radius {radius} (segment half-length {bcu.r})")
    if args.output:
        _write(args.output, _json(report))
    return OK


def cmd_project(args) -> int:
    scene = Scene.from_json(json.loads(_read(args.input)))
    _write(args.output, project(scene).dumps())
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="segcover",
        description="Uncertain segment cover: reductions, solvers and approximations. "
                    "MAX-SC is hard to approximate beyond 23/24 unless P = NP.")
    sub = parser.add_subparsers(dest="command", required=True)

    def io(p, needs_out=False):
        p.add_argument("--in", dest="input", help="input file (default stdin)")
        p.add_argument("--out", dest="output", required=needs_out, help="output file (default stdout)")

    p = sub.add_parser("reduce", help="build one problem from another")
    p.add_argument("kind", choices=REDUCE_KINDS)
    io(p)
    p.add_argument("--epsilon", type=_fraction, default=approx.DEFAULT_EPSILON, help="length of J' for gap")
    p.add_argument("--eps-ratio", type=_fraction, default=Fraction(1, 2), help="exponent for amplify")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("solve", help="decide coverability")
    p.add_argument("--engine", choices=("brute", "dpll", "count"), default="dpll")
    p.add_argument("--limit", type=int, default=DEFAULT_LIMIT, help="max segments for exhaustive engines")
    io(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("approx", help="greedy MAX-SC via weighted MAX-SAT")
    io(p)
    p.set_defaults(func=cmd_approx)

    p = sub.add_parser("verify", help="check the 3-SAT reduction against brute force")
    io(p)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="seeded generators")
    p.add_argument("kind", choices=GEN_KINDS)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n", type=int, default=8, help="segments or obstacles")
    p.add_argument("--m", type=int, default=4, help="variables")
    p.add_argument("--s", type=int, default=4, help="clauses")
    p.add_argument("--out", dest="output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("viz", help="render an instance as SVG")
    io(p)
    p.set_defaults(func=cmd_viz)

    p = sub.add_parser("bcu", help="solve a BCU instance (or the one built from an all-equal instance)")
    io(p)
    p.set_defaults(func=cmd_bcu)

    p = sub.add_parser("project", help="project a visibility scene to a cover instance")
    io(p)
    p.set_defaults(func=cmd_project)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except LimitExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return LIMIT
    except (InputError, ValueError, KeyError, TypeError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())

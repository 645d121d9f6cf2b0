"""Command-line front end.

Every command prints one JSON report (sorted keys, rationals as strings) on
stdout.  Exit status: 0 for a definitive answer, 2 when the answer is
undetermined or inconclusive, 1 for input errors.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import __version__
from .checks import CHECKS, run_check
from .domains import Ball, Ellipsoid, domain_from_json, domain_to_json
from .echlattice import CountMode, cap_sequence, embedding_check, lattice_count, report_to_json
from .exactgeom import DomainError, Point, PolyPath, format_rational, parse_rational
from .obstruct import Inconclusive, ObstructionInstance, Witness, conclude, witness_clauses
from .pathlift import Undetermined, classify, general_criterion, verdict_to_json, Lifts
from .sftindex import EndData, index_bidegree, index_general, index_torus_ends, plane_area
from .shape import knotted_member, shape_member
from .svg import emit_svg, lift_scene, obstruct_scene

EXIT_OK, EXIT_INPUT, EXIT_UNDECIDED = 0, 1, 2


class InputError(ValueError):
    pass


def load_json(arg: str):
    """Inline JSON (starting with ``{`` or ``[``) or a path to a JSON file."""
    text = arg if arg.lstrip()[:1] in "{[" else _read(arg)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in {arg!r}: {exc.msg} at line {exc.lineno}, column {exc.colno}") from None


def _read(name: str) -> str:
    try:
        return Path(name).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {name}: {exc.strerror}") from None


def rational_list(text: str) -> list:
    return [parse_rational(x) for x in text.split(",") if x.strip()]


def rational_pair(text: str) -> tuple:
    vals = rational_list(text)
    if len(vals) != 2:
        raise InputError(f"expected two comma-separated rationals, got {text!r}")
    return vals[0], vals[1]


def int_pair(text: str) -> tuple[int, int]:
    parts = text.split(",")
    if len(parts) != 2:
        raise InputError(f"expected m,n, got {text!r}")
    return int(parts[0]), int(parts[1])


def _target(obj) -> Ball | Ellipsoid:
    X = domain_from_json(obj)
    if not isinstance(X, (Ball, Ellipsoid)):
        raise InputError("the target must be a ball or an ellipsoid")
    return X


# --- commands ----------------------------------------------------------------


def cmd_shape(args):
    X = domain_from_json(load_json(args.domain))
    p = Point(*rational_pair(args.point))
    return {"member": shape_member(X, p), "input": {"domain": domain_to_json(X), "point": p.to_json()}}, EXIT_OK


def cmd_knotted(args):
    X = domain_from_json(load_json(args.domain))
    p = Point(*rational_pair(args.point))
    return {"member": knotted_member(X, p), "input": {"domain": domain_to_json(X), "point": p.to_json()}}, EXIT_OK


def cmd_lift(args):
    X = domain_from_json(load_json(args.domain))
    path = PolyPath.from_json(load_json(args.path))
    if args.breakpoints is not None:
        cert = general_criterion(X, path, rational_list(args.breakpoints))
        verdict = Lifts(cert) if cert is not None else Undetermined("no certificate for these breakpoints")
    else:
        verdict = classify(X, path)
    if args.svg:
        emit_svg(lift_scene(X, [path]), args.svg)
    out = verdict_to_json(verdict)
    out["input"] = {"domain": domain_to_json(X), "path": path.to_json()}
    return out, EXIT_UNDECIDED if isinstance(verdict, Undetermined) else EXIT_OK


def cmd_capacity(args):
    seq = cap_sequence(parse_rational(args.a), parse_rational(args.b), args.count)
    return {"sequence": [format_rational(x) for x in seq.entries], "index_origin": 0,
            "input": {"a": args.a, "b": args.b, "count": args.count}}, EXIT_OK


def cmd_lattice(args):
    n = lattice_count(parse_rational(args.a), parse_rational(args.b), parse_rational(args.t), CountMode(args.mode))
    return {"count": n, "input": {"a": args.a, "b": args.b, "t": args.t, "mode": args.mode}}, EXIT_OK


def cmd_embed(args):
    c, d = rational_pair(args.source)
    a, b = rational_pair(args.into)
    rep = embedding_check(c, d, a, b, args.horizon)
    out = report_to_json(rep)
    out["input"] = {"from": [format_rational(c), format_rational(d)],
                    "into": [format_rational(a), format_rational(b)], "horizon": args.horizon}
    return out, EXIT_OK


def cmd_obstruct(args):
    X = domain_from_json(load_json(args.source))
    inst = ObstructionInstance(X, _target(load_json(args.target)))
    w = Witness.from_json(load_json(args.witness)) if args.witness else None
    grid = None if args.search is None else parse_rational(f"1/{args.search}")
    result = conclude(inst, w, grid)
    out = {"input": {"source": domain_to_json(X), "target": domain_to_json(inst.target)}}
    if w is not None:
        out["given_witness_clauses"] = witness_clauses(inst, w)
    if isinstance(result, Inconclusive):
        out["verdict"] = "inconclusive"
        code = EXIT_UNDECIDED
    else:
        out["verdict"] = "obstructed"
        out["witness"] = result.witness.to_json()
        code = EXIT_OK
    if args.svg:
        emit_svg(obstruct_scene(inst, None if isinstance(result, Inconclusive) else result.witness), args.svg)
    return out, code


def cmd_sft(args):
    if args.kind == "general":
        val = index_general(EndData(rational_list(args.pos or ""), c1=args.c1), rational_list(args.neg or ""))
    elif args.kind == "torus":
        val = index_torus_ends(rational_list(args.pos or ""), [int_pair(p) for p in args.neg_pair])
    elif args.kind == "bidegree":
        val = index_bidegree([int_pair(p) for p in args.neg_pair], args.d1, args.d2)
    else:
        val = plane_area(parse_rational(args.r), parse_rational(args.s), args.m, args.n)
    return {"value": format_rational(val) if not isinstance(val, int) else val,
            "input": {k: v for k, v in vars(args).items() if k not in ("func", "json")}}, EXIT_OK


def _threads() -> int:
    env = os.environ.get("SHAPELIFT_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise InputError(f"SHAPELIFT_THREADS must be an integer, got {env!r}") from None
    return os.cpu_count() or 1


def cmd_verify(args):
    numbers = [n for n, _, _ in CHECKS] if not args.only else [int(x) for x in args.only.split(",")]
    workers = min(_threads(), len(numbers))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(run_check, numbers))
    else:
        rows = [run_check(n) for n in numbers]
    report = {"checks": [{"id": n, "name": name, "passed": ok, "detail": detail} for n, name, ok, detail in rows],
              "passed": all(r[2] for r in rows)}
    return report, EXIT_OK if report["passed"] else EXIT_INPUT


def cmd_plot(args):
    X = domain_from_json(load_json(args.domain))
    paths = [PolyPath.from_json(load_json(args.path))] if args.path else []
    emit_svg(lift_scene(X, paths), args.svg)
    return {"written": args.svg, "input": {"domain": domain_to_json(X)}}, EXIT_OK


# --- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="shapelift", description="Exact shape invariants, path lifting and ECH tools.")
    ap.add_argument("--version", action="version", version=f"shapelift {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(func=func)
        p.add_argument("--json", action="store_true", help="machine-readable output (verify prints a table otherwise)")
        return p

    for name, func, help_ in (("shape", cmd_shape, "membership in the reduced shape invariant"),
                              ("knotted", cmd_knotted, "membership in the knotted-torus region")):
        p = add(name, func, help_)
        p.add_argument("--domain", required=True, help="domain JSON (file or inline)")
        p.add_argument("--point", required=True, help="r,s")

    p = add("lift", cmd_lift, "classify a path")
    p.add_argument("--domain", required=True)
    p.add_argument("--path", required=True, help="path JSON: list of [r, s] or {\"vertices\": ...}")
    p.add_argument("--breakpoints", help="t1,t2,... for the q-containment criterion (empty string: one piece)")
    p.add_argument("--svg", help="write a figure")

    p = add("capacity", cmd_capacity, "ECH capacity sequence of E(a,b)")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--count", type=int, default=20, help="largest index (origin 0)")

    p = add("lattice", cmd_lattice, "lattice points with a i + b j <= t")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--t", required=True)
    p.add_argument("--mode", default="row_sum", choices=[m.value for m in CountMode])

    p = add("embed", cmd_embed, "compare capacity sequences of E(c,d) and E(a,b)")
    p.add_argument("--from", dest="source", required=True, help="c,d")
    p.add_argument("--into", required=True, help="a,b")
    p.add_argument("--horizon", type=int, default=2000)

    p = add("obstruct", cmd_obstruct, "embedding obstruction from a witness path")
    p.add_argument("--source", required=True, help="domain JSON")
    p.add_argument("--target", required=True, help="ball or ellipsoid JSON")
    p.add_argument("--witness", help='{"E": [e_r, e_s], "path": [...]}')
    p.add_argument("--search", type=int, help="search on the grid of step 1/N")
    p.add_argument("--svg")

    p = add("sft", cmd_sft, "index and area arithmetic")
    p.add_argument("kind", choices=["general", "torus", "bidegree", "plane-area"])
    p.add_argument("--pos", help="comma-separated positive-end terms")
    p.add_argument("--neg", help="comma-separated negative-end terms (general)")
    p.add_argument("--neg-pair", action="append", default=[], help="m,n (repeatable)")
    p.add_argument("--c1", type=int, default=0)
    p.add_argument("--d1", type=int, default=0)
    p.add_argument("--d2", type=int, default=0)
    p.add_argument("--r")
    p.add_argument("--s")
    p.add_argument("--m", type=int, default=0)
    p.add_argument("--n", type=int, default=0)

    p = add("verify", cmd_verify, "run the reproduction suite")
    p.add_argument("--only", help="comma-separated check numbers")

    p = add("plot", cmd_plot, "draw a domain with its regions")
    p.add_argument("--domain", required=True)
    p.add_argument("--path")
    p.add_argument("--svg", required=True)
    return ap


def _table(report: dict) -> str:
    lines = []
    for c in report["checks"]:
        mark = "PASS" if c["passed"] else "FAIL"
        lines.append(f"[{mark}] {c['id']:>2}  {c['name']:<34} {c['detail']}")
    lines.append("all passed" if report["passed"] else "FAILURES")
    return "\n".join(lines)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "sft" and args.kind == "plane-area" and (args.r is None or args.s is None):
        print("error: plane-area needs --r and --s", file=sys.stderr)
        return EXIT_INPUT
    try:
        report, code = args.func(args)
    except (InputError, DomainError, ValueError, KeyError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    report["version"] = __version__
    if args.command == "verify" and not args.json:
        print(_table(report))
    else:
        print(json.dumps(report, sort_keys=True, indent=2, default=str))
    return code


if __name__ == "__main__":
    sys.exit(main())

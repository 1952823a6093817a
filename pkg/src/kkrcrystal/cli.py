"""Command-line front end.

Exit codes: 0 success / equality, 1 validation failure or mismatch, 2 usage
errors (including malformed JSON).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .boxball import BoxBallState, evolve, solitons, trajectory
from .crystals import Tableau, TensorWord, energy, r_matrix
from .errors import NotSeparatedError, ValidationError
from .kkr import kkr_forward, kkr_scattering, kkr_scattering_all
from .rigged import RiggedConfiguration, validate
from .scattering import ScatteringData, compose_theorem, normal_order
from .verify import SUITES


class _UsageError(Exception):
    pass


def _load_rc(path: str) -> RiggedConfiguration:
    text = Path(path).read_text() if path != "-" else sys.stdin.read()
    try:
        return RiggedConfiguration.from_json(text)
    except json.JSONDecodeError as exc:
        raise _UsageError(f"malformed JSON in {path}: {exc}") from exc
    except (KeyError, TypeError) as exc:
        raise _UsageError(f"bad rigged-configuration document in {path}: {exc}") from exc


def _cmd_validate(args) -> int:
    rc = _load_rc(args.rc)
    msg = validate(rc)
    if args.json:
        print(json.dumps({"valid": msg is None, "detail": msg}))
    else:
        print("valid" if msg is None else f"invalid: {msg}")
    return 0 if msg is None else 1


def _cmd_kkr(args) -> int:
    rc = _load_rc(args.rc)
    path, trace = kkr_forward(rc)
    if args.json:
        doc = {"path": str(path), "factors": [f.word() for f in path.factors], "n": rc.n}
        if args.trace:
            doc["trace"] = json.loads(trace.to_json())
        print(json.dumps(doc))
    else:
        print(path)
        if args.trace:
            print(trace.to_json())
    return 0


def _cmd_rmatrix(args) -> int:
    x = Tableau.from_word(args.x, args.n)
    y = Tableau.from_word(args.y, args.n)
    y2, x2, h = r_matrix(x, y)
    if args.json:
        print(json.dumps({"left": y2.word(), "right": x2.word(), "H": h}))
    else:
        print(f"{y2.word()} {x2.word()} H={h}")
    return 0


def _cmd_energy(args) -> int:
    x = Tableau.from_word(args.x, args.n)
    y = Tableau.from_word(args.y, args.n)
    h = energy(x, y)
    print(json.dumps({"H": h}) if args.json else h)
    return 0


def _cmd_scatter(args) -> int:
    rc = _load_rc(args.rc)
    if args.all:
        outputs = sorted({str(sd) for sd, _ in kkr_scattering_all(rc, args.level)})
        if args.json:
            print(json.dumps({"level": args.level, "scattering": outputs}))
        else:
            for line in outputs:
                print(line)
    else:
        sd, trace = kkr_scattering(rc, args.level)
        if args.json:
            doc = {"level": args.level, "scattering": str(sd)}
            if args.trace:
                doc["trace"] = json.loads(trace.to_json())
            print(json.dumps(doc))
        else:
            print(sd)
            if args.trace:
                print(trace.to_json())
    return 0


def _cmd_normal_order(args) -> int:
    sd = ScatteringData.parse(args.sdata, args.n)
    result = normal_order(sd)
    print(json.dumps({"normal_order": str(result)}) if args.json else result)
    return 0


def _cmd_compose(args) -> int:
    rc = _load_rc(args.rc)
    path = compose_theorem(rc)
    if args.check:
        expected, _ = kkr_forward(rc)
        match = path == expected
        if args.json:
            print(json.dumps({"match": match, "compose": str(path), "kkr": str(expected)}))
        else:
            print(f"MATCH {path}" if match else f"MISMATCH {path} != {expected}")
        return 0 if match else 1
    print(json.dumps({"path": str(path)}) if args.json else path)
    return 0


def _cmd_bbs_evolve(args) -> int:
    state = BoxBallState.from_string(args.state, args.n)
    states = trajectory(state, args.steps, args.carrier)
    if args.json:
        print(json.dumps({"states": [s.to_string() for s in states]}))
    else:
        for s in states:
            print(s.to_string())
    return 0


def _cmd_bbs_solitons(args) -> int:
    state = BoxBallState.from_string(args.state, args.n)
    try:
        tabs = solitons(state)
    except NotSeparatedError:
        print(json.dumps({"separated": False}) if args.json else "not-separated")
        return 1
    words = [t.word() for t in tabs]
    print(json.dumps({"separated": True, "solitons": words}) if args.json else " ".join(words))
    return 0


def _cmd_verify(args) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    reports = []
    status = 0
    for name in names:
        fn = SUITES[name]
        kwargs = {}
        if name == "rmatrix":
            kwargs = {"n_max": args.n, "k_max": args.max_row, "samples": args.samples, "seed": args.seed}
        else:
            kwargs = {"n_max": args.n, "box_max": args.max_boxes, "row_max": args.max_row}
        report = fn(**kwargs)
        reports.append(report)
        if not args.json:
            print(report.summary())
            for failure in report.failures[:1]:
                print(f"  first failure: {failure}")
        if not report.ok:
            status = 1
    if args.json:
        print(json.dumps([r.to_dict() for r in reports]))
    return status


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kkrcrystal",
        description="Rigged configurations, the KKR bijection, R matrices and box-ball systems",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_json(p):
        p.add_argument("--json", action="store_true", help="machine-readable output")

    p = sub.add_parser("validate", help="validate a rigged configuration JSON document")
    p.add_argument("rc")
    add_json(p)
    p.set_defaults(fn=_cmd_validate)

    p = sub.add_parser("kkr", help="forward KKR bijection")
    p.add_argument("rc")
    p.add_argument("--trace", action="store_true")
    add_json(p)
    p.set_defaults(fn=_cmd_kkr)

    p = sub.add_parser("rmatrix", help="combinatorial R matrix on two tableaux")
    p.add_argument("x")
    p.add_argument("y")
    p.add_argument("--n", type=int, required=True)
    add_json(p)
    p.set_defaults(fn=_cmd_rmatrix)

    p = sub.add_parser("energy", help="energy function on two tableaux")
    p.add_argument("x")
    p.add_argument("y")
    p.add_argument("--n", type=int, required=True)
    add_json(p)
    p.set_defaults(fn=_cmd_energy)

    p = sub.add_parser("scatter", help="KKR normal ordered product at a level")
    p.add_argument("rc")
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--all", action="store_true", help="every tie choice")
    p.add_argument("--trace", action="store_true")
    add_json(p)
    p.set_defaults(fn=_cmd_scatter)

    p = sub.add_parser("normal-order", help="normal order a scattering datum")
    p.add_argument("sdata", help='e.g. "22[2]*3[1]"')
    p.add_argument("--n", type=int, required=True)
    add_json(p)
    p.set_defaults(fn=_cmd_normal_order)

    p = sub.add_parser("compose", help="crystal-side pipeline (normal ordering + phi)")
    p.add_argument("rc")
    p.add_argument("--check", action="store_true", help="compare against the KKR image")
    add_json(p)
    p.set_defaults(fn=_cmd_compose)

    p = sub.add_parser("bbs-evolve", help="box-ball time evolution")
    p.add_argument("state")
    p.add_argument("--steps", type=int, default=1)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--carrier", type=int, default=None)
    add_json(p)
    p.set_defaults(fn=_cmd_bbs_evolve)

    p = sub.add_parser("bbs-solitons", help="extract solitons from a state")
    p.add_argument("state")
    p.add_argument("--n", type=int, default=None)
    add_json(p)
    p.set_defaults(fn=_cmd_bbs_solitons)

    p = sub.add_parser("verify", help="run a brute-force verification suite")
    p.add_argument("--suite", choices=list(SUITES) + ["all"], required=True)
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--max-boxes", type=int, default=6)
    p.add_argument("--max-row", type=int, default=4)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=2026)
    add_json(p)
    p.set_defaults(fn=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValidationError as exc:
        print(f"invalid rigged configuration: {exc}", file=sys.stderr)
        return 1
    except (ValueError, NotSeparatedError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

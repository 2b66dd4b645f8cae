"""Command-line interface.

Subcommands: validate, states, lattice, poly, trails, classify, corpus.
Exit codes: 0 success, 1 check failure, 2 input error, 3 resource cap.
All stdout is deterministic for fixed inputs and flags; timing goes to
stderr.  The state cap (default 10000) can be overridden with the
CLOCKOID_STATE_CAP environment variable or --cap.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import corpus as corpus_mod
from . import moves as mv
from . import polynomial as poly
from . import states as st
from .errors import CapExceededError, ClockoidError, DiagramError, KdfSyntaxError
from .kdf import parse_kdf_file
from .laurent import LaurentPoly
from .weights import DEFAULT_WEIGHTS, WeightTable

EXIT_OK = 0
EXIT_CHECK_FAILURE = 1
EXIT_INPUT_ERROR = 2
EXIT_CAP = 3

DEFAULT_CAP = 10000


def _cap(args) -> int:
    if getattr(args, "cap", None) is not None:
        return args.cap
    env = os.environ.get("CLOCKOID_STATE_CAP")
    return int(env) if env else DEFAULT_CAP


def _load(path):
    return parse_kdf_file(path)


def _print_json(data):
    print(json.dumps(data, indent=2, sort_keys=True))


def cmd_validate(args) -> int:
    d = _load(args.path)
    if args.json:
        print(d.regions_json())
    else:
        starred = sum(1 for r in d.regions if r.starred)
        kind = "knot-type" if d.is_knot_type() else "proper"
        print(
            f"valid: {d.name}: {d.n} crossings, {len(d.regions)} regions "
            f"({starred} starred), {kind}"
        )
        for cid, sign in sorted(d.signs().items()):
            print(f"  crossing {cid}: sign {'+' if sign > 0 else '-'}")
    return EXIT_OK


def cmd_states(args) -> int:
    d = _load(args.path)
    states = st.enumerate_states(d, cap=_cap(args))
    clocked = mv.clocked_state(d)
    counterclocked = mv.counterclocked_state(d)
    if args.json:
        data = {
            "name": d.name,
            "count": len(states),
            "clocked": clocked.to_json_dict(),
            "counterclocked": counterclocked.to_json_dict(),
        }
        if args.enumerate:
            data["states"] = [s.to_json_dict() for s in states]
        _print_json(data)
        return EXIT_OK
    if args.count or not (args.enumerate or args.extremal):
        print(f"{d.name}: {len(states)} clock states")
    if args.enumerate:
        for i, s in enumerate(states):
            marks = " ".join(f"x{c}@{q}" for c, q in sorted(s.fingerprint().items()))
            print(f"  s{i}: {marks}")
    if args.extremal or not (args.enumerate or args.count):
        fmt = lambda s: " ".join(f"x{c}@{q}" for c, q in sorted(s.fingerprint().items()))
        print(f"  clocked:         {fmt(clocked) or '(empty)'}")
        print(f"  counter-clocked: {fmt(counterclocked) or '(empty)'}")
    return EXIT_OK


def cmd_lattice(args) -> int:
    d = _load(args.path)
    graph = mv.state_graph(d, cap=_cap(args))
    report = mv.verify_lattice(graph)
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(mv.hasse_dot(graph, title=d.name or "clockwise"))
    if args.json:
        print(report.to_json())
    else:
        print(
            f"{d.name}: {report.num_states} states, "
            f"top s{report.top}, bottom s{report.bottom}, "
            f"{'lattice verified' if report.ok else 'VIOLATIONS'}"
        )
        for v in report.violations:
            print(f"  violation: {v}")
    return EXIT_OK if report.ok else EXIT_CHECK_FAILURE


def _weights_from_arg(spec_text, diagram):
    if spec_text in (None, "default"):
        return None  # diagram table or library default
    if spec_text == "ones":
        return WeightTable.all_ones()
    rows = {}
    with open(spec_text, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            fields = line.split()
            if fields[0] != "weights" or len(fields) != 6:
                raise KdfSyntaxError(f"bad weights line in {spec_text}: {line!r}")
            rows[fields[1]] = tuple(LaurentPoly.parse_monomial(f) for f in fields[2:])
    if set(rows) != {"+", "-"}:
        raise KdfSyntaxError(f"{spec_text} must define 'weights +' and 'weights -'")
    return WeightTable(positive=rows["+"], negative=rows["-"])


def cmd_poly(args) -> int:
    d = _load(args.path)
    table = _weights_from_arg(args.weights, d)
    results = {}
    if args.method in ("sum", "both"):
        results["sum"] = poly.mock_alexander(d, table)
    if args.method in ("permanent", "both"):
        results["permanent"] = poly.permanent_polynomial(d, table)
    for method in sorted(results):
        print(f"{d.name} [{method}]: {results[method]}")
    if args.method == "both" and results["sum"] != results["permanent"]:
        print("MISMATCH between state sum and permanent")
        return EXIT_CHECK_FAILURE
    return EXIT_OK


def cmd_trails(args) -> int:
    d = _load(args.path)
    states = st.enumerate_states(d, cap=_cap(args))
    trails = [st.state_to_trail(d, s) for s in states]
    if args.json:
        _print_json({"name": d.name, "trails": [t.to_json_dict() for t in trails]})
    else:
        print(f"{d.name}: {len(trails)} trails")
        for i, t in enumerate(trails):
            merged = " ".join(f"x{c}:{p}{p+2}" for c, p in t.smoothings)
            print(f"  t{i}: walk {'-'.join(map(str, t.walk))}  smoothings {merged}")
    return EXIT_OK


def cmd_classify(args) -> int:
    d = _load(args.path)
    print(f"{d.name}: {'knot-type' if d.is_knot_type() else 'proper'}")
    return EXIT_OK


def cmd_corpus(args) -> int:
    t0 = time.monotonic()
    report = corpus_mod.run_corpus(args.dir, seeds=args.seeds, state_cap=_cap(args))
    if args.json:
        print(report.to_json())
    else:
        for line in report.lines():
            print(line)
        failures = report.failures()
        print(f"corpus: {len(report.results)} checks, {len(failures)} failures")
    print(f"elapsed: {time.monotonic() - t0:.2f}s", file=sys.stderr)
    return EXIT_OK if report.ok else EXIT_CHECK_FAILURE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="clockoid",
        description="Clock states, clock-move lattices and Mock Alexander "
        "polynomials of knotoid diagrams (KDF format).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="parse and structurally validate a KDF file")
    p.add_argument("path")
    p.add_argument("--json", action="store_true", help="emit regions/incidence JSON")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("states", help="enumerate clock states and extremal states")
    p.add_argument("path")
    p.add_argument("--enumerate", action="store_true")
    p.add_argument("--count", action="store_true")
    p.add_argument("--extremal", action="store_true")
    p.add_argument("--json", action="store_true")
    p.add_argument("--cap", type=int, default=None)
    p.set_defaults(func=cmd_states)

    p = sub.add_parser("lattice", help="verify the clock-move lattice")
    p.add_argument("path")
    p.add_argument("--dot", metavar="OUT", help="write the Hasse diagram as DOT")
    p.add_argument("--json", action="store_true")
    p.add_argument("--cap", type=int, default=None)
    p.set_defaults(func=cmd_lattice)

    p = sub.add_parser("poly", help="compute the Mock Alexander polynomial")
    p.add_argument("path")
    p.add_argument(
        "--weights",
        default="default",
        help="'default', 'ones', or a file with 'weights +'/'weights -' lines",
    )
    p.add_argument("--method", choices=("sum", "permanent", "both"), default="both")
    p.set_defaults(func=cmd_poly)

    p = sub.add_parser("trails", help="list the trails (via the state bijection)")
    p.add_argument("path")
    p.add_argument("--json", action="store_true")
    p.add_argument("--cap", type=int, default=None)
    p.set_defaults(func=cmd_trails)

    p = sub.add_parser("classify", help="knot-type or proper")
    p.add_argument("path")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("corpus", help="run every invariant suite over a corpus dir")
    p.add_argument("dir")
    p.add_argument("--all-checks", action="store_true", help="(default; kept for compatibility)")
    p.add_argument("--seeds", type=int, default=20)
    p.add_argument("--json", action="store_true")
    p.add_argument("--cap", type=int, default=None)
    p.set_defaults(func=cmd_corpus)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CapExceededError as exc:
        print(f"resource cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (KdfSyntaxError, DiagramError, OSError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except ClockoidError as exc:
        print(f"check failure: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILURE


if __name__ == "__main__":
    sys.exit(main())

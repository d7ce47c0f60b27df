"""Command-line front end: ``hbn <command> --g G --k K --d D ...``.

Exit codes: 0 success, 1 domain error or failed verification, 2 usage error.
JSON output is key-sorted and carries no timestamps, so repeated runs are
byte-identical.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys

from . import completion, components, core, oracle, smoothness, strata
from .errors import HBNError, PreconditionFail, WrongClass

_SEQ = re.compile(r"^-?\d+(,-?\d+)*$")


def _sequence_arg(text: str) -> tuple:
    if not _SEQ.match(text.replace(" ", "")):
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    return tuple(int(t) for t in text.replace(" ", "").split(","))


def _rewrite_negative_values(argv):
    # "--e -4,-3,..." would otherwise be read by argparse as an unknown option
    out = []
    it = iter(argv)
    for tok in it:
        if tok == "--e":
            nxt = next(it, None)
            if nxt is None:
                out.append(tok)
            else:
                out.append(f"--e={nxt}")
        else:
            out.append(tok)
    return out


def _emit(obj, fmt: str, table=None, dot=None):
    if fmt == "dot":
        if dot is None:
            raise _Usage("--format dot is only available for hasse")
        sys.stdout.write(dot())
    elif fmt == "table":
        sys.stdout.write(table() if table else _flat_table(obj))
    else:
        sys.stdout.write(to_json(obj) + "\n")


_INT_LIST = re.compile(r"\[\s+(-?\d+(?:,\s+-?\d+)*)\s+\]")


def to_json(obj) -> str:
    """Indented, key-sorted JSON with integer lists kept on one line."""
    text = json.dumps(obj, sort_keys=True, indent=2)
    return _INT_LIST.sub(lambda m: "[" + ", ".join(x.strip() for x in m.group(1).split(",")) + "]", text)


def _flat_table(obj, prefix="") -> str:
    lines = []
    if isinstance(obj, dict):
        for key in sorted(obj):
            val = obj[key]
            if isinstance(val, (dict, list)) and val and not _is_flat_list(val):
                lines.append(_flat_table(val, f"{prefix}{key}.").rstrip("\n"))
            else:
                lines.append(f"{prefix}{key}: {json.dumps(val)}")
    elif isinstance(obj, list):
        for i, val in enumerate(obj):
            lines.append(_flat_table(val, f"{prefix}{i}.").rstrip("\n"))
    else:
        lines.append(f"{prefix.rstrip('.')}: {json.dumps(obj)}")
    return "\n".join(lines) + "\n"


def _is_flat_list(val) -> bool:
    return isinstance(val, list) and all(isinstance(x, (int, str, bool)) or x is None for x in val)


class _Usage(Exception):
    pass


def _params(args) -> core.CurveParams:
    return core.CurveParams(args.g, args.k, args.d)


def _seq(args) -> core.SplittingSequence:
    if args.e is None:
        raise _Usage("--e is required for this command")
    return core.make_sequence(args.e, _params(args))


def _need(args, name):
    if getattr(args, name) is None:
        raise _Usage(f"--{name.replace('_', '-')} is required for this command")
    return getattr(args, name)


def _threads(args) -> int:
    if args.threads is not None:
        return args.threads
    env = os.environ.get("HBN_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise _Usage(f"HBN_THREADS must be an integer, got {env!r}")
    return 1


# ---------------------------------------------------------------- commands


def cmd_classify(args):
    v = smoothness.classify_in_W(_seq(args), _need(args, "r"))
    _emit(v.to_dict(), args.format)
    return 0


def cmd_complete(args):
    e = _seq(args)
    res = completion.complete(e, _need(args, "level"))
    out = res.to_dict()
    out["sequence"] = e.to_list()
    out["E"] = completion.completion_threshold_E(e)
    _emit(out, args.format)
    return 0


def cmd_enumerate(args):
    table = strata.enumerate_types(_params(args), args.u_max, threads=_threads(args))
    _emit(table.to_dict(), args.format, table=table.to_table)
    return 0


def cmd_hasse(args):
    table = strata.enumerate_types(_params(args), args.u_max, threads=_threads(args))
    diagram = strata.hasse_diagram(table)
    _emit(diagram.to_dict(), args.format, table=diagram.to_table, dot=diagram.to_dot)
    return 0


def _components_table(report) -> str:
    lines = [f"# r={report['r']} g={report['params']['g']} k={report['params']['k']} d={report['params']['d']}"]
    lines.append(f"{'sequence':<32} {'dim':>4} {'class':>5} {'l':>3}")
    for c in report["components"]:
        seq = "(" + ",".join(map(str, c["sequence"])) + ")"
        lines.append(f"{seq:<32} {c['dim']:>4} {c['class']:>5} {c['l']:>3}")
    return "\n".join(lines) + "\n"


def cmd_components(args):
    report = components.component_report(_params(args), _need(args, "r"))
    _emit(report, args.format, table=lambda: _components_table(report))
    return 0


def cmd_point(args):
    p = _seq(args)
    r = _need(args, "r")
    lvl = 0 if args.level is None else args.level
    verdicts = [smoothness.classify_in_W(p, r).to_dict()]
    for c in components.components_containing(p, r):
        if c.cls is not components.ComponentClass.I and c.btype.b >= 2 and components.in_V(p, c):
            verdicts.append(smoothness.classify_on_v_locus(c, p).to_dict())
        if core.dominates(p, completion.completed(c.sequence, lvl)):
            verdicts.append(smoothness.certified_smooth_in_closure(c.sequence, lvl, p).to_dict())
    out = {
        "point": p.to_list(),
        "r": r,
        "h0": {str(n): core.h0(p, n) for n in (-1, 0, 1)},
        "u": core.u_invariant(p),
        "dim": core.dim_sigma(p),
        "components": [c.sequence.to_list() for c in components.components_containing(p, r)],
        "verdicts": verdicts,
    }
    _emit(out, args.format)
    return 0


def cmd_witness(args):
    r = _need(args, "r")
    rows = []
    for c in components.components_of_W(_params(args), r):
        if c.cls is not components.ComponentClass.I:
            continue
        row = {"component": c.sequence.to_list(), "second_component": None, "unique_witness": None}
        second = smoothness.type_i_second_component(c)
        if second is not None:
            row["second_component"] = second.to_dict()
        try:
            w = smoothness.type_i_unique_singular_witness(c)
        except (PreconditionFail, WrongClass) as exc:
            row["unique_witness_note"] = str(exc)
        else:
            row["unique_witness"] = None if w is None else w.to_list()
        rows.append(row)
    _emit({"params": _params(args).to_dict(), "r": r, "type_i": rows}, args.format)
    return 0


VERIFY_SUITES = ("levels", "completions", "enumeration", "v", "dominance", "pencil", "runs", "threshold")


def cmd_verify(args):
    params = _params(args)
    names = VERIFY_SUITES if args.suite == "all" else (args.suite,)
    reports = [oracle.run_suite(n, params, r=args.r, u_max=args.u_max, m_max=args.m_max) for n in names]
    out = {"params": params.to_dict(), "passed": all(x.passed for x in reports),
           "suites": [x.to_dict() for x in reports]}
    _emit(out, args.format)
    return 0 if out["passed"] else 1


def cmd_replay(args):
    rep = oracle.replay_worked_examples(args.block)
    _emit(rep.to_dict(), args.format)
    return 0 if rep.passed else 1


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hbn", description="Splitting types and Brill-Noether loci on k-gonal curves.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, params=True):
        if params:
            p.add_argument("--g", type=int, required=True, help="genus")
            p.add_argument("--k", type=int, required=True, help="gonality")
            p.add_argument("--d", type=int, required=True, help="degree")
        p.add_argument("--format", choices=("json", "table", "dot"), default="json")
        return p

    specs = {
        "classify": (cmd_classify, "smoothness of W^r_d at a stratum", ("e", "r")),
        "complete": (cmd_complete, "balanced completion of a sequence", ("e", "level")),
        "enumerate": (cmd_enumerate, "all splitting types with u <= u_max", ("u_max", "threads")),
        "hasse": (cmd_hasse, "covering relations of the dominance order", ("u_max", "threads")),
        "components": (cmd_components, "irreducible components of W^r_d", ("r",)),
        "point": (cmd_point, "every verdict available for a stratum", ("e", "r", "level")),
        "witness": (cmd_witness, "second components and singular witnesses of type I components", ("r",)),
        "verify": (cmd_verify, "brute-force cross-check suites", ("r", "u_max", "m_max")),
    }
    for name, (fn, help_text, flags) in specs.items():
        p = common(sub.add_parser(name, help=help_text))
        if "e" in flags:
            p.add_argument("--e", type=_sequence_arg, help="comma-separated integers")
        if "r" in flags:
            p.add_argument("--r", type=int)
        if "level" in flags:
            p.add_argument("--level", type=int)
        if "u_max" in flags:
            p.add_argument("--u-max", dest="u_max", type=int)
        if "m_max" in flags:
            p.add_argument("--m-max", dest="m_max", type=int, default=3)
        if "threads" in flags:
            p.add_argument("--threads", type=int)
        if name == "verify":
            p.add_argument("--suite", choices=("all",) + VERIFY_SUITES, default="all")
        p.set_defaults(func=fn)

    p = common(sub.add_parser("replay", help="replay the worked numerical examples"), params=False)
    p.add_argument("--block", choices=tuple(oracle.EXAMPLE_BLOCKS))
    p.set_defaults(func=cmd_replay)
    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_rewrite_negative_values(argv))
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.func(args)
    except _Usage as exc:
        parser.print_usage(sys.stderr)
        print(f"hbn: error: {exc}", file=sys.stderr)
        return 2
    except HBNError as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}, sort_keys=True), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

"""Command-line entry point."""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .cornerpoint import build_cornerpoint, contract, dilate, path_ratio
from .decide import decide_emptiness, decide_universality_det
from .errors import (
    EmptyRun,
    ModelSyntaxError,
    MultiClock,
    NotDeterministic,
    SemanticError,
    TafreqError,
    TargetOutOfRange,
    Unrealizable,
    ZeroDelay,
)
from .frontend import (
    AnalysisReport,
    export_report,
    fmt_q,
    load_model,
    parse_q,
    print_model,
    render_dot,
    _encode,
)
from .model import ThresholdQuery, make_run, prefix_frequency, validate
from .oracle import SamplingConfig, sample_run_frequencies
from .ratio import analysed_sccs, compose_ratio_witness, frequency_bounds
from .zeno import zeno_universality

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_UNSUPPORTED = 0, 1, 2, 3
CLASSES = ("all", "nonzeno", "zeno")


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.prog}: {message}")


def _styled(text, code):
    if os.environ.get("TAFREQ_COLOR", "1") == "0" or not sys.stderr.isatty():
        return text
    return f"\033[{code}m{text}\033[0m"


def _err(msg):
    print(_styled("error:", "31;1") + " " + msg, file=sys.stderr)


def _warn(msg):
    print(_styled("warning:", "33") + " " + msg, file=sys.stderr)


def _emit(obj):
    sys.stdout.write(json.dumps(_encode(obj), sort_keys=True, indent=2, ensure_ascii=False) + "\n")


def _load(path):
    a = load_model(path, allow_multiclock=True)
    for d in validate(a):
        if d.level == "warning":
            _warn(d.message)
    a.clock  # raises MultiClock
    return a


def _threshold(text):
    try:
        q = parse_q(text)
    except ValueError as e:
        raise _UsageError(str(e))
    if not 0 <= q < 1:
        raise _UsageError(f"threshold {text} is outside [0,1)")
    return q


def parse_run(text):
    """'1 a; 1/3 a' -> [(Fraction(1), 'a'), (Fraction(1, 3), 'a')]"""
    moves = []
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        bits = part.split()
        if len(bits) != 2:
            raise _UsageError(f"bad run step {part!r}: expected 'delay action'")
        try:
            d = Fraction(bits[0])
        except (ValueError, ZeroDivisionError):
            raise _UsageError(f"bad delay {bits[0]!r}")
        if d <= 0:
            raise ZeroDelay(f"delay {bits[0]} must be positive")
        moves.append((d, bits[1]))
    if not moves:
        raise _UsageError("empty run")
    return moves


def cmd_parse(args):
    a = _load(args.model)
    errors = [d for d in validate(a) if d.level == "error"]
    for d in errors:
        _err(d.message)
    if errors:
        return EXIT_USAGE
    sys.stdout.write(print_model(a))
    return EXIT_OK


def cmd_cornerpoint(args):
    a = _load(args.model)
    g = build_cornerpoint(a)
    lines = [f"# {len(g.states)} states, {len(g.edges)} edges"]
    for e in g.edges:
        act = "eps" if e.action is None else e.action
        lines.append(f"{e.src.label()} -> {e.dst.label()} {act} {e.cost}/{e.reward}")
    sys.stdout.write("\n".join(lines) + "\n")
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(render_dot(g))
    return EXIT_OK


def cmd_bounds(args):
    a = _load(args.model)
    classes = CLASSES if args.word_class == "all" else (args.word_class,)
    rep = AnalysisReport(a.name)
    for c in classes:
        rep.classes[c] = frequency_bounds(a, c).as_dict()
    text = export_report(rep)
    sys.stdout.write(text)
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(text)
    return EXIT_OK


def cmd_empty(args):
    a = _load(args.model)
    q = ThresholdQuery(_threshold(args.threshold), args.strict, args.word_class)
    d = decide_emptiness(a, q)
    out = d.as_dict()
    out["nonempty"] = not d.answer
    _emit(out)
    return EXIT_FAIL if d.answer else EXIT_OK


def cmd_universal(args):
    a = _load(args.model)
    q = ThresholdQuery(_threshold(args.threshold), args.strict, args.word_class)
    d = decide_universality_det(a, q)
    _emit(d.as_dict())
    return EXIT_OK if d.answer else EXIT_FAIL


def cmd_zeno_universal(args):
    a = _load(args.model)
    lines = []
    trace = (lambda c: lines.append(json.dumps(c.as_json(), sort_keys=True, ensure_ascii=False))) if args.trace else None
    d = zeno_universality(a, trace=trace)
    if args.trace:
        with open(args.trace, "w", encoding="utf-8") as fh:
            fh.write("".join(l + "\n" for l in lines))
    _emit(d.as_dict())
    return EXIT_OK if d.answer else EXIT_FAIL


def cmd_eval(args):
    a = _load(args.model)
    run = make_run(a, parse_run(args.run))
    out = {
        "steps": len(run.steps),
        "end": [run.end[0], fmt_q(run.end[1])],
        "frequency": prefix_frequency(run),
    }
    for name, proj in (("contract", contract), ("dilate", dilate)):
        r = path_ratio(proj(run))
        out[name] = None if r is None else r
    _emit(out)
    return EXIT_OK


def cmd_witness(args):
    a = _load(args.model)
    try:
        target = parse_q(args.ratio)
        tol = parse_q(args.tolerance) if args.tolerance else None
    except ValueError as e:
        raise _UsageError(str(e))
    g = build_cornerpoint(a)
    for scc in analysed_sccs(g):
        if scc.min_ratio is None or not scc.min_ratio <= target <= scc.max_ratio:
            continue
        w = compose_ratio_witness(g, scc, target, tol)
        _emit({
            "target": target,
            "ratio": w.ratio,
            "exact": w.exact,
            "case": w.case,
            "scc": scc.id,
            "witness": w.describe(),
        })
        return EXIT_OK
    raise TargetOutOfRange(f"no reachable SCC realises ratio {fmt_q(target)}")


def cmd_oracle(args):
    a = _load(args.model)
    try:
        cfg = SamplingConfig(args.granularity, args.depth, args.seed, args.samples)
    except ValueError as e:
        raise _UsageError(str(e))
    _emit(sample_run_frequencies(a, cfg))
    return EXIT_OK


def build_parser():
    p = _Parser(prog="tafreq", description="Frequency analysis for single-clock timed automata.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("model", help="automaton file")
        sp.set_defaults(fn=fn)
        return sp

    add("parse", cmd_parse, "validate and print the canonical form")
    sp = add("cornerpoint", cmd_cornerpoint, "list the corner-point graph")
    sp.add_argument("--dot", metavar="PATH")
    sp = add("bounds", cmd_bounds, "exact frequency bounds per word class")
    sp.add_argument("--class", dest="word_class", choices=CLASSES, default="all")
    sp.add_argument("--json", metavar="PATH")
    for name, fn, help in (("empty", cmd_empty, "threshold emptiness"),
                           ("universal", cmd_universal, "threshold universality (deterministic)")):
        sp = add(name, fn, help)
        sp.add_argument("--threshold", required=True, metavar="P/Q")
        sp.add_argument("--strict", action="store_true")
        sp.add_argument("--class", dest="word_class", choices=CLASSES, default="all")
    sp = add("zeno-universal", cmd_zeno_universal, "positive-frequency universality on Zeno words")
    sp.add_argument("--trace", metavar="PATH")
    sp = add("eval", cmd_eval, "frequency of a concrete run")
    sp.add_argument("--run", required=True, metavar="'TAU A; TAU A'")
    sp = add("witness", cmd_witness, "build a lasso with the given ratio")
    sp.add_argument("--ratio", required=True, metavar="P/Q")
    sp.add_argument("--tolerance", metavar="P/Q")
    sp = add("oracle", cmd_oracle, "sample run frequencies")
    sp.add_argument("--granularity", type=int, default=6)
    sp.add_argument("--depth", type=int, default=60)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--samples", type=int, default=200)
    return p


def run_cli(argv=None):
    try:
        args = build_parser().parse_args(argv)
        return args.fn(args)
    except _UsageError as e:
        _err(str(e))
        return EXIT_USAGE
    except SystemExit as e:  # --help
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    except (ModelSyntaxError, SemanticError, ZeroDelay, EmptyRun, Unrealizable, OSError) as e:
        _err(str(e))
        return EXIT_USAGE
    except (MultiClock, NotDeterministic) as e:
        _err(f"unsupported model: {e}")
        return EXIT_UNSUPPORTED
    except TargetOutOfRange as e:
        _err(str(e))
        return EXIT_FAIL
    except TafreqError as e:
        _err(str(e))
        return EXIT_FAIL


def main(argv=None):
    sys.exit(run_cli(argv))


if __name__ == "__main__":
    main()

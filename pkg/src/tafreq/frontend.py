"""Text format for automata, DOT rendering and JSON reports."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ModelSyntaxError, SemanticError
from .model import Edge, Guard, TimedAutomaton

SCHEMA_VERSION = 1

_TOKEN = re.compile(r"\s*(?:(->|&&|<=|>=|==|<|>)|([A-Za-z_][A-Za-z0-9_']*)|(\d+)|(\S))")
KEYWORDS = ("automaton", "clock", "alphabet", "init", "accepting", "loc", "edge")


def _tokenize(line, lineno):
    line = line.split("#", 1)[0]
    toks = []
    pos = 0
    while True:
        m = _TOKEN.match(line, pos)
        if not m or m.end() == pos:
            break
        op, ident, num, other = m.groups()
        col = m.start(m.lastindex) + 1
        if other is not None:
            raise ModelSyntaxError(f"unexpected character {other!r}", lineno, col)
        kind = "op" if op else ("id" if ident else "num")
        toks.append((kind, op or ident or num, col))
        pos = m.end()
    return toks, len(line.rstrip()) + 1


class _Line:
    def __init__(self, toks, end_col, lineno):
        self.toks = toks
        self.i = 0
        self.end_col = end_col
        self.lineno = lineno

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def col(self):
        t = self.peek()
        return t[2] if t else self.end_col

    def fail(self, what, expected):
        t = self.peek()
        found = "end of line" if t is None else repr(t[1])
        raise ModelSyntaxError(f"unexpected {found} in {what}", self.lineno, self.col(), expected)

    def ident(self, what):
        t = self.peek()
        if t is None or t[0] != "id":
            self.fail(what, ["identifier"])
        self.i += 1
        return t[1], t[2]

    def expect(self, value, what):
        t = self.peek()
        if t is None or t[1] != value:
            self.fail(what, [repr(value)])
        self.i += 1

    def idents(self, what, at_least=1):
        out = []
        while self.peek() is not None and self.peek()[0] == "id":
            out.append(self.ident(what))
        if len(out) < at_least:
            self.fail(what, ["identifier"])
        return out

    def done(self, what, expected=("end of line",)):
        if self.peek() is not None:
            self.fail(what, list(expected))


def _guard(ln):
    t = ln.peek()
    if t is not None and t[1] == "true":
        ln.i += 1
        return []
    conj = []
    while True:
        clock = ln.ident("guard")
        t = ln.peek()
        if t is None or t[1] not in ("<", "<=", "==", ">=", ">"):
            ln.fail("guard", ["<", "<=", "==", ">=", ">"])
        ln.i += 1
        n = ln.peek()
        if n is None or n[0] != "num":
            ln.fail("guard", ["natural number"])
        ln.i += 1
        conj.append((clock, t[1], int(n[1])))
        t = ln.peek()
        if t is None or t[1] != "&&":
            return conj
        ln.i += 1


def parse_model(source, allow_multiclock=False):
    """Parse the line-oriented automaton format."""
    name = None
    clocks = []
    alphabet = []
    init = []
    accepting = []
    locs = []
    edges = []
    for lineno, raw in enumerate(source.splitlines(), 1):
        toks, end_col = _tokenize(raw, lineno)
        if not toks:
            continue
        ln = _Line(toks, end_col, lineno)
        kw, col = ln.ident("statement")
        if kw not in KEYWORDS:
            ln.i -= 1
            ln.fail("statement", list(KEYWORDS))
        if kw == "automaton":
            n = ln.ident("automaton declaration")
            if name is not None:
                raise SemanticError("duplicate automaton declaration", lineno, col)
            name = n
        elif kw == "clock":
            clocks.extend(ln.idents("clock declaration"))
        elif kw == "alphabet":
            alphabet.extend(ln.idents("alphabet declaration"))
        elif kw == "init":
            init.extend(ln.idents("init declaration"))
        elif kw == "accepting":
            accepting.extend(ln.idents("accepting declaration", at_least=0))
        elif kw == "loc":
            locs.append(ln.ident("location declaration"))
        else:
            src = ln.ident("edge")
            ln.expect("->", "edge")
            dst = ln.ident("edge")
            ln.expect("on", "edge")
            act = ln.ident("edge")
            ln.expect("when", "edge")
            gcol = ln.col()
            guard = _guard(ln)
            resets = []
            t = ln.peek()
            if t is not None and t[1] == "reset":
                ln.i += 1
                resets = ln.idents("reset")
            ln.done("edge", ("&&", "reset", "end of line"))
            edges.append((src, dst, act, guard, gcol, resets, lineno))
            continue
        ln.done(kw + " declaration")

    if name is None:
        raise SemanticError("missing 'automaton NAME' declaration")
    seen = {}
    for what, items in (("clock", clocks), ("alphabet symbol", alphabet), ("location", locs)):
        seen.clear()
        for n, c in items:
            if n in seen:
                raise SemanticError(f"duplicate {what} {n!r}", None, None)
            seen[n] = c
    if not clocks:
        raise SemanticError("no clock declared")
    if len(clocks) > 1 and not allow_multiclock:
        raise SemanticError(f"more than one clock declared ({', '.join(c for c, _ in clocks)})")
    clock_names = [c for c, _ in clocks]
    loc_names = [l for l, _ in locs]
    act_names = [a for a, _ in alphabet]

    def need(ref, pool, what, lineno=None):
        n, c = ref
        if n not in pool:
            raise SemanticError(f"undeclared {what} {n!r}", lineno, c)
        return n

    if not init:
        raise SemanticError("no initial location declared")
    init_set = {need(r, loc_names, "location") for r in init}
    acc_set = {need(r, loc_names, "location") for r in accepting}
    out_edges = []
    for src, dst, act, guard, gcol, resets, lineno in edges:
        conj = []
        for (cname, ccol), op, k in guard:
            need((cname, ccol), clock_names, "clock", lineno)
            conj.append((cname, op, k))
        out_edges.append(Edge(
            need(src, loc_names, "location", lineno),
            need(dst, loc_names, "location", lineno),
            need(act, act_names, "action", lineno),
            Guard(tuple(conj)),
            frozenset(need(r, clock_names, "clock", lineno) for r in resets),
        ))
    return TimedAutomaton(
        name=name[0],
        locations=tuple(loc_names),
        initial=tuple(l for l in loc_names if l in init_set),
        accepting=tuple(l for l in loc_names if l in acc_set),
        alphabet=tuple(act_names),
        clocks=tuple(clock_names),
        edges=tuple(out_edges),
    )


def load_model(path, **kw):
    with open(path, encoding="utf-8") as fh:
        return parse_model(fh.read(), **kw)


def print_model(a):
    lines = [f"automaton {a.name}", "clock " + " ".join(a.clocks)]
    if a.alphabet:
        lines.append("alphabet " + " ".join(a.alphabet))
    lines.append("init " + " ".join(a.initial))
    lines.append("accepting " + " ".join(a.accepting) if a.accepting else "accepting")
    lines += [f"loc {l}" for l in a.locations]
    for e in a.edges:
        s = f"edge {e.source} -> {e.target} on {e.action} when {e.guard}"
        if e.resets:
            s += " reset " + " ".join(c for c in a.clocks if c in e.resets)
        lines.append(s)
    return "\n".join(lines) + "\n"


# DOT

def _q(s):
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


def render_dot(graph):
    from .cornerpoint import CornerPointGraph

    if isinstance(graph, CornerPointGraph):
        return _cp_dot(graph)
    return _ta_dot(graph)


def _ta_dot(a):
    acc = set(a.accepting)
    out = [f"digraph {_q(a.name)} {{", "  rankdir=LR;", "  node [shape=circle];"]
    for l in a.locations:
        style = ' style=filled fillcolor="black" fontcolor="white"' if l in acc else ""
        out.append(f"  {_q(l)} [label={_q(l)}{style}];")
    for i, l in enumerate(a.initial):
        out.append(f"  {_q('__init' + str(i))} [shape=point label=\"\"];")
        out.append(f"  {_q('__init' + str(i))} -> {_q(l)};")
    for e in a.edges:
        label = f"{e.guard}, {e.action}"
        if e.resets:
            label += ", " + ",".join(sorted(e.resets)) + ":=0"
        out.append(f"  {_q(e.source)} -> {_q(e.target)} [label={_q(label)}];")
    out.append("}")
    return "\n".join(out) + "\n"


def _cp_dot(g):
    ids = {s: f"s{i}" for i, s in enumerate(g.states)}
    out = [f"digraph {_q(g.automaton.name + '_cp')} {{", "  rankdir=LR;", "  node [shape=box];"]
    init = set(g.initial)
    for s in g.states:
        attrs = [f"label={_q(s.label())}"]
        if s in g.accepting:
            attrs.append('style=filled fillcolor="black" fontcolor="white"')
        if s in init:
            attrs.append("shape=doublecircle")
        out.append(f"  {ids[s]} [{' '.join(attrs)}];")
    for e in g.edges:
        lab = ("ε" if e.action is None else e.action) + f",{e.cost}/{e.reward}"
        out.append(f"  {ids[e.src]} -> {ids[e.dst]} [label={_q(lab)}];")
    out.append("}")
    return "\n".join(out) + "\n"


_DOT_TOKEN = re.compile(r'\s*(?:(->|[{}\[\];,=])|("(?:[^"\\]|\\.)*")|([A-Za-z_][A-Za-z0-9_.]*|-?\d+(?:\.\d+)?))', re.S)


def dot_tokens(text):
    toks = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _DOT_TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"bad DOT token at offset {pos}: {text[pos:pos + 10]!r}")
        punct, quoted, ident = m.groups()
        if punct:
            toks.append(("p", punct))
        elif quoted is not None:
            toks.append(("id", quoted[1:-1]))
        else:
            toks.append(("id", ident))
        pos = m.end()
    return toks


def check_dot(text):
    """Validate the DOT subset we emit; return (nodes, edges)."""
    toks = dot_tokens(text)
    i = 0

    def take(kind=None, value=None):
        nonlocal i
        if i >= len(toks):
            raise ValueError("unexpected end of DOT input")
        t = toks[i]
        if (kind and t[0] != kind) or (value and t[1] != value):
            raise ValueError(f"unexpected DOT token {t!r}")
        i += 1
        return t[1]

    def attrs():
        nonlocal i
        out = {}
        take("p", "[")
        while toks[i] != ("p", "]"):
            k = take("id")
            take("p", "=")
            out[k] = take("id")
            if toks[i] in (("p", ","), ("p", ";")):
                i += 1
        take("p", "]")
        return out

    if take("id") != "digraph":
        raise ValueError("expected digraph")
    if toks[i][0] == "id":
        i += 1
    take("p", "{")
    nodes, edges = {}, []
    while toks[i] != ("p", "}"):
        name = take("id")
        if toks[i] == ("p", "="):
            i += 1
            take("id")
        elif toks[i] == ("p", "->"):
            i += 1
            dst = take("id")
            a = attrs() if toks[i] == ("p", "[") else {}
            edges.append((name, dst, a))
        elif name in ("node", "edge", "graph"):
            attrs()
        else:
            nodes[name] = attrs() if toks[i] == ("p", "[") else {}
        take("p", ";")
    take("p", "}")
    if i != len(toks):
        raise ValueError("trailing tokens after graph")
    for s, d, _ in edges:
        for n in (s, d):
            if n not in nodes:
                raise ValueError(f"edge references undeclared node {n!r}")
    return nodes, edges


# JSON reports

def fmt_q(x):
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_q(text):
    m = re.fullmatch(r"\s*(-?\d+)\s*/\s*(\d+)\s*", str(text))
    if not m or int(m.group(2)) == 0:
        raise ValueError(f"not a rational p/q: {text!r}")
    return Fraction(int(m.group(1)), int(m.group(2)))


@dataclass
class AnalysisReport:
    automaton: str
    classes: dict = field(default_factory=dict)  # name -> {inf, inf_attained, sup, sup_attained}
    decisions: list = field(default_factory=list)
    timing: dict = field(default_factory=dict)


_Q_KEYS = ("inf", "sup", "threshold")


def _encode(obj):
    if isinstance(obj, Fraction):
        return fmt_q(obj)
    if isinstance(obj, dict):
        return {k: _encode(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_encode(v) for v in obj]
    return obj


def _decode(obj):
    if isinstance(obj, dict):
        return {k: (parse_q(v) if k in _Q_KEYS and isinstance(v, str) else _decode(v)) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_decode(v) for v in obj]
    return obj


def report_dict(report, include_timing=False):
    d = {
        "schema_version": SCHEMA_VERSION,
        "automaton": report.automaton,
        "classes": _encode(report.classes),
        "decisions": _encode(report.decisions),
    }
    if include_timing and report.timing:
        d["timing"] = report.timing
    return d


def export_report(report, include_timing=False):
    return json.dumps(report_dict(report, include_timing), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def load_report(text):
    d = json.loads(text)
    if d.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema version {d.get('schema_version')!r}")
    return AnalysisReport(d["automaton"], _decode(d["classes"]), _decode(d["decisions"]), d.get("timing", {}))

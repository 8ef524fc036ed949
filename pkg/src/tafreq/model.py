"""Single-clock timed automata, timed runs and exact frequencies."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Optional

from .errors import EmptyRun, MultiClock, NotACycle, NotDeterministic, Unrealizable, ZeroDelay

OPS = ("<", "<=", "==", ">=", ">")
WORD_CLASSES = ("all", "nonzeno", "zeno")


class Interval(NamedTuple):
    lo: Fraction
    lo_closed: bool
    hi: Optional[Fraction]  # None means unbounded
    hi_closed: bool

    def is_empty(self):
        if self.hi is None:
            return False
        if self.lo < self.hi:
            return False
        if self.lo == self.hi:
            return not (self.lo_closed and self.hi_closed)
        return True

    def contains(self, v):
        if v < self.lo or (v == self.lo and not self.lo_closed):
            return False
        if self.hi is None:
            return True
        return v < self.hi or (v == self.hi and self.hi_closed)

    def intersect(self, other):
        if self.lo > other.lo:
            lo, lc = self.lo, self.lo_closed
        elif other.lo > self.lo:
            lo, lc = other.lo, other.lo_closed
        else:
            lo, lc = self.lo, self.lo_closed and other.lo_closed
        if self.hi is None:
            hi, hc = other.hi, other.hi_closed
        elif other.hi is None or self.hi < other.hi:
            hi, hc = self.hi, self.hi_closed
        elif other.hi < self.hi:
            hi, hc = other.hi, other.hi_closed
        else:
            hi, hc = self.hi, self.hi_closed and other.hi_closed
        return Interval(lo, lc, hi, hc)

    def includes(self, other):
        """True if `other` (assumed nonempty) is a subset of self."""
        if other.lo < self.lo or (other.lo == self.lo and other.lo_closed and not self.lo_closed):
            return False
        if self.hi is None:
            return True
        if other.hi is None or other.hi > self.hi:
            return False
        if other.hi == self.hi and other.hi_closed and not self.hi_closed:
            return False
        return True


FULL = Interval(Fraction(0), True, None, False)


class Region(NamedTuple):
    """A clock region up to M: point {i}, open interval (i,i+1), or (M,inf)."""

    kind: str  # "point" | "open" | "bot"
    index: int

    def interval(self):
        i = Fraction(self.index)
        if self.kind == "point":
            return Interval(i, True, i, True)
        if self.kind == "open":
            return Interval(i, False, i + 1, False)
        return Interval(i, False, None, False)

    def __str__(self):
        if self.kind == "point":
            return "{%d}" % self.index
        if self.kind == "open":
            return "(%d,%d)" % (self.index, self.index + 1)
        return "bot"


def regions(M):
    out = []
    for i in range(M):
        out.append(Region("point", i))
        out.append(Region("open", i))
    out.append(Region("point", M))
    out.append(Region("bot", M))
    return out


def region_of(v, M):
    if v > M:
        return Region("bot", M)
    i = int(v)  # floor, v >= 0
    if v == i:
        return Region("point", i)
    return Region("open", i)


@dataclass(frozen=True)
class Guard:
    conjuncts: tuple = ()  # (clock, op, const)

    @classmethod
    def true(cls):
        return cls(())

    def interval(self, clock):
        iv = FULL
        for c, op, k in self.conjuncts:
            if c != clock:
                continue
            k = Fraction(k)
            if op == "<":
                part = Interval(Fraction(0), True, k, False)
            elif op == "<=":
                part = Interval(Fraction(0), True, k, True)
            elif op == "==":
                part = Interval(k, True, k, True)
            elif op == ">=":
                part = Interval(k, True, None, False)
            else:
                part = Interval(k, False, None, False)
            iv = iv.intersect(part)
        return iv

    def clocks(self):
        return {c for c, _, _ in self.conjuncts}

    def satisfiable(self):
        return all(not self.interval(c).is_empty() for c in self.clocks())

    def holds(self, valuation):
        """valuation: dict clock -> value"""
        return all(self.interval(c).contains(valuation[c]) for c in self.clocks())

    def max_constant(self):
        return max((k for _, _, k in self.conjuncts), default=0)

    def __str__(self):
        if not self.conjuncts:
            return "true"
        return " && ".join(f"{c} {op} {k}" for c, op, k in self.conjuncts)


@dataclass(frozen=True)
class Edge:
    source: str
    target: str
    action: str
    guard: Guard = field(default_factory=Guard)
    resets: frozenset = frozenset()

    @property
    def is_reset(self):
        return bool(self.resets)


@dataclass(frozen=True)
class TimedAutomaton:
    name: str
    locations: tuple
    initial: tuple
    accepting: tuple
    alphabet: tuple
    clocks: tuple
    edges: tuple

    @property
    def clock(self):
        if len(self.clocks) != 1:
            raise MultiClock(f"automaton {self.name!r} has {len(self.clocks)} clocks, exactly one is supported")
        return self.clocks[0]

    @property
    def max_constant(self):
        return max((e.guard.max_constant() for e in self.edges), default=0)

    def guard_interval(self, edge):
        return edge.guard.interval(self.clock)

    def edges_from(self, loc):
        return [(i, e) for i, e in enumerate(self.edges) if e.source == loc]

    def with_accepting(self, accepting):
        acc = set(accepting)
        return TimedAutomaton(self.name, self.locations, self.initial,
                              tuple(l for l in self.locations if l in acc),
                              self.alphabet, self.clocks, self.edges)

    def complement(self):
        acc = set(self.accepting)
        return self.with_accepting([l for l in self.locations if l not in acc])


class Diagnostic(NamedTuple):
    level: str  # "error" | "warning"
    message: str


def validate(automaton):
    out = []
    locs = set(automaton.locations)
    if len(locs) != len(automaton.locations):
        out.append(Diagnostic("error", "duplicate location"))
    if len(automaton.clocks) != 1:
        out.append(Diagnostic("error", f"multi-clock automaton ({len(automaton.clocks)} clocks) is unsupported"))
    if not automaton.initial:
        out.append(Diagnostic("error", "no initial location"))
    for l in automaton.initial:
        if l not in locs:
            out.append(Diagnostic("error", f"unknown initial location {l!r}"))
    for l in automaton.accepting:
        if l not in locs:
            out.append(Diagnostic("error", f"unknown accepting location {l!r}"))
    used = set()
    for i, e in enumerate(automaton.edges):
        for l in (e.source, e.target):
            if l not in locs:
                out.append(Diagnostic("error", f"edge {i}: unknown location {l!r}"))
        if e.action not in automaton.alphabet:
            out.append(Diagnostic("error", f"edge {i}: action {e.action!r} not in alphabet"))
        used.add(e.action)
        for c in e.guard.clocks() | set(e.resets):
            if c not in automaton.clocks:
                out.append(Diagnostic("error", f"edge {i}: unknown clock {c!r}"))
        for _, op, k in e.guard.conjuncts:
            if op not in OPS or not isinstance(k, int) or k < 0:
                out.append(Diagnostic("error", f"edge {i}: bad comparison {op} {k!r}"))
        if not e.guard.satisfiable():
            out.append(Diagnostic("error", f"edge {i}: unsatisfiable guard {e.guard}"))
    for a in automaton.alphabet:
        if a not in used:
            out.append(Diagnostic("warning", f"alphabet symbol {a!r} is never used"))
    return out


class Step(NamedTuple):
    delay: Fraction
    action: str
    edge: int
    location: str
    valuation: Fraction


@dataclass(frozen=True)
class TimedRun:
    automaton: TimedAutomaton
    start: tuple  # (location, valuation)
    steps: tuple = ()

    @property
    def end(self):
        if not self.steps:
            return self.start
        s = self.steps[-1]
        return (s.location, s.valuation)

    def states(self):
        """(location, valuation) before each step, then the final state."""
        out = [self.start]
        for s in self.steps:
            out.append((s.location, s.valuation))
        return out

    def moves(self):
        return [(s.delay, s.action, s.edge) for s in self.steps]

    def extend(self, moves):
        return make_run(self.automaton, list(self.moves()) + list(moves), self.start)


@dataclass(frozen=True)
class TimedWord:
    letters: tuple  # (timestamp, action)
    zeno_class: str = "finite"


@dataclass(frozen=True)
class ThresholdQuery:
    threshold: Fraction = Fraction(0)
    strict: bool = True
    word_class: str = "all"

    def __post_init__(self):
        if self.word_class not in WORD_CLASSES:
            raise ValueError(f"unknown word class {self.word_class!r}")

    def holds(self, freq):
        return freq > self.threshold if self.strict else freq >= self.threshold


def _fire(automaton, edge, v, delay):
    clock = automaton.clock
    t = v + delay
    if not automaton.guard_interval(edge).contains(t):
        return None
    return Fraction(0) if clock in edge.resets else t


def moves_from(automaton, state, delay, action):
    """All (edge id, successor state) for one move."""
    delay = Fraction(delay)
    if delay <= 0:
        raise ZeroDelay(f"delay must be positive, got {delay}")
    loc, v = state
    out = []
    for i, e in automaton.edges_from(loc):
        if e.action != action:
            continue
        v2 = _fire(automaton, e, v, delay)
        if v2 is not None:
            out.append((i, (e.target, v2)))
    return out


def step(state, delay, action, automaton):
    return {s for _, s in moves_from(automaton, (state[0], Fraction(state[1])), delay, action)}


def make_run(automaton, moves, start=None):
    """Build a checked run from (delay, action[, edge]) triples."""
    if start is None:
        if len(automaton.initial) != 1:
            raise ValueError("start state required when there are several initial locations")
        start = (automaton.initial[0], Fraction(0))
    loc, v = start[0], Fraction(start[1])
    steps = []
    for m in moves:
        delay, action = Fraction(m[0]), m[1]
        options = moves_from(automaton, (loc, v), delay, action)
        if len(m) > 2 and m[2] is not None:
            options = [o for o in options if o[0] == m[2]]
        if not options:
            raise Unrealizable(f"no edge for ({delay}, {action}) from ({loc}, {v})")
        if len(options) > 1:
            raise NotDeterministic(f"several edges for ({delay}, {action}) from ({loc}, {v})")
        idx, (loc, v) = options[0]
        steps.append(Step(delay, action, idx, loc, v))
    return TimedRun(automaton, (start[0], Fraction(start[1])), tuple(steps))


def runs_of_word(automaton, pairs, limit=1000):
    """All runs from initial locations reading (delay, action) pairs."""
    partial = [(l, Fraction(0), ()) for l in automaton.initial]
    for delay, action in pairs:
        nxt = []
        for l0, v0, st in partial:
            loc, v = (st[-1].location, st[-1].valuation) if st else (l0, v0)
            for idx, (l2, v2) in moves_from(automaton, (loc, v), delay, action):
                nxt.append((l0, v0, st + (Step(Fraction(delay), action, idx, l2, v2),)))
        if len(nxt) > limit:
            raise ValueError("too many runs")
        partial = nxt
    return [TimedRun(automaton, (l0, v0), st) for l0, v0, st in partial]


def delay_sums(run, accepting=None):
    acc = set(run.automaton.accepting if accepting is None else accepting)
    inside = Fraction(0)
    total = Fraction(0)
    loc = run.start[0]
    for s in run.steps:
        total += s.delay
        if loc in acc:
            inside += s.delay
        loc = s.location
    return inside, total


def prefix_frequency(run, accepting=None):
    if not run.steps:
        raise EmptyRun("frequency of an empty run is undefined")
    inside, total = delay_sums(run, accepting)
    return inside / total


def limit_frequency_of_lasso(prefix, cycle, accepting=None):
    """Limit frequency of prefix followed by the cycle's moves repeated forever.

    The cycle must be repeatable: replaying its moves from its own end
    state is valid and returns to an equivalent state.
    """
    if not cycle.steps:
        raise EmptyRun("empty cycle")
    a = cycle.automaton
    if prefix.end[0] != cycle.start[0] or prefix.end[1] != cycle.start[1]:
        raise NotACycle("cycle does not start where the prefix ends")
    if cycle.end[0] != cycle.start[0]:
        raise NotACycle("cycle does not return to its starting location")
    try:
        again = make_run(a, cycle.moves(), cycle.end)
    except (Unrealizable, NotDeterministic) as exc:
        raise NotACycle(f"cycle cannot be repeated: {exc}") from None
    if any(a.edges[s.edge].is_reset for s in cycle.steps):
        if again.end != cycle.end:
            raise NotACycle("cycle does not return to an equivalent state")
    else:
        if any(a.guard_interval(a.edges[s.edge]).hi is not None for s in cycle.steps):
            raise NotACycle("reset-free cycle hits a bounded guard")
    inside, total = delay_sums(cycle, accepting)
    return inside / total


def is_deterministic(automaton):
    clock = automaton.clock
    by_key = {}
    for e in automaton.edges:
        by_key.setdefault((e.source, e.action), []).append(e)
    for group in by_key.values():
        for i in range(len(group)):
            for j in range(i + 1, len(group)):
                g1 = group[i].guard.interval(clock)
                g2 = group[j].guard.interval(clock)
                if not g1.intersect(g2).is_empty():
                    return False
    return True


def is_complete(automaton):
    clock = automaton.clock
    M = automaton.max_constant
    for loc in automaton.locations:
        outgoing = [e for e in automaton.edges if e.source == loc]
        for a in automaton.alphabet:
            guards = [e.guard.interval(clock) for e in outgoing if e.action == a]
            for r in regions(M):
                if not any(g.includes(r.interval()) for g in guards):
                    return False
    return True

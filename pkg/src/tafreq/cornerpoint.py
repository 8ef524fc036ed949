"""Weighted corner-point abstraction of a single-clock automaton."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import ceil, floor
from typing import NamedTuple, Optional

from .errors import MismatchedAutomaton, Unrealizable
from .model import Region, make_run

POINT, LEFT, RIGHT, BOT = "•", "•–", "–•", "α⊥"


class PointedRegion(NamedTuple):
    region: Region
    corner: str

    @property
    def kind(self):
        return self.region.kind

    @property
    def index(self):
        return self.region.index

    def order(self):
        r = self.region
        if r.kind == "point":
            return 3 * r.index
        if r.kind == "open":
            return 3 * r.index + (1 if self.corner == LEFT else 2)
        return 3 * r.index + 1

    def value(self):
        """Clock value of the corner; None in the unbounded region."""
        r = self.region
        if r.kind == "point":
            return r.index
        if r.kind == "open":
            return r.index if self.corner == LEFT else r.index + 1
        return None

    def __str__(self):
        r = self.region
        reg = "⊥" if r.kind == "bot" else str(r)
        return f"{reg},{self.corner}"


def point(i):
    return PointedRegion(Region("point", i), POINT)


def left(i):
    return PointedRegion(Region("open", i), LEFT)


def right(i):
    return PointedRegion(Region("open", i), RIGHT)


def bottom(M):
    return PointedRegion(Region("bot", M), BOT)


def pointed_successor(pr, max_constant):
    r = pr.region
    if r.kind == "point":
        return left(r.index) if r.index < max_constant else bottom(max_constant)
    if r.kind == "open":
        return right(r.index) if pr.corner == LEFT else point(r.index + 1)
    return pr


class CpState(NamedTuple):
    location: str
    pr: PointedRegion
    needs_delay: bool = False

    def label(self):
        return f"{self.location},{self.pr}" + ("!" if self.needs_delay else "")


class CpEdge(NamedTuple):
    src: CpState
    dst: CpState
    action: Optional[str]  # None for idling
    cost: int
    reward: int
    edge: Optional[int] = None  # automaton edge id for discrete edges

    @property
    def is_idle(self):
        return self.action is None


class CornerPointGraph:
    def __init__(self, automaton, accepting_locations, states, edges):
        self.automaton = automaton
        self.accepting_locations = frozenset(accepting_locations)
        self.states = states
        self.index = {s: i for i, s in enumerate(states)}
        self.edges = edges
        self.edge_set = frozenset(edges)
        self.out = {s: [] for s in states}
        self.inc = {s: [] for s in states}
        for e in edges:
            self.out[e.src].append(e)
            self.inc[e.dst].append(e)
        M = automaton.max_constant
        self.max_constant = M
        self.initial = [s for s in states if s.location in automaton.initial and s.pr == point(0) and not s.needs_delay]
        self.accepting = frozenset(s for s in states if s.location in self.accepting_locations)

    def idle_edge(self, s):
        for e in self.out[s]:
            if e.is_idle:
                return e
        raise KeyError(s)

    def discrete_edge(self, s, edge_id):
        for e in self.out[s]:
            if e.edge == edge_id:
                return e
        return None

    def state_key(self, s):
        return self.index[s]

    def __repr__(self):
        return f"CornerPointGraph({self.automaton.name!r}, {len(self.states)} states, {len(self.edges)} edges)"


def _state_sort_key(a):
    loc_idx = {l: i for i, l in enumerate(a.locations)}
    return lambda s: (loc_idx[s.location], s.pr.order(), s.needs_delay)


@lru_cache(maxsize=256)
def _build(automaton, accepting):
    clock = automaton.clock
    M = automaton.max_constant
    acc = accepting
    guards = [e.guard.interval(clock) for e in automaton.edges]
    start = [CpState(l, point(0), False) for l in automaton.initial]
    seen = set(start)
    todo = deque(start)
    edges = []
    while todo:
        s = todo.popleft()
        out = []
        nxt = pointed_successor(s.pr, M)
        reward = 1 if (s.pr.corner == LEFT or s.pr.kind == "bot") else 0
        cost = reward if s.location in acc else 0
        out.append(CpEdge(s, CpState(s.location, nxt, False), None, cost, reward))
        if not s.needs_delay:
            reg = s.pr.region.interval()
            for i, e in enumerate(automaton.edges):
                if e.source != s.location or not guards[i].includes(reg):
                    continue
                if clock in e.resets:
                    d = CpState(e.target, point(0), True)
                else:
                    d = CpState(e.target, s.pr, s.pr.kind == "point")
                out.append(CpEdge(s, d, e.action, 0, 0, i))
        for e in out:
            edges.append(e)
            if e.dst not in seen:
                seen.add(e.dst)
                todo.append(e.dst)
    key = _state_sort_key(automaton)
    states = sorted(seen, key=key)
    edges.sort(key=lambda e: (key(e.src), e.edge is not None, e.edge if e.edge is not None else -1))
    return CornerPointGraph(automaton, acc, states, edges)


def build_cornerpoint(automaton, accepting=None):
    """Corner-point graph over states reachable from the initial ones.

    `accepting` overrides the automaton's accepting set for the weights.
    """
    acc = frozenset(automaton.accepting if accepting is None else accepting)
    return _build(automaton, acc)


@dataclass(frozen=True)
class CpPath:
    graph: CornerPointGraph
    start: CpState
    edges: tuple = ()

    def __post_init__(self):
        cur = self.start
        for e in self.edges:
            if e.src != cur:
                raise ValueError(f"path edges do not chain at {cur.label()}")
            cur = e.dst

    @property
    def end(self):
        return self.edges[-1].dst if self.edges else self.start

    @property
    def cost(self):
        return sum(e.cost for e in self.edges)

    @property
    def reward(self):
        return sum(e.reward for e in self.edges)

    def states(self):
        return [self.start] + [e.dst for e in self.edges]

    def accumulators(self):
        """(C_n, R_n) after each discrete edge."""
        c = r = 0
        out = []
        for e in self.edges:
            c += e.cost
            r += e.reward
            if not e.is_idle:
                out.append((c, r))
        return out

    def mus(self):
        """mu before each edge and at the end."""
        out = []
        mu = 0
        for s, e in zip(self.states(), self.edges + (None,)):
            if s.pr == point(0):
                mu = 0
            out.append(mu)
            if e is not None:
                mu += e.reward
        return out

    @property
    def mu(self):
        return self.mus()[-1]

    def __add__(self, other):
        if other.start != self.end:
            raise ValueError("paths do not chain")
        return CpPath(self.graph, self.start, self.edges + other.edges)

    def repeat(self, k):
        if k and self.start != self.end:
            raise ValueError("only closed paths can be repeated")
        return CpPath(self.graph, self.start, self.edges * k)


@dataclass(frozen=True)
class CpLasso:
    stem: CpPath
    cycle: CpPath

    @property
    def reward_class(self):
        return "reward-diverging" if self.cycle.reward > 0 else "reward-converging"


def path_ratio(path):
    r = path.reward
    if r == 0:
        return None
    return Fraction(path.cost, r)


def _start_state(graph, run):
    loc, v = run.start
    if v != 0 or loc not in graph.automaton.initial:
        raise ValueError("projection needs a run starting in an initial location with clock 0")
    return CpState(loc, point(0), False)


def _project(run, late):
    """Canonical projection: fire as late as possible from locations in `late`."""
    a = run.automaton
    g = build_cornerpoint(a)
    M = g.max_constant
    s = _start_state(g, run)
    edges = []
    mu = 0
    v = Fraction(0)

    def idle():
        nonlocal s, mu
        e = g.idle_edge(s)
        edges.append(e)
        mu += e.reward
        s = e.dst

    for st in run.steps:
        t = v + st.delay
        is_late = s.location in late
        if t <= M:
            target = Region("point", int(t)) if t == int(t) else Region("open", int(t))
            if s.pr.region == target:
                if s.pr.corner == LEFT and is_late:
                    idle()
            else:
                while s.pr.region != target:
                    idle()
                if is_late and target.kind == "open":
                    idle()
        else:
            if s.pr.kind != "bot":
                while s.pr.kind != "bot":
                    idle()
                mu = M
            want = ceil(t) if is_late else floor(t)
            for _ in range(max(0, want - mu)):
                idle()
        e = g.discrete_edge(s, st.edge)
        if e is None:
            raise Unrealizable(f"no corner-point edge for step {st} from {s.label()}")
        edges.append(e)
        s = e.dst
        if e.dst.pr == point(0) and a.edges[st.edge].is_reset:
            mu = 0
        v = st.valuation
    return CpPath(g, _start_state(g, run), tuple(edges))


def contract(run):
    acc = set(run.automaton.accepting)
    return _project(run, {l for l in run.automaton.locations if l not in acc})


def dilate(run):
    return _project(run, set(run.automaton.accepting))


def _segments(path):
    segs, cur = [], []
    for e in path.edges:
        cur.append(e)
        if not e.is_idle:
            segs.append(cur)
            cur = []
    return segs, cur


def is_projection(path, run):
    if path.graph.automaton != run.automaton:
        raise MismatchedAutomaton("path and run are over different automata")
    g = path.graph
    if any(e not in g.edge_set for e in path.edges):
        return False
    segs, rest = _segments(path)
    if rest or len(segs) != len(run.steps):
        return False
    loc, v = run.start
    state = path.start
    mus = path.mus()
    pos = 0
    for seg, st in zip(segs, run.steps):
        if state.location != loc or not state.pr.region.interval().contains(v):
            return False
        fire = seg[-1]
        if fire.edge != st.edge or fire.action != st.action:
            return False
        fire_state = fire.src
        t = v + st.delay
        if fire_state.pr.kind == "bot":
            mu = mus[pos + len(seg) - 1]
            if t <= g.max_constant or mu not in (floor(t), ceil(t)):
                return False
        elif not fire_state.pr.region.interval().contains(t):
            return False
        pos += len(seg)
        state = fire.dst
        loc, v = st.location, st.valuation
    return True


def realize_prefix(path, epsilon):
    """A concrete run whose projection is `path`, tracking corners within epsilon/2^n."""
    g = path.graph
    if path.start.pr != point(0) or path.start.location not in g.automaton.initial:
        raise Unrealizable("path must start in an initial corner-point state")
    segs, rest = _segments(path)
    if rest:
        raise Unrealizable("path must end with a discrete edge")
    eps = min(Fraction(epsilon), Fraction(1, 2))
    M = g.max_constant
    mus = path.mus()
    # abstract firing position of each step: (approach, base)
    pos = []
    k = 0
    for seg in segs:
        s = seg[-1].src
        k += len(seg)
        if s.pr.kind == "point":
            pos.append(("at", s.pr.index))
        elif s.pr.kind == "open":
            pos.append(("above", s.pr.index) if s.pr.corner == LEFT else ("below", s.pr.index + 1))
        else:
            mu = mus[k - 1]
            pos.append(("above", M) if mu == M else ("below", mu))
    values = [None] * len(pos)
    j = 0
    while j < len(pos):
        kind, base = pos[j]
        if kind == "above":
            n1 = j
            while n1 + 1 < len(pos) and pos[n1 + 1] == pos[j]:
                n1 += 1
            for i in range(j, n1 + 1):
                values[i] = base + eps / 2 ** ((n1 + 2) + (n1 - i))
            j = n1 + 1
            continue
        values[j] = base if kind == "at" else base - eps / 2 ** (j + 2)
        j += 1
    a = g.automaton
    moves = []
    v = Fraction(0)
    for seg, val in zip(segs, values):
        tau = val - v
        if tau <= 0:
            raise Unrealizable("path forces a non-positive delay")
        e = seg[-1]
        moves.append((tau, e.action, e.edge))
        v = Fraction(0) if a.edges[e.edge].is_reset else val
    run = make_run(a, moves, (path.start.location, Fraction(0)))
    if not is_projection(path, run):
        raise Unrealizable("path has no concrete realization")
    return run


def path_from_states(graph, states, actions=None):
    """Helper: build a path through the listed states (first matching edge)."""
    edges = []
    for i in range(len(states) - 1):
        cands = [e for e in graph.out[states[i]] if e.dst == states[i + 1]]
        if actions is not None:
            cands = [e for e in cands if e.action == actions[i]]
        if not cands:
            raise ValueError(f"no edge {states[i].label()} -> {states[i + 1].label()}")
        edges.append(cands[0])
    return CpPath(graph, states[0], tuple(edges))

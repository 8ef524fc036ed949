"""Zeno-word universality (positive frequency) for one-clock automata."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

from .errors import MultiClock
from .model import Region, ThresholdQuery, regions

W, B = "w", "b"


class TaggedEdge(NamedTuple):
    src: tuple  # (location, tag)
    dst: tuple
    action: str
    guard: object  # Interval
    reset: bool


@dataclass
class TaggedAutomaton:
    source: object
    locations: list
    initial: list
    edges: list

    @property
    def max_constant(self):
        return self.source.max_constant

    @property
    def alphabet(self):
        return self.source.alphabet


def tag_double(automaton):
    """Two copies of the automaton; the b copy records that F was visited.

    Initial locations that are accepting start in the b copy: the first
    delay of every run is spent there, so the frequency is already positive.
    """
    clock = automaton.clock
    F = set(automaton.accepting)
    locs = [(l, t) for t in (W, B) for l in automaton.locations]
    init = [(l, B if l in F else W) for l in automaton.initial]
    edges = []
    for e in automaton.edges:
        g = e.guard.interval(clock)
        r = clock in e.resets
        edges.append(TaggedEdge((e.source, W), (e.target, W), e.action, g, r))
        if e.target in F:
            edges.append(TaggedEdge((e.source, W), (e.target, B), e.action, g, r))
        edges.append(TaggedEdge((e.source, B), (e.target, B), e.action, g, r))
    return TaggedAutomaton(automaton, locs, init, edges)


def _interval_region(c, M):
    return Region("open", c) if c < M else Region("bot", M)


class TailAutomaton:
    """Finite Büchi automaton over states (location, tag, counter)."""

    def __init__(self, tagged):
        self.tagged = tagged
        M = tagged.max_constant
        self.max_constant = M
        self.alphabet = tuple(tagged.alphabet)
        self.states = [(l, t, c) for (l, t) in tagged.locations for c in range(M + 1)]
        self.index = {q: i for i, q in enumerate(self.states)}
        self.accepting = frozenset(q for q in self.states if q[1] == B)
        self.delta = {a: {q: set() for q in self.states} for a in self.alphabet}
        for e in tagged.edges:
            for c in range(M + 1):
                if e.guard.includes(_interval_region(c, M).interval()):
                    src = (e.src[0], e.src[1], c)
                    dst = (e.dst[0], e.dst[1], 0 if e.reset else c)
                    self.delta[e.action][src].add(dst)
        self.acc_mask = 0
        for q in self.accepting:
            self.acc_mask |= 1 << self.index[q]
        self._bits = {a: [0] * len(self.states) for a in self.alphabet}
        for a in self.alphabet:
            for q, ds in self.delta[a].items():
                m = 0
                for d in ds:
                    m |= 1 << self.index[d]
                self._bits[a][self.index[q]] = m
        self.oracle = BadSetOracle(self)

    def mask(self, qs):
        m = 0
        for q in qs:
            m |= 1 << self.index[q]
        return m

    def post(self, mask, a):
        out = 0
        bits = self._bits[a]
        i = 0
        while mask:
            if mask & 1:
                out |= bits[i]
            mask >>= 1
            i += 1
        return out

    def edges(self):
        for a in self.alphabet:
            for q in self.states:
                for d in sorted(self.delta[a][q]):
                    yield q, a, d


def build_tail_automaton(tagged):
    return TailAutomaton(tagged)


def _breakpoint_search(bf, start_mask):
    """Explore (S, O) breakpoint pairs; return a lasso word avoiding acceptance, or None."""
    start = (start_mask, 0)
    seen = {start: None}
    order = [start]
    adj = {}
    q = deque([start])
    while q:
        node = q.popleft()
        S, O = node
        outs = []
        for a in bf.alphabet:
            S2 = bf.post(S, a)
            O2 = bf.post(O, a) & bf.acc_mask if O else S2 & bf.acc_mask
            nxt = (S2, O2)
            outs.append((a, nxt))
            if nxt not in seen:
                seen[nxt] = (node, a)
                order.append(nxt)
                q.append(nxt)
        adj[node] = outs
    from .ratio import tarjan

    comps = tarjan(order, lambda v: [n for _, n in adj[v]])
    for comp in comps:
        cs = set(comp)
        cyclic = len(comp) > 1 or any(n == comp[0] for _, n in adj[comp[0]])
        if not cyclic:
            continue
        bps = [v for v in comp if v[1] == 0]
        if not bps:
            continue
        bp = bps[0]
        # stem
        stem = []
        v = bp
        while seen[v] is not None:
            v, a = seen[v][0], seen[v][1]
            stem.append(a)
        stem.reverse()
        # cycle back to bp inside the component
        prev = {}
        dq = deque()
        for a, n in adj[bp]:
            if n in cs and n not in prev:
                prev[n] = (bp, a)
                dq.append(n)
        while bp not in prev:
            v = dq.popleft()
            for a, n in adj[v]:
                if n in cs and n not in prev:
                    prev[n] = (v, a)
                    dq.append(n)
        cyc = []
        v = bp
        while True:
            u, a = prev[v]
            cyc.append(a)
            v = u
            if v == bp:
                break
        cyc.reverse()
        return stem, cyc
    return None


class BadSetOracle:
    """Memoised Büchi universality of the tail automaton from a state set."""

    def __init__(self, bf):
        self.bf = bf
        self.memo = {}

    def universal(self, q0):
        mask = self.bf.mask(q0)
        if mask not in self.memo:
            self.memo[mask] = _breakpoint_search(self.bf, mask) is None
        return self.memo[mask]


def buchi_universal(bf, q0):
    return bf.oracle.universal(q0)


def buchi_counterexample(bf, q0):
    """(stem, cycle) of actions for a rejected lasso word, or None."""
    return _breakpoint_search(bf, bf.mask(q0))


# abstract configurations

class AbstractConf(NamedTuple):
    gamma: frozenset  # (loc, tag, k) with integer clock value k <= M
    h: tuple  # letters: frozensets of (loc, tag, c), increasing fractional part
    gamma_prime: frozenset  # (loc, tag) with clock > M

    def set_of(self, M):
        out = set(self.gamma)
        for letter in self.h:
            out |= letter
        out |= {(l, t, M) for l, t in self.gamma_prime}
        return frozenset(out)

    def as_json(self):
        return {
            "gamma": sorted([list(x) for x in self.gamma]),
            "h": [sorted([list(x) for x in letter]) for letter in self.h],
            "gamma_prime": sorted([list(x) for x in self.gamma_prime]),
        }


def abstract_initial(tagged):
    return AbstractConf(frozenset((l, t, 0) for l, t in tagged.initial), (), frozenset())


def abstr(states, M):
    """Abstraction of a finite set of concrete (loc, tag, value) triples."""
    gamma, gp, frac = set(), set(), {}
    for l, t, v in states:
        v = Fraction(v)
        if v > M:
            gp.add((l, t))
        elif v.denominator == 1:
            gamma.add((l, t, int(v)))
        else:
            k = v.numerator // v.denominator
            frac.setdefault(v - k, set()).add((l, t, k))
    h = tuple(frozenset(frac[f]) for f in sorted(frac))
    return AbstractConf(frozenset(gamma), h, frozenset(gp))


def elementary_step(conf, M):
    if conf.gamma:
        low = frozenset(x for x in conf.gamma if x[2] < M)
        top = frozenset((l, t) for l, t, k in conf.gamma if k == M)
        h = ((low,) + conf.h) if low else conf.h
        return AbstractConf(frozenset(), h, conf.gamma_prime | top)
    if conf.h:
        last = conf.h[-1]
        return AbstractConf(frozenset((l, t, c + 1) for l, t, c in last), conf.h[:-1], conf.gamma_prime)
    return conf


def delay_classes(conf, M):
    """Configurations reachable by letting time elapse, one per delay class."""
    out = []
    cur = conf
    if not cur.gamma:
        out.append(cur)
    while True:
        nxt = elementary_step(cur, M)
        if nxt == cur:
            break
        out.append(nxt)
        cur = nxt
    return out


class _EdgeTable:
    def __init__(self, tagged):
        M = tagged.max_constant
        self.M = M
        self.table = {}
        regs = regions(M)
        for e in tagged.edges:
            for r in regs:
                if e.guard.includes(r.interval()):
                    self.table.setdefault((e.src, e.action, r), []).append((e.dst, e.reset))

    def get(self, src, a, r):
        return self.table.get((src, a, r), ())


_TABLES = {}


def _table(tagged):
    key = id(tagged)
    t = _TABLES.get(key)
    if t is None or t[0] is not tagged:
        t = (tagged, _EdgeTable(tagged))
        _TABLES[key] = t
    return t[1]


def apply_action(conf, a, tagged):
    tab = _table(tagged)
    M = tab.M
    gamma, gp = set(), set()
    letters = [set() for _ in conf.h]
    for l, t, k in conf.gamma:
        for (l2, t2), reset in tab.get((l, t), a, Region("point", k)):
            gamma.add((l2, t2, 0 if reset else k))
    for i, letter in enumerate(conf.h):
        for l, t, c in letter:
            for (l2, t2), reset in tab.get((l, t), a, Region("open", c)):
                if reset:
                    gamma.add((l2, t2, 0))
                else:
                    letters[i].add((l2, t2, c))
    bot = Region("bot", M)
    for l, t in conf.gamma_prime:
        for (l2, t2), reset in tab.get((l, t), a, bot):
            if reset:
                gamma.add((l2, t2, 0))
            else:
                gp.add((l2, t2))
    return AbstractConf(frozenset(gamma), tuple(frozenset(x) for x in letters if x), frozenset(gp))


def abstract_successors(conf, tagged):
    """Set of (successor, (delay class index, action)) pairs, successor-deduplicated."""
    M = tagged.max_constant
    out = {}
    offset = 0 if not conf.gamma else 1
    for k, d in enumerate(delay_classes(conf, M)):
        for a in tagged.alphabet:
            s = apply_action(d, a, tagged)
            if s not in out:
                out[s] = (k + offset, a)
    return out


def _embeds_word(h1, h2):
    j = 0
    for letter in h1:
        while j < len(h2) and not letter <= h2[j]:
            j += 1
        if j == len(h2):
            return False
        j += 1
    return True


def conf_embeds(c1, c2):
    return c1.gamma <= c2.gamma and c1.gamma_prime <= c2.gamma_prime and _embeds_word(c1.h, c2.h)


@dataclass
class ZenoExploration:
    universal: bool
    explored: int
    counterexample: list = field(default_factory=list)  # (delay class, action) steps
    bad_set: frozenset = frozenset()
    unreadable: bool = False


def explore(automaton, subsumption=True, trace=None, limit=200000):
    tagged = tag_double(automaton)
    bf = build_tail_automaton(tagged)
    M = tagged.max_constant
    init = abstract_initial(tagged)
    parent = {init: None}

    def path_to(c):
        steps = []
        while parent[c] is not None:
            c, st = parent[c]
            steps.append(st)
        return steps[::-1]

    def bad(c):
        s = c.set_of(M)
        return not s or not bf.oracle.universal(s)

    def emit(c):
        if trace is not None:
            trace(c)

    emit(init)
    if bad(init):
        s = init.set_of(M)
        return ZenoExploration(False, 1, [], s, not s)
    retained = [init]
    alive = {init}
    work = deque([init])
    explored = 1
    while work:
        c = work.popleft()
        if c not in alive:
            continue
        for s, st in sorted(abstract_successors(c, tagged).items(), key=lambda kv: (kv[1], _conf_key(kv[0]))):
            if s in parent:
                continue
            if subsumption and any(conf_embeds(r, s) for r in retained):
                continue
            parent[s] = (c, st)
            explored += 1
            emit(s)
            if bad(s):
                ss = s.set_of(M)
                return ZenoExploration(False, explored, path_to(s), ss, not ss)
            if subsumption:
                dropped = [r for r in retained if conf_embeds(s, r)]
                for r in dropped:
                    alive.discard(r)
                retained = [r for r in retained if r not in dropped]
            retained.append(s)
            alive.add(s)
            work.append(s)
            if explored > limit:
                raise RuntimeError("exploration limit exceeded")
    return ZenoExploration(True, explored)


def _conf_key(c):
    return json.dumps(c.as_json(), sort_keys=True)


def zeno_universality(automaton, trace=None, subsumption=True):
    """Is every Zeno timed word accepted with positive frequency?"""
    from .decide import Decision

    if len(automaton.clocks) != 1:
        raise MultiClock("Zeno universality needs exactly one clock")
    res = explore(automaton, subsumption, trace)
    query = ThresholdQuery(Fraction(0), True, "zeno")
    if res.universal:
        return Decision("universality-zeno", query, True, None, [])
    steps = ", ".join(f"delay class {k} then {a}" for k, a in res.counterexample) or "the empty prefix"
    caveats = ["some finite timed word cannot be read"] if res.unreadable else []
    witness = f"after {steps} the reachable set cannot accept every Zeno tail"
    return Decision("universality-zeno", query, False, witness, caveats)

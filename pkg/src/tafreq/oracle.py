"""Brute-force oracles, written without reusing the analytic modules."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor

from .cornerpoint import CpPath, build_cornerpoint
from .errors import TooLarge
from .model import make_run, moves_from, prefix_frequency


# simple cycles

def _kosaraju(nodes, succ):
    seen, order = set(), []
    for r in nodes:
        if r in seen:
            continue
        seen.add(r)
        stack = [(r, iter(succ(r)))]
        while stack:
            v, it = stack[-1]
            nxt = next((w for w in it if w not in seen), None)
            if nxt is None:
                stack.pop()
                order.append(v)
            else:
                seen.add(nxt)
                stack.append((nxt, iter(succ(nxt))))
    pred = {v: [] for v in nodes}
    for v in nodes:
        for w in succ(v):
            pred[w].append(v)
    comp = {}
    for r in reversed(order):
        if r in comp:
            continue
        comp[r] = r
        todo = [r]
        while todo:
            v = todo.pop()
            for w in pred[v]:
                if w not in comp:
                    comp[w] = r
                    todo.append(w)
    groups = {}
    for v in nodes:
        groups.setdefault(comp[v], []).append(v)
    return list(groups.values())


def simple_cycles(nodes, succ):
    """Johnson's algorithm: yields vertex lists of elementary cycles."""
    order = list(nodes)
    pos = {v: i for i, v in enumerate(order)}
    for i, s in enumerate(order):
        sub = [v for v in order if pos[v] >= i]
        subset = set(sub)
        comps = _kosaraju(sub, lambda v: [w for w in succ(v) if w in subset])
        comp = next(c for c in comps if s in c)
        cset = set(comp)
        if len(comp) == 1 and s not in succ(s):
            continue
        blocked = {s}
        bmap = {v: set() for v in comp}
        path = [s]
        stack = [(s, iter([w for w in succ(s) if w in cset]))]
        closed = [False]

        def unblock(u):
            todo = [u]
            while todo:
                x = todo.pop()
                if x in blocked:
                    blocked.discard(x)
                    todo.extend(bmap[x])
                    bmap[x].clear()

        while stack:
            v, it = stack[-1]
            w = next(it, None)
            if w is not None:
                if w == s:
                    yield list(path)
                    closed[-1] = True
                elif w not in blocked:
                    path.append(w)
                    blocked.add(w)
                    closed.append(False)
                    stack.append((w, iter([x for x in succ(w) if x in cset])))
                continue
            stack.pop()
            path.pop()
            c = closed.pop()
            if c:
                unblock(v)
            else:
                for x in succ(v):
                    if x in cset:
                        bmap[x].add(v)
            if closed:
                closed[-1] = closed[-1] or c


def enumerate_simple_cycle_ratios(graph, states, max_states=40, max_cycles=2_000_000):
    """Exact ratios of all reward-positive simple cycles among `states`."""
    states = list(getattr(states, "states", states))
    if len(states) > max_states:
        raise TooLarge(f"{len(states)} states exceed the enumeration guard of {max_states}")
    ss = set(states)
    weights = {}
    for s in states:
        for e in graph.out[s]:
            if e.dst in ss:
                weights.setdefault((s, e.dst), set()).add((e.cost, e.reward))
    succ_map = {s: sorted({d for (a, d) in weights if a == s}, key=graph.index.get) for s in states}
    out = set()
    count = 0
    for cyc in simple_cycles(sorted(states, key=graph.index.get), lambda v: succ_map[v]):
        count += 1
        if count > max_cycles:
            raise TooLarge("too many simple cycles")
        pairs = [weights[(cyc[i], cyc[(i + 1) % len(cyc)])] for i in range(len(cyc))]
        for combo in itertools.product(*pairs):
            c = sum(x for x, _ in combo)
            r = sum(y for _, y in combo)
            if r > 0:
                out.add(Fraction(c, r))
    return sorted(out)


# projections of a run

def enumerate_projections(run, limit=100000):
    """Every corner-point path satisfying the projection conditions for `run`."""
    g = build_cornerpoint(run.automaton)
    M = g.max_constant
    loc, v0 = run.start
    start = next(s for s in g.initial if s.location == loc)
    results = []

    def idle(s):
        return next(e for e in g.out[s] if e.action is None)

    def go(s, mu, v, i, acc):
        if len(results) >= limit:
            raise TooLarge("too many projections")
        if i == len(run.steps):
            results.append(CpPath(g, start, tuple(acc)))
            return
        st = run.steps[i]
        t = v + st.delay
        cur, cur_mu, pre = s, mu, []
        while True:
            reg = cur.pr.region
            fire_ok = False
            if reg.kind == "bot":
                fire_ok = t > M and cur_mu in (floor(t), ceil(t))
            else:
                fire_ok = reg.interval().contains(t)
            if fire_ok and not cur.needs_delay:
                for e in g.out[cur]:
                    if e.edge == st.edge:
                        nmu = 0 if run.automaton.edges[st.edge].is_reset else cur_mu
                        go(e.dst, nmu, st.valuation, i + 1, acc + pre + [e])
            if reg.kind == "bot" and cur_mu >= ceil(t):
                return
            if reg.kind != "bot" and reg.interval().lo > t:
                return
            e = idle(cur)
            pre = pre + [e]
            cur_mu = cur_mu + e.reward
            if e.dst.pr.kind == "bot" and cur.pr.kind != "bot":
                cur_mu = M
            cur = e.dst

    go(start, 0, v0, 0, [])
    return results


# sampling

@dataclass(frozen=True)
class SamplingConfig:
    granularity: int = 6
    depth: int = 60
    seed: int = 0
    samples: int = 200

    def __post_init__(self):
        if self.granularity < 1 or self.depth < 1 or self.samples < 1:
            raise ValueError("granularity, depth and samples must be positive")


def random_run(automaton, rng, granularity, depth, max_delay=None):
    """A seeded random run; delays are multiples of 1/granularity."""
    M = automaton.max_constant
    top = max_delay if max_delay is not None else granularity * (M + 1)
    loc = rng.choice(sorted(automaton.initial))
    state = (loc, Fraction(0))
    moves = []
    for _ in range(depth):
        options = []
        for k in range(1, top + 1):
            d = Fraction(k, granularity)
            for a in automaton.alphabet:
                for idx, nxt in moves_from(automaton, state, d, a):
                    options.append((d, a, idx, nxt))
        if not options:
            break
        d, a, idx, nxt = rng.choice(options)
        moves.append((d, a, idx))
        state = nxt
    return make_run(automaton, moves, (loc, Fraction(0)))


def sample_run_frequencies(automaton, cfg):
    automaton.clock
    rng = random.Random(cfg.seed)
    freqs = []
    for _ in range(cfg.samples):
        r = random_run(automaton, rng, cfg.granularity, cfg.depth)
        if r.steps:
            freqs.append(prefix_frequency(r))
    hist = [0] * 10
    for f in freqs:
        hist[min(9, int(f * 10))] += 1
    return {
        "samples": len(freqs),
        "min": min(freqs) if freqs else None,
        "max": max(freqs) if freqs else None,
        "histogram": hist,
    }


def best_prefix_frequency(automaton, granularity, depth, maximize=True, iterations=30):
    """Extreme frequency over depth-step runs with delays k/granularity.

    freq >= lam is reachable iff max(A - lam*T) >= 0 over such runs, which is a
    longest-path problem over (location, capped clock) states; lam is bisected.
    Returns (lo, hi) bracketing the extreme value.
    """
    M = automaton.max_constant
    acc = set(automaton.accepting)
    top = granularity * (M + 1)
    cap = Fraction(M + 1)
    sign = 1 if maximize else -1
    delays = [Fraction(k, granularity) for k in range(1, top + 1)]

    def best_gain(lam):
        layer = {(l, Fraction(0)): Fraction(0) for l in automaton.initial}
        for _ in range(depth):
            nxt = {}
            for (l, v), gain in layer.items():
                for d in delays:
                    inc = sign * ((d if l in acc else 0) - lam * d)
                    for a in automaton.alphabet:
                        for _, (l2, v2) in moves_from(automaton, (l, v), d, a):
                            key = (l2, min(v2, cap))
                            if key not in nxt or gain + inc > nxt[key]:
                                nxt[key] = gain + inc
            if not nxt:
                return None
            layer = nxt
        return max(layer.values())

    lo, hi = Fraction(0), Fraction(1)
    for _ in range(iterations):
        mid = (lo + hi) / 2
        g = best_gain(mid)
        if g is None:
            return None
        reachable = g >= 0
        if maximize:
            lo, hi = (mid, hi) if reachable else (lo, mid)
        else:
            lo, hi = (lo, mid) if reachable else (mid, hi)
    return lo, hi


# lasso words

def _stabilized(configs, remaining, M):
    for _, _, v in configs:
        if v > M:
            continue
        nxt = floor(v) + 1
        if v + remaining > nxt:
            return False
    return True


def _zeno_positive(automaton, stem, cycle, max_reps=80):
    """Does the Zeno lasso word admit an infinite run visiting F?"""
    F = set(automaton.accepting)
    M = automaton.max_constant
    clock = automaton.clock
    configs = {(l, l in F, Fraction(0)) for l in automaton.initial}

    def advance(cfgs, d, a):
        out = set()
        for l, seen, v in cfgs:
            for idx, (l2, v2) in moves_from(automaton, (l, v), d, a):
                out.add((l2, seen or l2 in F, v2))
        return out

    for d, a in stem:
        configs = advance(configs, d, a)
        if not configs:
            return False
    total = sum(d for d, _ in cycle)
    j = 0
    while not _stabilized(configs, total / 2 ** (j - 1) if j else 2 * total, M):
        if j > max_reps:
            raise RuntimeError("lasso word did not stabilise")
        for d, a in cycle:
            configs = advance(configs, d / 2 ** j, a)
            if not configs:
                return False
        j += 1
    # finite tail: (loc, seen, region index, position)
    n = len(cycle)

    def cls(v):
        if v > M:
            return M
        return int(floor(v))

    def succ(node):
        l, seen, c, p = node
        a = cycle[p][1]
        lo = Fraction(c)
        probe = lo + Fraction(1, 2) if c < M else Fraction(M + 1)
        out = []
        for e in automaton.edges:
            if e.source != l or e.action != a:
                continue
            iv = e.guard.interval(clock)
            inside = iv.contains(probe) and iv.contains(lo + Fraction(1, 10 ** 9)) and (
                c == M or iv.contains(lo + 1 - Fraction(1, 10 ** 9)))
            if c == M:
                inside = iv.hi is None and iv.contains(probe) and iv.contains(Fraction(M) + Fraction(1, 10 ** 9))
            if inside:
                out.append((e.target, seen or e.target in F, 0 if clock in e.resets else c, (p + 1) % n))
        return out

    starts = {(l, seen, cls(v), 0) for l, seen, v in configs}
    seen_nodes = set(starts)
    todo = list(starts)
    adj = {}
    while todo:
        x = todo.pop()
        adj[x] = succ(x)
        for y in adj[x]:
            if y not in seen_nodes:
                seen_nodes.add(y)
                todo.append(y)
    # nodes with an infinite continuation
    alive = set(seen_nodes)
    changed = True
    while changed:
        changed = False
        for x in list(alive):
            if not any(y in alive for y in adj[x]):
                alive.discard(x)
                changed = True
    return any(x[1] for x in alive)


def deterministic_lasso_frequency(automaton, stem, cycle, max_reps=10000):
    """Exact limit frequency of the unique run on a non-Zeno lasso word (None if unreadable)."""
    F = set(automaton.accepting)
    M = automaton.max_constant
    loc = automaton.initial[0]
    v = Fraction(0)
    for d, a in stem:
        nxt = moves_from(automaton, (loc, v), d, a)
        if not nxt:
            return None
        loc, v = nxt[0][1]
    seen = {}
    per_rep = []
    for rep in range(max_reps):
        key = (loc, v if v <= M else None)
        if key in seen:
            start = seen[key]
            acc = sum(x for x, _ in per_rep[start:])
            tot = sum(y for _, y in per_rep[start:])
            return acc / tot
        seen[key] = rep
        acc = tot = Fraction(0)
        for d, a in cycle:
            nxt = moves_from(automaton, (loc, v), d, a)
            if not nxt:
                return None
            tot += d
            if loc in F:
                acc += d
            loc, v = nxt[0][1]
        per_rep.append((acc, tot))
    raise RuntimeError("lasso run did not become periodic")


def lasso_words(alphabet, bound):
    """(stem, cycle) pairs of (delay, action) with delays k/bound and total length <= bound."""
    letters = [(Fraction(k, bound), a) for a in alphabet for k in range(1, bound + 1)]
    for n in range(1, bound + 1):
        for s in range(0, n):
            for word in itertools.product(letters, repeat=n):
                yield word[:s], word[s:]


def lasso_word_check(automaton, predicate, bound):
    """Every lasso word in the bounded family admits a run meeting the predicate."""
    return lasso_counterexample(automaton, predicate, bound) is None


def lasso_counterexample(automaton, predicate, bound):
    from .model import is_deterministic

    cls = predicate.word_class
    zeno_ok = predicate.threshold == 0 and predicate.strict
    det = is_deterministic(automaton)
    if cls in ("zeno", "all") and not zeno_ok:
        raise ValueError("Zeno lasso checks support only the positive-frequency predicate")
    if cls in ("nonzeno", "all") and not det:
        raise ValueError("non-Zeno lasso checks need a deterministic automaton")
    for stem, cycle in lasso_words(automaton.alphabet, bound):
        if cls in ("zeno", "all"):
            if not _zeno_positive(automaton, stem, cycle):
                return ("zeno", stem, cycle)
        if cls in ("nonzeno", "all"):
            f = deterministic_lasso_frequency(automaton, stem, cycle)
            if f is None or not predicate.holds(f):
                return ("nonzeno", stem, cycle)
    return None


# concrete tagged simulation for the Zeno abstraction

def tagged_initial(automaton):
    F = set(automaton.accepting)
    return {(l, "b" if l in F else "w", Fraction(0)) for l in automaton.initial}


def tagged_post(automaton, states, delay, action):
    """Concrete successors in the two-copy automaton; entering F may switch to b."""
    F = set(automaton.accepting)
    nxt = set()
    for l, tag, v in states:
        for _, (l2, v2) in moves_from(automaton, (l, v), delay, action):
            nxt.add((l2, tag, v2))
            if l2 in F:
                nxt.add((l2, "b", v2))
    return nxt


def simulate_tagged(automaton, word):
    """Reachable (location, tag, value) set after reading (delay, action) pairs."""
    cur = tagged_initial(automaton)
    for d, a in word:
        cur = tagged_post(automaton, cur, d, a)
    return cur


def delay_for_class(values, k, M):
    """A concrete delay realising the k-th elementary time step class."""
    values = [Fraction(v) for v in values]
    has_int = any(v <= M and v.denominator == 1 for v in values)
    events = sorted({j - v for v in values if v <= M for j in range(int(floor(v)) + 1, M + 1)})
    j = k - (1 if has_int else 0)
    if j < 0:
        raise ValueError("class index out of range")
    pts = [Fraction(0)] + events
    if j % 2 == 1:
        idx = (j + 1) // 2
        if idx > len(events):
            raise ValueError("class index out of range")
        return events[idx - 1]
    idx = j // 2
    if idx > len(events):
        raise ValueError("class index out of range")
    lo = pts[idx]
    hi = events[idx] if idx < len(events) else lo + 1
    return (lo + hi) / 2

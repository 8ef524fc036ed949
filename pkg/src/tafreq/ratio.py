"""Exact cycle-ratio optimisation on corner-point graphs and frequency bounds."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil
from typing import Optional

from .cornerpoint import LEFT, RIGHT, CpPath, build_cornerpoint, path_ratio
from .errors import TargetOutOfRange
from .model import TimedAutomaton


def tarjan(nodes, succ):
    """Iterative Tarjan; returns SCCs as lists."""
    index, low, on, stack, out = {}, {}, set(), [], []
    counter = 0
    for root in nodes:
        if root in index:
            continue
        work = [(root, iter(succ(root)))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on.add(w)
                    work.append((w, iter(succ(w))))
                    advanced = True
                    break
                if w in on:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                low[work[-1][0]] = min(low[work[-1][0]], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                out.append(comp)
    return out


@dataclass
class SccSummary:
    id: int
    states: tuple
    min_ratio: Optional[Fraction] = None
    max_ratio: Optional[Fraction] = None
    min_cycle: Optional[CpPath] = None
    max_cycle: Optional[CpPath] = None


@dataclass
class FrequencySet:
    intervals: list = field(default_factory=list)

    @classmethod
    def of(cls, pairs):
        ivs = sorted((Fraction(a), Fraction(b)) for a, b in pairs)
        merged = []
        for lo, hi in ivs:
            if merged and lo <= merged[-1][1]:
                merged[-1] = (merged[-1][0], max(merged[-1][1], hi))
            else:
                merged.append((lo, hi))
        return cls(merged)

    def contains(self, x):
        return any(lo <= x <= hi for lo, hi in self.intervals)

    @property
    def empty(self):
        return not self.intervals


@dataclass
class FrequencyBounds:
    word_class: str
    empty: bool = False
    inf: Optional[Fraction] = None
    inf_attained: bool = False
    sup: Optional[Fraction] = None
    sup_attained: bool = False
    witness: str = ""

    def as_dict(self):
        return {
            "empty": self.empty,
            "inf": self.inf,
            "inf_attained": self.inf_attained,
            "sup": self.sup,
            "sup_attained": self.sup_attained,
        }


def _sub_sccs(graph, members, edge_ok=None):
    members = set(members)

    def succ(s):
        return [e.dst for e in graph.out[s] if e.dst in members and (edge_ok is None or edge_ok(e))]

    order = [s for s in graph.states if s in members]
    return tarjan(order, succ)


def reachable_sccs(graph):
    """SCCs with an internal discrete edge, in state order."""
    comps = []
    for comp in _sub_sccs(graph, graph.states):
        cs = set(comp)
        # runs take infinitely many discrete steps, so idle-only loops do not count
        if any(e.dst in cs and not e.is_idle for s in comp for e in graph.out[s]):
            comps.append(sorted(comp, key=graph.state_key))
    comps.sort(key=lambda c: graph.state_key(c[0]))
    return [SccSummary(i, tuple(c)) for i, c in enumerate(comps)]


# parametric search

def _internal_edges(graph, states):
    ss = set(states)
    return [e for s in states for e in graph.out[s] if e.dst in ss]


def _bellman_ford(nodes, edges, wf):
    dist = {v: 0 for v in nodes}
    for _ in range(len(nodes)):
        changed = False
        for e in edges:
            d = dist[e.src] + wf(e)
            if d < dist[e.dst]:
                dist[e.dst] = d
                changed = True
        if not changed:
            return dist
    return None  # negative cycle


def _tight_cycle(nodes, edges, wf, dist, rw):
    """A zero-weight cycle through an rw-positive tight edge, or None."""
    tight = [e for e in edges if dist[e.src] + wf(e) == dist[e.dst]]
    adj = {v: [] for v in nodes}
    for e in tight:
        adj[e.src].append(e)
    comp_of = {}
    for i, comp in enumerate(tarjan(list(nodes), lambda v: [e.dst for e in adj[v]])):
        for v in comp:
            comp_of[v] = i
    for e in tight:
        if rw(e) > 0 and comp_of[e.src] == comp_of[e.dst]:
            # path e.dst -> e.src inside the tight component
            goal, cid = e.src, comp_of[e.src]
            prev = {e.dst: None}
            q = deque([e.dst])
            while q and goal not in prev:
                v = q.popleft()
                for f in adj[v]:
                    if comp_of[f.dst] == cid and f.dst not in prev:
                        prev[f.dst] = f
                        q.append(f.dst)
            back = []
            v = goal
            while prev[v] is not None:
                back.append(prev[v])
                v = prev[v].src
            return [e] + back[::-1]
    return None


def _min_cycle_ratio(nodes, edges, cf, rf):
    """Exact min of sum(cf)/sum(rf) over rf-positive cycles, with a witness edge list."""
    if not any(rf(e) > 0 for e in edges):
        return None
    n = max(1, len(nodes))

    def probe(lam):
        p, q = lam.numerator, lam.denominator
        wf = lambda e: q * cf(e) - p * rf(e)
        dist = _bellman_ford(nodes, edges, wf)
        if dist is None:
            return True, None
        cyc = _tight_cycle(nodes, edges, wf, dist, rf)
        return cyc is not None, cyc

    def run_length(ok_at, limit):
        """Largest k in [1, limit] with ok_at(k), given ok_at(1) and monotonicity."""
        k = 1
        while 2 * k <= limit and ok_at(2 * k):
            k *= 2
        lo_k, hi_k = k, min(2 * k, limit + 1)
        while hi_k - lo_k > 1:
            mid = (lo_k + hi_k) // 2
            if ok_at(mid):
                lo_k = mid
            else:
                hi_k = mid
        return lo_k

    ok, cyc = probe(Fraction(0))
    if ok:
        best = Fraction(0)
    else:
        # Stern-Brocot descent: probe(a/b) fails, probe(c/d) holds
        a, b, c, d = 0, 1, 1, 1
        while b + d <= n:
            if probe(Fraction(a + c, b + d))[0]:
                lim = (n - d) // b
                k = run_length(lambda k: probe(Fraction(k * a + c, k * b + d))[0], lim)
                c, d = k * a + c, k * b + d
            else:
                lim = (n - b) // d
                k = run_length(lambda k: not probe(Fraction(a + k * c, b + k * d))[0], lim)
                a, b = a + k * c, b + k * d
        best = Fraction(c, d)
        ok, cyc = probe(best)
        if not ok or cyc is None:
            raise AssertionError("ratio search lost its witness")
    c = sum(cf(e) for e in cyc)
    r = sum(rf(e) for e in cyc)
    if Fraction(c, r) != best:
        raise AssertionError("witness ratio mismatch")
    return best, cyc


def _as_cycle(graph, edges):
    return CpPath(graph, edges[0].src, tuple(edges))


def _cycle_minmax(graph, states):
    nodes = list(states)
    edges = _internal_edges(graph, nodes)
    lo = _min_cycle_ratio(nodes, edges, lambda e: e.cost, lambda e: e.reward)
    if lo is None:
        return None
    hi = _min_cycle_ratio(nodes, edges, lambda e: e.reward - e.cost, lambda e: e.reward)
    return (lo[0], _as_cycle(graph, lo[1])), (1 - hi[0], _as_cycle(graph, hi[1]))


def extremal_cycle_ratios(graph, scc):
    """((m, cycle), (M, cycle)) over reward-positive cycles of the SCC, or None."""
    res = _cycle_minmax(graph, scc.states)
    if res is not None:
        (scc.min_ratio, scc.min_cycle), (scc.max_ratio, scc.max_cycle) = res
    return res


def analysed_sccs(graph):
    out = []
    for scc in reachable_sccs(graph):
        extremal_cycle_ratios(graph, scc)
        out.append(scc)
    return out


def nonzeno_frequency_set(graph):
    return FrequencySet.of(
        (s.min_ratio, s.max_ratio) for s in analysed_sccs(graph) if s.min_ratio is not None
    )


# witnesses

@dataclass
class RatioWitness:
    stem: CpPath
    parts: list  # (closed or connecting CpPath, repetitions)
    ratio: Fraction
    exact: bool
    case: int

    def cycle(self):
        g = self.stem.graph
        start = self.parts[0][0].start
        out = CpPath(g, start, ())
        for p, k in self.parts:
            out = out + (p.repeat(k) if p.start == p.end else p)
        return out

    def describe(self):
        bits = []
        for p, k in self.parts:
            bits.append(f"{k}x[{p.start.label()} {len(p.edges)} edges {p.cost}/{p.reward}]")
        return f"stem {len(self.stem.edges)} edges; cycle " + " + ".join(bits) + f"; ratio {self.ratio}"


def _rotate(cycle, state):
    st = cycle.states()[:-1]
    i = st.index(state)
    return CpPath(cycle.graph, state, cycle.edges[i:] + cycle.edges[:i])


def _bfs_path(graph, src, dst, allowed=None):
    if src == dst:
        return CpPath(graph, src, ())
    prev = {src: None}
    q = deque([src])
    while q:
        v = q.popleft()
        for e in graph.out[v]:
            if (allowed is None or e.dst in allowed) and e.dst not in prev:
                prev[e.dst] = e
                if e.dst == dst:
                    back = []
                    w = dst
                    while prev[w] is not None:
                        back.append(prev[w])
                        w = prev[w].src
                    return CpPath(graph, src, tuple(back[::-1]))
                q.append(e.dst)
    return None


def _ratio_walk_through(graph, states, lam, through, cf, rf):
    """A closed walk through some state of `through` with ratio exactly lam."""
    nodes = list(states)
    edges = _internal_edges(graph, nodes)
    p, q = lam.numerator, lam.denominator
    wf = lambda e: q * cf(e) - p * rf(e)
    dist = _bellman_ford(nodes, edges, wf)
    if dist is None:
        return None
    tight = {e for e in edges if dist[e.src] + wf(e) == dist[e.dst]}
    allowed_edges = {}
    for e in tight:
        allowed_edges.setdefault(e.src, []).append(e)
    comp_of = {}
    for i, comp in enumerate(tarjan(nodes, lambda v: [e.dst for e in allowed_edges.get(v, [])])):
        for v in comp:
            comp_of[v] = i
    for s in through:
        for e in tight:
            if rf(e) > 0 and comp_of[e.src] == comp_of[e.dst] == comp_of.get(s):
                members = {v for v in nodes if comp_of[v] == comp_of[s]}
                sub = _TightView(graph, allowed_edges)
                a = _bfs_path(sub, s, e.src, members)
                b = _bfs_path(sub, e.dst, s, members)
                return CpPath(graph, s, a.edges + (e,) + b.edges)
    return None


class _TightView:
    def __init__(self, graph, adj):
        self.out = {s: adj.get(s, []) for s in graph.states}


def compose_ratio_witness(graph, scc, target, tolerance=None):
    """A finite lasso schedule over the SCC whose cycle ratio hits `target`."""
    target = Fraction(target)
    if scc.min_ratio is None:
        extremal_cycle_ratios(graph, scc)
    if scc.min_ratio is None:
        raise TargetOutOfRange("SCC has no reward-positive cycle")
    m, M = scc.min_ratio, scc.max_ratio
    if not m <= target <= M:
        raise TargetOutOfRange(f"target {target} outside [{m}, {M}]")
    cmin, cmax = scc.min_cycle, scc.max_cycle

    def stem_to(s):
        for i in graph.initial:
            p = _bfs_path(graph, i, s)
            if p is not None:
                return p
        raise AssertionError("SCC state unreachable")

    if target == m or target == M or m == M:
        c = cmin if target == m else cmax
        return RatioWitness(stem_to(c.start), [(c, 1)], target, True, 1)

    alpha = (target - m) / (M - m)
    p0, q0 = alpha.numerator, alpha.denominator
    shared = [s for s in cmax.states() if s in set(cmin.states())]
    if not shared:
        w = _ratio_walk_through(graph, scc.states, m, cmax.states(), lambda e: e.cost, lambda e: e.reward)
        if w is not None:
            cmin, shared = w, [w.start]
        else:
            w = _ratio_walk_through(graph, scc.states, 1 - M, cmin.states(),
                                    lambda e: e.reward - e.cost, lambda e: e.reward)
            if w is not None:
                cmax, shared = w, [w.start]
    if shared:
        s = shared[0]
        a, b = _rotate(cmin, s), _rotate(cmax, s)
        x, y = (q0 - p0) * b.reward, p0 * a.reward
        wit = RatioWitness(stem_to(s), [(a, x), (b, y)], target, True, 1)
        got = path_ratio(wit.cycle())
        if got != target:
            raise AssertionError("case 1 schedule is not exact")
        return wit
    if tolerance is None:
        raise ValueError("cycles share no state: a tolerance is required")
    tol = Fraction(tolerance)
    members = set(scc.states)
    to_max = _bfs_path(graph, cmin.start, cmax.start, members)
    to_min = _bfs_path(graph, cmax.start, cmin.start, members)
    x, y = (q0 - p0) * cmax.reward, p0 * cmin.reward
    X = x * cmin.cost + y * cmax.cost
    Y = x * cmin.reward + y * cmax.reward
    pt = to_max.cost + to_min.cost
    qt = to_max.reward + to_min.reward
    gap = abs(pt - target * qt)
    b = 1
    if gap:
        b = max(1, ceil((gap / tol - qt) / Y))
    ratio = Fraction(b * X + pt, b * Y + qt)
    wit = RatioWitness(stem_to(cmin.start), [(cmin, b * x), (to_max, 1), (cmax, b * y), (to_min, 1)],
                       ratio, ratio == target, 2)
    return wit


# Zeno analysis

def _zero_reward_infinite(graph, states=None):
    """States with an infinite path of reward-0 edges."""
    pool = set(graph.states if states is None else states)
    zero = lambda e: e.reward == 0 and e.dst in pool
    good = set()
    for comp in _sub_sccs(graph, pool, lambda e: e.reward == 0):
        cs = set(comp)
        if len(comp) > 1 or any(zero(e) and e.dst in cs for e in graph.out[comp[0]]):
            good |= cs
    # backwards closure over zero-reward edges
    q = deque(good)
    while q:
        v = q.popleft()
        for e in graph.inc[v]:
            if e.reward == 0 and e.src in pool and e.src not in good:
                good.add(e.src)
                q.append(e.src)
    return good


def _forward(graph, starts, ok=lambda e: True):
    seen = set(starts)
    q = deque(starts)
    while q:
        v = q.popleft()
        for e in graph.out[v]:
            if ok(e) and e.dst not in seen:
                seen.add(e.dst)
                q.append(e.dst)
    return seen


def _backward(graph, targets, pool):
    seen = set(t for t in targets if t in pool)
    q = deque(seen)
    while q:
        v = q.popleft()
        for e in graph.inc[v]:
            if e.src in pool and e.src not in seen:
                seen.add(e.src)
                q.append(e.src)
    return seen


def _restrict(automaton, keep):
    keep = set(keep)
    locs = tuple(l for l in automaton.locations if l in keep)
    return TimedAutomaton(
        automaton.name + "_restricted", locs,
        tuple(l for l in automaton.initial if l in keep),
        tuple(l for l in automaton.accepting if l in keep),
        automaton.alphabet, automaton.clocks,
        tuple(e for e in automaton.edges if e.source in keep and e.target in keep),
    )


def has_zeno_run(automaton):
    if not automaton.initial:
        return False
    g = build_cornerpoint(automaton)
    return bool(_zero_reward_infinite(g))


def _r_min(graph, relevant, sz):
    """Min C/R over simple paths from an initial state into sz with R > 0."""
    best = None
    labels = {s: [] for s in relevant}

    def dominated(s, c, r):
        for c2, r2 in labels[s]:
            if c2 <= c and r2 >= r:
                return True
        return False

    for init in graph.initial:
        if init not in relevant:
            continue
        stack = [(init, 0, 0, iter(graph.out[init]))]
        on_path = {init}
        labels[init].append((0, 0))
        while stack:
            v, c, r, it = stack[-1]
            pushed = False
            for e in it:
                w = e.dst
                if w not in relevant or w in on_path:
                    continue
                c2, r2 = c + e.cost, r + e.reward
                if dominated(w, c2, r2):
                    continue
                labels[w] = [(a, b) for a, b in labels[w] if not (c2 <= a and r2 >= b)]
                labels[w].append((c2, r2))
                if w in sz and r2 > 0:
                    cand = Fraction(c2, r2)
                    if best is None or cand < best:
                        best = cand
                stack.append((w, c2, r2, iter(graph.out[w])))
                on_path.add(w)
                pushed = True
                break
            if not pushed:
                stack.pop()
                on_path.discard(v)
    return best


NEG, ZERO, POS = -1, 0, 1


def _exact_tracker(graph, relevant, lam):
    """Is there a Zeno run whose frequency equals lam (0 < lam < 1) exactly?

    Searches contraction-shaped paths while tracking the sign of
    (clock value - corner value); exactness forces that residue to vanish
    at every reset and every switch between accepting and non-accepting
    locations, and the run must end in a non-accepting tail that absorbs
    the remaining negative residue.
    """
    F = graph.accepting_locations
    M = graph.max_constant
    p, q = lam.numerator, lam.denominator
    wf = lambda e: q * e.cost - p * e.reward

    def chain(s):
        out = [s]
        while out[-1].pr.kind != "bot":
            out.append(graph.idle_edge(out[-1]).dst)
        return out

    def macro(s, sign):
        """(fire state, weight, new sign) triples."""
        is_f = s.location in F
        ch = chain(s)
        w_prefix = [0]
        for x in ch[:-1]:
            w_prefix.append(w_prefix[-1] + wf(graph.idle_edge(x)))
        res = []
        pr = s.pr
        start = 1
        if pr.kind == "open" and pr.corner == LEFT:
            if is_f:
                res.append((0, POS))
            else:
                res.append((1, NEG))
            start = 2
        elif pr.kind == "open":
            res.append((0, NEG))
            start = 1
        elif pr.kind == "bot":
            loop = wf(graph.idle_edge(s))
            out = []
            if is_f:
                if sign == NEG:
                    out += [(s, 0, x) for x in (NEG, ZERO, POS)]
                else:
                    out.append((s, 0, POS))
                out += [(s, loop, x) for x in (ZERO, POS)]
            else:
                if sign == NEG:
                    out += [(s, 0, x) for x in (NEG, ZERO)]
                out += [(s, loop, x) for x in (NEG, ZERO)]
            return out
        for k in range(start, len(ch)):
            x = ch[k]
            if x.pr.kind == "point":
                res.append((k, ZERO))
            elif x.pr.kind == "open":
                if x.pr.corner == LEFT and is_f:
                    res.append((k, POS))
                if x.pr.corner == RIGHT and not is_f:
                    res.append((k, NEG))
        out = [(ch[k], w_prefix[k], sg) for k, sg in res]
        b = ch[-1]
        if b.pr.kind == "bot":
            kb = len(ch) - 1
            loop = wf(graph.idle_edge(b))
            if is_f:
                out.append((b, w_prefix[kb], POS))
                out += [(b, w_prefix[kb] + loop, x) for x in (ZERO, POS)]
            else:
                out += [(b, w_prefix[kb] + loop, x) for x in (NEG, ZERO)]
        return out

    # tail states: non-accepting, at a right corner or in bot, with an
    # infinite reset-free non-accepting discrete path staying put
    cand = {s for s in relevant if s.location not in F and (s.pr.corner == RIGHT or s.pr.kind == "bot")}
    auto = graph.automaton
    changed = True
    while changed:
        changed = False
        for s in list(cand):
            if not any(e.dst in cand and not e.is_idle and not auto.edges[e.edge].is_reset for e in graph.out[s]):
                cand.discard(s)
                changed = True

    starts = [(s, ZERO) for s in graph.initial if s in relevant]
    nodes = set(starts)
    adj = {}
    q_ = deque(starts)
    while q_:
        node = q_.popleft()
        s, sign = node
        outs = []
        for fs, w, sg in macro(s, sign):
            if fs not in relevant:
                continue
            for e in graph.out[fs]:
                if e.is_idle or e.dst not in relevant:
                    continue
                reset = auto.edges[e.edge].is_reset
                switch = (e.dst.location in F) != (fs.location in F)
                if (reset or switch) and sg != ZERO:
                    continue
                nxt = (e.dst, ZERO if reset else sg)
                outs.append((nxt, w))
                if nxt not in nodes:
                    nodes.add(nxt)
                    q_.append(nxt)
        adj[node] = outs
    tails = {n for n in nodes if n[0] in cand and n[1] == NEG}
    if not tails:
        return False
    # co-reachability to tails in the product
    rev = {}
    for u, outs in adj.items():
        for v, _ in outs:
            rev.setdefault(v, []).append(u)
    useful = set(tails)
    dq = deque(tails)
    while dq:
        v = dq.popleft()
        for u in rev.get(v, []):
            if u not in useful:
                useful.add(u)
                dq.append(u)
    dist = {n: None for n in useful}
    for s in starts:
        if s in useful:
            dist[s] = 0
    for _ in range(len(useful) + 1):
        changed = False
        for u in useful:
            if dist[u] is None:
                continue
            for v, w in adj.get(u, []):
                if v in useful and (dist[v] is None or dist[u] + w < dist[v]):
                    dist[v] = dist[u] + w
                    changed = True
        if not changed:
            break
    else:
        raise AssertionError("negative cycle among relevant product states")
    return any(dist[t] == 0 for t in tails if dist[t] is not None)


def _zeno_inf(automaton, accepting):
    """(inf, attained, note) over Zeno runs with the given accepting set, or None."""
    F = frozenset(accepting)
    g = build_cornerpoint(automaton, F)
    sz = _zero_reward_infinite(g)
    if not sz:
        return None
    relevant = _backward(g, sz, set(g.states))
    cands = []
    rmin = _r_min(g, relevant, sz)
    if rmin is not None:
        cands.append(rmin)
    mres = None
    for comp in _sub_sccs(g, relevant):
        r = _cycle_minmax(g, comp)
        if r is not None and (mres is None or r[0][0] < mres):
            mres = r[0][0]
    if mres is not None:
        cands.append(mres)
    z0 = _forward(g, g.initial, lambda e: e.reward == 0) & sz
    if any(s.location not in F for s in z0):
        cands.append(Fraction(0))
    elif z0:
        cands.append(Fraction(1))
    v = min(cands)
    if v == 0:
        keep = [l for l in automaton.locations if l not in F]
        attained = has_zeno_run(_restrict(automaton, keep))
    elif v == 1:
        attained = True
    else:
        attained = _exact_tracker(g, relevant, v)
    note = f"r_min={rmin} m={mres}"
    return v, attained, note


def zeno_exact_realizability(graph):
    """Extremal Zeno frequencies and whether a Zeno run realizes each exactly."""
    a = graph.automaton
    F = graph.accepting_locations
    lo = _zeno_inf(a, F)
    if lo is None:
        return {"empty": True}
    hi = _zeno_inf(a, [l for l in a.locations if l not in F])
    return {
        "empty": False,
        "inf": lo[0], "inf_realizable": lo[1],
        "sup": 1 - hi[0], "sup_realizable": hi[1],
    }


def zeno_ratio_realizable(graph, target):
    rep = zeno_exact_realizability(graph)
    if rep["empty"]:
        return False
    target = Fraction(target)
    if target == rep["inf"]:
        return rep["inf_realizable"]
    if target == rep["sup"]:
        return rep["sup_realizable"]
    if rep["inf"] < target < rep["sup"]:
        return True
    return False


def frequency_bounds(automaton, word_class="all"):
    automaton.clock  # single clock only
    if word_class == "nonzeno":
        g = build_cornerpoint(automaton)
        sccs = [s for s in analysed_sccs(g) if s.min_ratio is not None]
        if not sccs:
            return FrequencyBounds("nonzeno", empty=True, witness="no reward-diverging cycle")
        lo = min(sccs, key=lambda s: (s.min_ratio, s.id))
        hi = max(sccs, key=lambda s: (s.max_ratio, -s.id))
        return FrequencyBounds("nonzeno", False, lo.min_ratio, True, hi.max_ratio, True,
                               f"inf: scc {lo.id} cycle of ratio {lo.min_ratio}; sup: scc {hi.id} cycle of ratio {hi.max_ratio}")
    if word_class == "zeno":
        g = build_cornerpoint(automaton)
        rep = zeno_exact_realizability(g)
        if rep["empty"]:
            return FrequencyBounds("zeno", empty=True, witness="no Zeno run")
        return FrequencyBounds("zeno", False, rep["inf"], rep["inf_realizable"], rep["sup"], rep["sup_realizable"],
                               "reward-converging lasso")
    if word_class != "all":
        raise ValueError(f"unknown word class {word_class!r}")
    parts = [b for b in (frequency_bounds(automaton, "nonzeno"), frequency_bounds(automaton, "zeno")) if not b.empty]
    if not parts:
        return FrequencyBounds("all", empty=True, witness="no infinite run")
    inf = min(b.inf for b in parts)
    sup = max(b.sup for b in parts)
    return FrequencyBounds(
        "all", False,
        inf, any(b.inf == inf and b.inf_attained for b in parts),
        sup, any(b.sup == sup and b.sup_attained for b in parts),
        "; ".join(f"{b.word_class}: [{b.inf}, {b.sup}]" for b in parts),
    )

"""Seeded generators shared by the test modules."""

import random
from pathlib import Path

from tafreq.frontend import load_model
from tafreq.model import Edge, Guard, TimedAutomaton

FIXTURES = Path(__file__).parent / "fixtures"


def fixture(name, **kw):
    return load_model(FIXTURES / f"{name}.ta", **kw)


def punctual_guard(rng, M):
    k = rng.randint(1, M)
    return rng.choice([Guard((("x", "==", k),)), Guard((("x", "==", k),)), Guard((("x", "<", 1),)),
                       Guard((("x", ">", k - 1), ("x", "<", k)))])


def random_guard(rng, M, punctual=False):
    if punctual:
        return punctual_guard(rng, M)
    kind = rng.randrange(7)
    k = rng.randint(0, M)
    if kind == 0:
        return Guard(())
    if kind == 1:
        return Guard((("x", "<", max(k, 1)),))
    if kind == 2:
        return Guard((("x", "<=", k),))
    if kind == 3:
        return Guard((("x", "==", k),))
    if kind == 4:
        return Guard((("x", ">", min(k, M - 1) if M > 0 else 0),))
    if kind == 5:
        return Guard((("x", ">=", k),))
    lo = rng.randint(0, M - 1) if M > 0 else 0
    return Guard((("x", ">", lo), ("x", "<", lo + 1)))


def random_automaton(rng, n_locs=None, M=None, n_letters=None, n_edges=None, name="gen", punctual=False):
    n_locs = n_locs or rng.randint(2, 4)
    M = M if M is not None else rng.randint(1, 2)
    n_letters = n_letters or rng.randint(1, 2)
    locs = tuple(f"l{i}" for i in range(n_locs))
    alphabet = tuple("ab"[:n_letters])
    reset_p = 0.8 if punctual else 0.5
    edges = []
    # keep every location reachable and give each one an outgoing edge
    for i in range(n_locs):
        edges.append(Edge(locs[i], locs[(i + 1) % n_locs], rng.choice(alphabet), random_guard(rng, M, punctual),
                          frozenset(["x"]) if rng.random() < reset_p else frozenset()))
    for _ in range(n_edges if n_edges is not None else rng.randint(1, 4)):
        edges.append(Edge(rng.choice(locs), rng.choice(locs), rng.choice(alphabet), random_guard(rng, M, punctual),
                          frozenset(["x"]) if rng.random() < reset_p else frozenset()))
    # make sure the max constant is M
    edges.append(Edge(locs[0], locs[0], alphabet[0], Guard((("x", "==", M),)), frozenset(["x"])))
    acc = tuple(l for l in locs if rng.random() < 0.5) or (locs[-1],)
    return TimedAutomaton(name, locs, (locs[0],), acc, alphabet, ("x",), tuple(edges))


def random_automata(seed, count, **kw):
    rng = random.Random(seed)
    return [random_automaton(rng, name=f"gen{i}", **kw) for i in range(count)]


def random_complete_deterministic(rng, n_locs=None, M=None, name="det"):
    """Per (location, letter): three edges splitting x at a cut c (x < c, x == c, x > c)."""
    n_locs = n_locs or rng.randint(2, 3)
    M = M or rng.randint(1, 2)
    locs = tuple(f"l{i}" for i in range(n_locs))
    alphabet = ("a", "b")[:rng.randint(1, 2)]
    edges = []
    for l in locs:
        for a in alphabet:
            c = rng.randint(1, M)
            for op in ("<", "==", ">"):
                edges.append(Edge(l, rng.choice(locs), a, Guard((("x", op, c),)),
                                  frozenset(["x"]) if rng.random() < 0.5 else frozenset()))
    acc = tuple(l for l in locs if rng.random() < 0.5) or (locs[-1],)
    return TimedAutomaton(name, locs, (locs[0],), acc, alphabet, ("x",), tuple(edges))


def random_deterministic(seed, count, **kw):
    rng = random.Random(seed)
    return [random_complete_deterministic(rng, name=f"det{i}", **kw) for i in range(count)]


def random_complete_nondeterministic(rng, name="nd"):
    """A complete deterministic base plus a few extra guarded edges."""
    base = random_complete_deterministic(rng, name=name)
    M = base.max_constant
    extra = [Edge(rng.choice(base.locations), rng.choice(base.locations), rng.choice(base.alphabet),
                  random_guard(rng, M), frozenset(["x"]) if rng.random() < 0.5 else frozenset())
             for _ in range(rng.randint(1, 3))]
    return TimedAutomaton(name, base.locations, base.initial, base.accepting, base.alphabet, base.clocks,
                          base.edges + tuple(extra))


def random_nondeterministic(seed, count):
    rng = random.Random(seed)
    return [random_complete_nondeterministic(rng, name=f"nd{i}") for i in range(count)]

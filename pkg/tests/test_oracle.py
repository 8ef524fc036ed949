import dataclasses
import itertools
import random
from fractions import Fraction as Q
from types import SimpleNamespace

import pytest
from gen import fixture, random_automaton

from tafreq.cornerpoint import build_cornerpoint
from tafreq.errors import MultiClock, TooLarge
from tafreq.frontend import parse_model
from tafreq.model import ThresholdQuery, prefix_frequency
from tafreq.oracle import (
    SamplingConfig,
    enumerate_simple_cycle_ratios,
    lasso_word_check,
    lasso_words,
    random_run,
    sample_run_frequencies,
    simple_cycles,
)


def _canon(cyc):
    i = cyc.index(min(cyc))
    return tuple(cyc[i:] + cyc[:i])


def _brute_cycles(n, succ):
    out = set()
    for k in range(1, n + 1):
        for combo in itertools.permutations(range(n), k):
            if combo[0] != min(combo):
                continue
            if all(combo[(i + 1) % k] in succ[combo[i]] for i in range(k)):
                out.add(combo)
    return out


@pytest.mark.parametrize("seed", range(30))
def test_johnson_matches_brute_force(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 6)
    succ = {v: sorted(rng.sample(range(n), rng.randint(0, n))) for v in range(n)}
    found = [_canon(c) for c in simple_cycles(range(n), lambda v: succ[v])]
    assert len(found) == len(set(found))
    assert set(found) == _brute_cycles(n, succ)


def _fake_graph(edges):
    states = sorted({s for s, _, _, _ in edges} | {d for _, d, _, _ in edges})
    out = {s: [] for s in states}
    for s, d, c, r in edges:
        out[s].append(SimpleNamespace(dst=d, cost=c, reward=r))
    return SimpleNamespace(out=out, index={s: i for i, s in enumerate(states)}), states


def test_cycle_ratios_on_small_graphs():
    g, states = _fake_graph([("a", "a", 1, 1)])
    assert enumerate_simple_cycle_ratios(g, states) == [Q(1)]
    g, states = _fake_graph([("a", "b", 0, 0), ("b", "a", 0, 0)])
    assert enumerate_simple_cycle_ratios(g, states) == []
    # parallel edges combine per position
    g, states = _fake_graph([("a", "b", 0, 1), ("a", "b", 1, 1), ("b", "a", 0, 1)])
    assert enumerate_simple_cycle_ratios(g, states) == [Q(0), Q(1, 2)]
    g, states = _fake_graph([(i, (i + 1) % 41, 0, 1) for i in range(41)])
    with pytest.raises(TooLarge):
        enumerate_simple_cycle_ratios(g, states)


def _single_loop(accepting):
    return parse_model("automaton s\nclock x\nalphabet a\ninit p\n"
                       f"accepting {'p' if accepting else ''}\nloc p\n"
                       "edge p -> p on a when x == 1 reset x\n")


def test_cycle_ratios_of_cornerpoint_graph():
    for acc, want in ((True, [Q(1)]), (False, [Q(0)])):
        g = build_cornerpoint(_single_loop(acc))
        reach = [s for s in g.states if s.pr.kind != "bot"]
        assert enumerate_simple_cycle_ratios(g, reach) == want


def test_sampling_is_seeded():
    a = fixture("fig1")
    cfg = SamplingConfig(granularity=3, depth=20, seed=5, samples=30)
    assert sample_run_frequencies(a, cfg) == sample_run_frequencies(a, cfg)
    other = sample_run_frequencies(a, SamplingConfig(granularity=3, depth=20, seed=6, samples=30))
    assert other["samples"] == 30


def test_sampling_trivial_acceptance():
    a = random_automaton(random.Random(3), punctual=True)
    cfg = SamplingConfig(granularity=2, depth=10, samples=20)
    none = dataclasses.replace(a, accepting=())
    every = dataclasses.replace(a, accepting=a.locations)
    lo = sample_run_frequencies(none, cfg)
    hi = sample_run_frequencies(every, cfg)
    assert lo["samples"] and hi["samples"]
    assert lo["min"] == lo["max"] == 0
    assert hi["min"] == hi["max"] == 1
    assert sum(hi["histogram"]) == hi["samples"] == hi["histogram"][9]


def test_sampling_rejects_bad_input():
    with pytest.raises(ValueError):
        SamplingConfig(granularity=0)
    with pytest.raises(MultiClock):
        sample_run_frequencies(fixture("twoclocks", allow_multiclock=True), SamplingConfig(samples=1))


def test_random_run_respects_granularity():
    a = fixture("fig1")
    rng = random.Random(0)
    for _ in range(20):
        r = random_run(a, rng, 3, 8)
        assert all((st.delay * 3).denominator == 1 for st in r.steps)
        if r.steps:
            assert 0 <= prefix_frequency(r) <= 1


def test_lasso_words_family():
    words = list(lasso_words(("a",), 2))
    # length 1: empty stem; length 2: stem of 0 or 1 letters; delays 1/2 or 1
    assert len(words) == 2 + 2 * 4
    assert all(cycle for _, cycle in words)


def test_lasso_word_check():
    pos = ThresholdQuery(Q(0), True, "zeno")
    assert lasso_word_check(fixture("fig2c"), pos, 4)
    assert not lasso_word_check(fixture("fig2c_noacc"), pos, 2)
    with pytest.raises(ValueError):
        lasso_word_check(fixture("fig2c"), ThresholdQuery(Q(1, 2), True, "zeno"), 2)
    nd = parse_model("automaton n\nclock x\nalphabet a\ninit p\naccepting p\nloc p\nloc q\n"
                     "edge p -> p on a when true\nedge p -> q on a when true\nedge q -> q on a when true\n")
    with pytest.raises(ValueError):
        lasso_word_check(nd, ThresholdQuery(Q(0), True, "nonzeno"), 2)

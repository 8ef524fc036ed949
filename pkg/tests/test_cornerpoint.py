import random
from fractions import Fraction as Q

import pytest
from gen import fixture, random_automaton
from hypothesis import given, settings
from hypothesis import strategies as st

from tafreq.cornerpoint import (
    BOT,
    LEFT,
    RIGHT,
    CpPath,
    CpState,
    bottom,
    build_cornerpoint,
    contract,
    dilate,
    is_projection,
    left,
    path_from_states,
    path_ratio,
    point,
    pointed_successor,
    realize_prefix,
    right,
)
from tafreq.errors import MismatchedAutomaton, Unrealizable
from tafreq.model import make_run, prefix_frequency
from tafreq.oracle import enumerate_projections, random_run


def test_pointed_successors():
    assert pointed_successor(point(0), 2) == left(0)
    assert pointed_successor(left(0), 2) == right(0)
    assert pointed_successor(right(1), 2) == point(2)
    assert pointed_successor(point(2), 2) == bottom(2)
    assert pointed_successor(bottom(2), 2) == bottom(2)
    assert str(left(0)) == "(0,1),•–" and str(bottom(1)) == "⊥,α⊥"


def test_fig1_graph_shape():
    g = build_cornerpoint(fixture("fig1"))
    assert len({(s.location, s.pr) for s in g.states}) == 15
    assert g.initial == [CpState("l0", point(0))]
    idle = [e for e in g.edges if e.is_idle]
    # reward on the left-to-right idle and on the unbounded loop; cost only in l1
    for e in idle:
        want = 1 if e.src.pr.corner in (LEFT, BOT) else 0
        assert e.reward == want
        assert e.cost == (want if e.src.location == "l1" else 0)
    assert all(e.cost == e.reward == 0 for e in g.edges if not e.is_idle)
    # resets land in {0} and force a delay
    for e in g.edges:
        if e.edge is not None and g.automaton.edges[e.edge].is_reset:
            assert e.dst.pr == point(0) and e.dst.needs_delay


def test_discrete_edges_need_region_inside_guard():
    g = build_cornerpoint(fixture("fig1"))
    for e in g.edges:
        if not e.is_idle:
            iv = g.automaton.guard_interval(g.automaton.edges[e.edge])
            assert iv.includes(e.src.pr.region.interval())
            assert not e.src.needs_delay


def test_fig1_run_projections():
    a = fixture("fig1")
    r = make_run(a, [(1, "a"), (Q(1, 3), "a"), (Q(1, 3), "a")])
    c, d = contract(r), dilate(r)
    assert is_projection(c, r) and is_projection(d, r)
    assert path_ratio(c) == 0 and path_ratio(d) == Q(1, 2)
    assert sorted({path_ratio(p) for p in enumerate_projections(r)}) == [0, Q(1, 3), Q(1, 2)]
    assert prefix_frequency(r) == Q(1, 5)


def test_mismatched_automaton():
    r = make_run(fixture("fig1"), [(1, "a")])
    other = build_cornerpoint(fixture("alternation"))
    with pytest.raises(MismatchedAutomaton):
        is_projection(CpPath(other, other.initial[0], ()), r)


def test_path_chaining_and_mu():
    g = build_cornerpoint(fixture("fig1"))
    s0 = g.initial[0]
    e = g.idle_edge(s0)
    with pytest.raises(ValueError):
        CpPath(g, s0, (e, e))
    p = path_from_states(g, [s0, CpState("l0", left(0)), CpState("l0", right(0)), CpState("l0", point(1))])
    assert (p.cost, p.reward, p.mu) == (0, 1, 1)
    with pytest.raises(ValueError):
        p.repeat(2)


def _runs(seed, n=6):
    rng = random.Random(seed)
    a = random_automaton(rng, punctual=seed % 2 == 0)
    return a, [r for r in (random_run(a, rng, 3, 5) for _ in range(n)) if r.steps]


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_contract_dilate_are_extremal(seed):
    a, runs = _runs(seed)
    for r in runs:
        lo, hi = path_ratio(contract(r)), path_ratio(dilate(r))
        for p in enumerate_projections(r):
            assert is_projection(p, r)
            rp = path_ratio(p)
            if rp is None:
                continue
            if lo is not None:
                assert lo <= rp
            if hi is not None:
                assert rp <= hi


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_canonical_projections_are_enumerated(seed):
    a, runs = _runs(seed)
    for r in runs:
        every = {p.edges for p in enumerate_projections(r)}
        assert contract(r).edges in every and dilate(r).edges in every


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from([Q(1, 2), Q(1, 10), Q(1, 1000)]))
def test_realize_prefix_round_trip(seed, eps):
    a, runs = _runs(seed)
    for r in runs:
        for path in (contract(r), dilate(r)):
            try:
                run = realize_prefix(path, eps)
            except Unrealizable:
                # the path may need a zero delay (for example x == 0 twice in a row)
                continue
            assert is_projection(path, run)
            assert len(run.steps) == len(r.steps)


def test_realize_prefix_tracks_corners():
    a = fixture("fig1")
    r = make_run(a, [(1, "a"), (Q(1, 3), "a"), (Q(1, 3), "a")])
    run = realize_prefix(dilate(r), Q(1, 100))
    assert is_projection(dilate(r), run)
    # l1 is left just before 1, l2 just after 0
    assert run.steps[1].delay > Q(9, 10)
    assert run.steps[2].delay < Q(1, 10)

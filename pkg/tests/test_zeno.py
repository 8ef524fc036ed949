import json
import random
from fractions import Fraction as Q

import pytest
from gen import fixture, random_nondeterministic

from tafreq.errors import MultiClock
from tafreq.model import ThresholdQuery
from tafreq.oracle import delay_for_class, lasso_counterexample, simulate_tagged, tagged_initial, tagged_post
from tafreq.zeno import (
    AbstractConf,
    abstr,
    abstract_initial,
    abstract_successors,
    apply_action,
    buchi_counterexample,
    build_tail_automaton,
    conf_embeds,
    delay_classes,
    elementary_step,
    tag_double,
    zeno_universality,
)

POS = ThresholdQuery(Q(0), True, "zeno")


@pytest.mark.parametrize("name, want", [
    ("fig2c", True), ("fig2c_noacc", False), ("fig2b", True), ("fig1", False), ("fig2a", False),
    ("nd_reset", True), ("nd_noreset", False),
])
def test_fixture_verdicts(name, want):
    a = fixture(name)
    d = zeno_universality(a)
    assert d.answer is want
    assert (lasso_counterexample(a, POS, 3) is None) is want


def test_tagging_starts_accepting_initial_in_b():
    t = tag_double(fixture("fig2c"))
    assert t.initial == [("l0", "b")]
    assert t.initial == [(l, g) for l, g, _ in tagged_initial(fixture("fig2c"))]


def test_abstraction_of_concrete_sets():
    c = abstr({("p", "w", Q(0)), ("q", "b", Q(3, 4)), ("r", "w", Q(5, 4)), ("s", "w", Q(1, 4)), ("t", "b", Q(9))}, 2)
    assert c.gamma == frozenset({("p", "w", 0)})
    assert c.h == (frozenset({("s", "w", 0), ("r", "w", 1)}), frozenset({("q", "b", 0)}))
    assert c.gamma_prime == frozenset({("t", "b")})
    assert c.set_of(2) == frozenset({("p", "w", 0), ("s", "w", 0), ("r", "w", 1), ("q", "b", 0), ("t", "b", 2)})


def test_elementary_steps():
    c = AbstractConf(frozenset({("p", "w", 0), ("q", "w", 1)}), (frozenset({("r", "w", 0)}),), frozenset())
    c1 = elementary_step(c, 1)
    assert c1.gamma == frozenset() and c1.gamma_prime == frozenset({("q", "w")})
    assert c1.h == (frozenset({("p", "w", 0)}), frozenset({("r", "w", 0)}))
    c2 = elementary_step(c1, 1)
    assert c2.gamma == frozenset({("r", "w", 1)}) and c2.h == (frozenset({("p", "w", 0)}),)
    assert len(delay_classes(c, 1)) == 5
    empty = AbstractConf(frozenset(), (), frozenset({("p", "w")}))
    assert delay_classes(empty, 1) == [empty]


def test_embedding_order():
    small = AbstractConf(frozenset(), (frozenset({("p", "w", 0)}),), frozenset())
    big = AbstractConf(frozenset({("q", "w", 0)}), (frozenset({("r", "w", 0)}), frozenset({("p", "w", 0), ("s", "b", 0)})),
                       frozenset())
    assert conf_embeds(small, big) and not conf_embeds(big, small)
    assert conf_embeds(small, small)


def test_delay_concretizer():
    values = [Q(0), Q(3, 4)]
    # classes: (0,1/4), 1/4, (1/4,1), 1, (1,...)
    assert delay_for_class(values, 1, 1) == Q(1, 8)
    assert delay_for_class(values, 2, 1) == Q(1, 4)
    assert delay_for_class(values, 4, 1) == Q(1)
    with pytest.raises(ValueError):
        delay_for_class(values, 9, 1)


@pytest.mark.parametrize("name", ["fig1", "fig2b", "fig2c", "fig4b", "nd_reset", "nd_noreset", "twoloops"])
def test_abstract_matches_concrete(name):
    a = fixture(name)
    tagged = tag_double(a)
    M = a.max_constant
    rng = random.Random(name)
    for _ in range(50):
        S, conf, word = tagged_initial(a), abstract_initial(tagged), []
        for _ in range(6):
            classes = delay_classes(conf, M)
            k = rng.randrange(len(classes))
            act = rng.choice(a.alphabet)
            d = delay_for_class([v for _, _, v in S], k + (1 if conf.gamma else 0), M)
            assert abstr({(l, t, v + d) for l, t, v in S}, M) == classes[k]
            S = tagged_post(a, S, d, act)
            conf = apply_action(classes[k], act, tagged)
            word.append((d, act))
            assert abstr(S, M) == conf
            if not S:
                break
        assert simulate_tagged(a, word) == S


def test_successor_labels_are_realisable():
    a = fixture("nd_noreset")
    tagged = tag_double(a)
    conf = abstract_initial(tagged)
    S = tagged_initial(a)
    for succ, (k, act) in abstract_successors(conf, tagged).items():
        d = delay_for_class([v for _, _, v in S], k, a.max_constant)
        assert abstr(tagged_post(a, S, d, act), a.max_constant) == succ


def test_trace_lines_are_json():
    lines = []
    zeno_universality(fixture("fig2b"), trace=lambda c: lines.append(json.dumps(c.as_json(), sort_keys=True)))
    assert lines
    first = json.loads(lines[0])
    assert set(first) == {"gamma", "h", "gamma_prime"}
    assert first["gamma"] == [["l0", "w", 0]]


def test_tail_automaton_counterexample():
    tagged = tag_double(fixture("fig2c_noacc"))
    bf = build_tail_automaton(tagged)
    ce = buchi_counterexample(bf, frozenset({("l0", "w", 0)}))
    assert ce is not None
    assert buchi_counterexample(build_tail_automaton(tag_double(fixture("fig2c"))),
                                frozenset({("l1", "b", 0)})) is None


def test_multiclock_rejected():
    with pytest.raises(MultiClock):
        zeno_universality(fixture("twoclocks", allow_multiclock=True))


def test_random_automata_agree_with_lasso_oracle():
    """Universal verdicts survive all bounded Zeno lassos; refutations are backed by one."""
    verdicts = []
    for a in random_nondeterministic(71, 25):
        u = zeno_universality(a).answer
        ce = lasso_counterexample(a, POS, 3)
        if u:
            assert ce is None, (a.name, ce)
        verdicts.append((u, ce is None))
    assert any(u for u, _ in verdicts) and any(not u for u, _ in verdicts)
    assert sum(u == o for u, o in verdicts) >= 20

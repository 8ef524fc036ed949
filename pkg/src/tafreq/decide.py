"""Emptiness and deterministic universality under threshold queries."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .cornerpoint import build_cornerpoint
from .errors import NotDeterministic
from .model import ThresholdQuery, is_complete, is_deterministic
from .ratio import analysed_sccs, compose_ratio_witness, frequency_bounds


@dataclass
class Decision:
    kind: str  # emptiness | universality-deterministic | universality-zeno
    query: ThresholdQuery
    answer: bool
    witness: Optional[str] = None
    caveats: list = field(default_factory=list)

    def as_dict(self):
        d = {
            "kind": self.kind,
            "threshold": self.query.threshold,
            "strict": self.query.strict,
            "class": self.query.word_class,
            "answer": self.answer,
        }
        if self.witness is not None:
            d["witness"] = self.witness
        if self.caveats:
            d["caveats"] = list(self.caveats)
        return d


def _nonzeno_witness(automaton, lam, strict):
    g = build_cornerpoint(automaton)
    best = None
    for scc in analysed_sccs(g):
        if scc.max_ratio is None:
            continue
        if scc.max_ratio > lam or (not strict and scc.max_ratio == lam):
            target = scc.max_ratio
            if best is None or target > best[0]:
                best = (target, scc)
    if best is None:
        return None
    w = compose_ratio_witness(g, best[1], best[0])
    return w.describe()


def decide_emptiness(automaton, query):
    """answer is True when no run meets the query (the language is empty)."""
    lam = Fraction(query.threshold)
    b = frequency_bounds(automaton, query.word_class)
    if b.empty:
        return Decision("emptiness", query, True, None, [f"no {query.word_class} runs"])
    nonempty = b.sup > lam or (not query.strict and b.sup == lam and b.sup_attained)
    witness = None
    if nonempty:
        if query.word_class != "zeno":
            witness = _nonzeno_witness(automaton, lam, query.strict)
        if witness is None:
            witness = f"Zeno runs approach frequency {b.sup} ({'attained' if b.sup_attained else 'not attained'})"
    return Decision("emptiness", query, not nonempty, witness)


def decide_universality_det(automaton, query):
    if not is_deterministic(automaton):
        raise NotDeterministic(f"automaton {automaton.name!r} is not deterministic")
    lam = Fraction(query.threshold)
    if not is_complete(automaton):
        return Decision("universality-deterministic", query, False,
                        "some timed word cannot be read", ["automaton incomplete"])
    b = frequency_bounds(automaton, query.word_class)
    if b.empty:
        return Decision("universality-deterministic", query, True, None, [f"no {query.word_class} runs"])
    if query.strict:
        universal = b.inf > lam or (b.inf == lam and not b.inf_attained)
    else:
        universal = b.inf >= lam
    witness = None
    if not universal:
        witness = f"a {query.word_class} run has frequency {'equal to' if b.inf_attained else 'arbitrarily close to'} {b.inf}"
    return Decision("universality-deterministic", query, universal, witness)

"""Frequency analysis for single-clock timed automata."""

from .errors import (
    TafreqError,
    ModelSyntaxError,
    SemanticError,
    ZeroDelay,
    EmptyRun,
    NotACycle,
    MultiClock,
    Unrealizable,
    MismatchedAutomaton,
    TargetOutOfRange,
    NotDeterministic,
    TooLarge,
)
from .model import (
    Guard,
    Edge,
    TimedAutomaton,
    TimedRun,
    TimedWord,
    ThresholdQuery,
    validate,
    step,
    make_run,
    prefix_frequency,
    limit_frequency_of_lasso,
    is_deterministic,
    is_complete,
)
from .frontend import parse_model, print_model, render_dot, export_report, load_report, AnalysisReport
from .cornerpoint import build_cornerpoint, contract, dilate, path_ratio, is_projection, realize_prefix
from .ratio import reachable_sccs, extremal_cycle_ratios, nonzeno_frequency_set, compose_ratio_witness, frequency_bounds
from .decide import decide_emptiness, decide_universality_det
from .zeno import zeno_universality

__version__ = "0.1.0"

"""Desk-scale laboratory for distributional chaos of operator families.

Layers, bottom up: ``space`` (sequence/grid vectors and their gauges),
``indexset`` (index sets with exact density bookkeeping), ``operators``
(weighted shift families and friends), ``mlo`` (set-valued images),
``chaos`` (the twelve large/small conditions and classifiers),
``criteria`` (auxiliary sufficient conditions), ``scenarios`` (named
constructions with frozen claims), plus an HTTP service and a CLI.
"""

from .chaos import (
    classify_irregular,
    classify_near_zero,
    classify_unbounded,
    condition_spec,
    eval_condition,
    evaluate_trace,
    implication_lattice,
    lattice_consistency,
    mlo_chaos_regime,
    orbit_trace,
    pair_trace,
    verify_scrambled_set,
)
from .indexset import (
    BlockPatternSet,
    Blocks,
    BlockSkeleton,
    ExactSet,
    default_checkpoints,
)
from .operators import (
    OperatorFamily,
    Regularizer,
    TwoRunWeights,
    WeightSequence,
    backward_shift_family,
    diagonal_family,
    forward_shift_family,
    generalized_backward_family,
    regularized_family,
    scalar_pattern_family,
)
from .scenarios import (
    DEFAULT_SEED,
    TraceBundle,
    UnknownScenarioError,
    describe_scenario,
    get_scenario,
    list_scenarios,
    run_scenario,
    scenario_trace,
)
from .space import GridFunction, SeminormSpace, SeqVector, distance, seminorm

__version__ = "0.1.0"

__all__ = [
    "BlockPatternSet",
    "Blocks",
    "BlockSkeleton",
    "DEFAULT_SEED",
    "ExactSet",
    "GridFunction",
    "OperatorFamily",
    "Regularizer",
    "SeminormSpace",
    "SeqVector",
    "TraceBundle",
    "TwoRunWeights",
    "UnknownScenarioError",
    "WeightSequence",
    "backward_shift_family",
    "classify_irregular",
    "classify_near_zero",
    "classify_unbounded",
    "condition_spec",
    "default_checkpoints",
    "describe_scenario",
    "diagonal_family",
    "distance",
    "eval_condition",
    "evaluate_trace",
    "forward_shift_family",
    "generalized_backward_family",
    "get_scenario",
    "implication_lattice",
    "lattice_consistency",
    "list_scenarios",
    "mlo_chaos_regime",
    "orbit_trace",
    "pair_trace",
    "regularized_family",
    "run_scenario",
    "scalar_pattern_family",
    "scenario_trace",
    "seminorm",
    "verify_scrambled_set",
    "__version__",
]

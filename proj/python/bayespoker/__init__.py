"""Bayesian five-card stud player."""

from ._bayespoker import (
    CardError,
    DecisionError,
    InferenceError,
    MatrixError,
    Matrices,
    action_distribution,
    category_reference,
    classify,
    compare,
    curve_weights,
    hand_types,
    infer,
    simulate,
    threshold,
    win_probability,
)

__all__ = [
    "CardError",
    "DecisionError",
    "InferenceError",
    "MatrixError",
    "Matrices",
    "action_distribution",
    "category_reference",
    "classify",
    "compare",
    "curve_weights",
    "hand_types",
    "infer",
    "simulate",
    "threshold",
    "win_probability",
]

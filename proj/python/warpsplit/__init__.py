"""Warped resolvents, backward-backward splitting and Yosida flows."""

from ._core import (
    ConvexFunction,
    Error,
    GridTooSmall,
    MonotoneOperator,
    PathStalled,
    Preconditioner,
    SplittingProblem,
    WarpedEvaluator,
    backward_backward,
    dr_flow,
    dual_solution,
    halving_schedule,
    make_dr_block,
    prox_oracle,
    regularization_path,
    yosida_flow,
)

__all__ = [
    "ConvexFunction",
    "Error",
    "GridTooSmall",
    "MonotoneOperator",
    "PathStalled",
    "Preconditioner",
    "SplittingProblem",
    "WarpedEvaluator",
    "backward_backward",
    "dr_flow",
    "dual_solution",
    "halving_schedule",
    "make_dr_block",
    "prox_oracle",
    "regularization_path",
    "yosida_flow",
]

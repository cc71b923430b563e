"""Spectral operators of the Hermite operator: semigroup, projectors, multipliers."""

from .admissible import (
    LOWER_WINDOW,
    AdmissibleSystem,
    DyadicBlock,
    build_admissible,
    cutoff,
    dyadic_block,
    smooth_step,
)
from .kernels import KernelEvaluator, as_points, series_kernel
from .pseudo import (
    forward_difference,
    multiplier_block,
    piece_evaluator,
    pseudo_apply,
    pseudo_evaluator,
    pseudo_kernel,
    pseudo_kernel_piece,
    pseudo_matrix,
    smooth_level_degree,
    smooth_weights,
    symbol_class_check,
    symbol_dx,
)
from .semigroup import (
    TruncationError,
    heat_apply,
    heat_degree,
    heat_kernel,
    heat_kernel_evaluator,
    mehler_L,
    mehler_kernel,
    projector_diag,
    projector_evaluator,
    projector_QN,
)
from .symbols import REGISTRY, PseudoSymbol, get_symbol, spectral_symbol

__all__ = [
    "LOWER_WINDOW",
    "REGISTRY",
    "AdmissibleSystem",
    "DyadicBlock",
    "KernelEvaluator",
    "PseudoSymbol",
    "TruncationError",
    "as_points",
    "build_admissible",
    "cutoff",
    "dyadic_block",
    "forward_difference",
    "get_symbol",
    "heat_apply",
    "heat_degree",
    "heat_kernel",
    "heat_kernel_evaluator",
    "mehler_L",
    "mehler_kernel",
    "multiplier_block",
    "piece_evaluator",
    "projector_QN",
    "projector_diag",
    "projector_evaluator",
    "pseudo_apply",
    "pseudo_evaluator",
    "pseudo_kernel",
    "pseudo_kernel_piece",
    "pseudo_matrix",
    "series_kernel",
    "smooth_level_degree",
    "smooth_step",
    "smooth_weights",
    "spectral_symbol",
    "symbol_class_check",
    "symbol_dx",
]

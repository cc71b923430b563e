"""Hermite functions, bases, quadrature, transforms and ladder operators."""

from .basis import BasisSpec, CoefVec, MultiIndex, reindex
from .functions import (
    hermite_derivative_table,
    hermite_eval_1d,
    hermite_eval_nd,
    hermite_moments_1d,
    hermite_series_1d,
    hermite_table,
)
from .grid import (
    GridFn,
    InsufficientQuadrature,
    function_table,
    hermite_grid,
    synthesize,
    tensor_points,
    transform,
    uniform_grid,
)
from .ladder import (
    ANNIHILATION,
    CREATION,
    apply_L,
    comparable,
    critical_radius,
    derivative_apply,
    ladder_apply,
    ladder_factor,
    multiplier_apply,
    position_apply,
    truncate,
    word_apply,
)
from .quadrature import QuadratureError, QuadratureRule, gauss_hermite_rule

__all__ = [
    "ANNIHILATION",
    "BasisSpec",
    "CREATION",
    "CoefVec",
    "GridFn",
    "InsufficientQuadrature",
    "MultiIndex",
    "QuadratureError",
    "QuadratureRule",
    "apply_L",
    "comparable",
    "critical_radius",
    "derivative_apply",
    "function_table",
    "gauss_hermite_rule",
    "hermite_derivative_table",
    "hermite_eval_1d",
    "hermite_eval_nd",
    "hermite_grid",
    "hermite_moments_1d",
    "hermite_series_1d",
    "hermite_table",
    "ladder_apply",
    "ladder_factor",
    "multiplier_apply",
    "position_apply",
    "reindex",
    "synthesize",
    "tensor_points",
    "transform",
    "truncate",
    "uniform_grid",
    "word_apply",
]

"""Bilinear Hermite-series kernels ``sum_xi c(x, xi) F_xi(x) h_xi(y)``."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from ..core.basis import BasisSpec
from ..core.grid import function_table


def as_points(x, dimension=None):
    """Coerce to an ``(N, n)`` point array; 1-D input is read as points in R
    unless ``dimension`` says otherwise."""
    arr = np.asarray(x, dtype=float)
    if arr.ndim == 0:
        arr = arr.reshape(1, 1)
    elif arr.ndim == 1:
        if dimension is not None and dimension > 1:
            if arr.size != dimension:
                raise ValueError("point dimension mismatch")
            arr = arr.reshape(1, -1)
        else:
            arr = arr.reshape(-1, 1)
    if dimension is not None and arr.shape[1] != dimension:
        raise ValueError(f"points have dimension {arr.shape[1]}, expected {dimension}")
    return arr


def _orders(d, n):
    if d is None:
        return (0,) * n
    if np.isscalar(d):
        if n != 1 and d != 0:
            raise ValueError("give per-axis derivative orders in dimension > 1")
        return (int(d),) * n if n == 1 else (0,) * n
    d = tuple(int(v) for v in d)
    if len(d) != n:
        raise ValueError("derivative order length differs from dimension")
    return d


def series_kernel(basis, coef, x, y, dx=None, dy=None, x_shift=None, table=False):
    """Evaluate ``sum_p coef[..., p] ∂^dx F_p(x) ∂^dy h_p(y)``.

    Parameters
    ----------
    basis : BasisSpec
        Indexing the ``y`` factor.
    coef : ndarray
        Shape ``(count,)`` or ``(Nx, count)`` for x-dependent coefficients.
    x, y : array_like
        Point arrays; paired elementwise unless ``table`` is set.
    x_shift : ndarray of int, optional
        Signed shift ``alpha~`` so that ``F_p = h_{xi_p + alpha~}``; terms whose
        shifted index leaves ``N_0^n`` must already carry zero coefficients.
    table : bool
        Return the full ``(Nx, Ny)`` table instead of paired values.
    """
    n = basis.dimension
    X = as_points(x, n)
    Y = as_points(y, n)
    dx, dy = _orders(dx, n), _orders(dy, n)
    coef = np.asarray(coef)
    Hy = function_table(basis, Y, dy)
    if x_shift is None:
        Hx = function_table(basis, X, dx)
    else:
        shift = np.asarray(x_shift, dtype=np.int64)
        big = BasisSpec(n, basis.degree + int(np.clip(shift, 0, None).sum()))
        Hbig = function_table(big, X, dx)
        tgt = basis.indices + shift
        pos = big.positions(np.where(tgt < 0, 0, tgt))
        Hx = Hbig[pos]
        Hx[(tgt < 0).any(axis=1)] = 0.0
    if table:
        if coef.ndim == 1:
            return (Hx * coef[:, None]).T @ Hy
        return (coef * Hx.T) @ Hy
    if coef.ndim == 1:
        return np.einsum("p,pi,pi->i", coef, Hx, Hy)
    return np.einsum("ip,pi,pi->i", coef, Hx, Hy)


@dataclass
class KernelEvaluator:
    """Kernel ``K(x, y)`` with optional partial derivatives.

    Attributes
    ----------
    evaluate : callable
        ``evaluate(x, y, dx, dy, table)`` with per-axis derivative orders.
    dimension : int
    truncation : int
        Largest total degree used.
    max_order : int
        Highest derivative order available in each variable.
    name : str
    min_distance : float
        Pairs closer than this are refused (diagonal singularity).
    """

    evaluate: Callable
    dimension: int
    truncation: int
    max_order: int = 2
    name: str = "kernel"
    min_distance: float = 0.0
    info: dict = field(default_factory=dict)

    def __call__(self, x, y, dx=None, dy=None):
        return self.evaluate(x, y, dx, dy, False)

    def table(self, xs, ys, dx=None, dy=None):
        return self.evaluate(xs, ys, dx, dy, True)

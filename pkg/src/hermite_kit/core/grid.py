"""Sampled functions on weighted grids and the Hermite transform pair."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .basis import BasisSpec, CoefVec
from .functions import hermite_derivative_table
from .quadrature import default_node_count, gauss_hermite_rule


class InsufficientQuadrature(ValueError):
    """The grid cannot resolve the requested basis."""


@dataclass(frozen=True)
class GridFn:
    """Samples of a function on a point set with integration weights.

    Attributes
    ----------
    points : ndarray, shape (N, n)
    weights : ndarray, shape (N,) or None
        ``None`` for unweighted samples (no integration possible).
    values : ndarray, shape (N,)
    precision : int or None
        Largest degree ``d`` such that products ``h_j h_k`` with
        ``j, k <= d`` are integrated exactly; ``None`` if unknown.
    """

    points: np.ndarray
    weights: np.ndarray | None
    values: np.ndarray
    precision: int | None = None

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim == 1:
            pts = pts[:, None]
        vals = np.asarray(self.values)
        if vals.dtype.kind not in "fc":
            vals = vals.astype(float)
        if vals.shape != (pts.shape[0],):
            raise ValueError("values must align with points")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "values", vals)
        if self.weights is not None:
            w = np.asarray(self.weights, dtype=float)
            if w.shape != vals.shape:
                raise ValueError("weights must align with points")
            object.__setattr__(self, "weights", w)

    @property
    def dimension(self):
        return self.points.shape[1]

    @property
    def size(self):
        return self.points.shape[0]

    def with_values(self, values):
        return GridFn(self.points, self.weights, values, self.precision)

    def integrate(self, values=None):
        if self.weights is None:
            raise ValueError("grid carries no integration weights")
        v = self.values if values is None else values
        return np.sum(self.weights * v)

    def lp_norm(self, p=2.0):
        """``(∫ |f|^p)^{1/p}``; ``p = inf`` gives the sample maximum."""
        if np.isinf(p):
            return float(np.max(np.abs(self.values))) if self.size else 0.0
        return float(self.integrate(np.abs(self.values) ** p) ** (1.0 / p))


def tensor_points(axes):
    """Cartesian product of per-axis arrays as an ``(N, n)`` point array."""
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=-1)


def hermite_grid(degree, dimension=1, nodes=None, func=None):
    """Tensor Gauss-Hermite grid adequate for bases of maximal degree ``degree``.

    Parameters
    ----------
    degree : int
    dimension : int
    nodes : int, optional
        Nodes per axis; default ``2 * degree + 33``.
    func : callable, optional
        Sampled as ``func(points)``; zeros when omitted.
    """
    m = default_node_count(degree) if nodes is None else nodes
    rule = gauss_hermite_rule(m)
    pts = tensor_points([rule.nodes] * dimension)
    w = np.ones(pts.shape[0])
    mesh = np.meshgrid(*([rule.weights] * dimension), indexing="ij")
    for m_ in mesh:
        w = w * m_.ravel()
    vals = np.zeros(pts.shape[0]) if func is None else np.asarray(func(pts))
    return GridFn(pts, w, vals, precision=rule.precision)


def uniform_grid(lo, hi, count, dimension=1, func=None):
    """Tensor uniform grid with trapezoid weights on ``[lo, hi]^n``."""
    ax = np.linspace(lo, hi, count)
    w1 = np.full(count, (hi - lo) / (count - 1)) if count > 1 else np.ones(1)
    if count > 1:
        w1[0] *= 0.5
        w1[-1] *= 0.5
    pts = tensor_points([ax] * dimension)
    w = np.ones(pts.shape[0])
    for m_ in np.meshgrid(*([w1] * dimension), indexing="ij"):
        w = w * m_.ravel()
    vals = np.zeros(pts.shape[0]) if func is None else np.asarray(func(pts))
    return GridFn(pts, w, vals)


def function_table(basis, points, derivative=None):
    """Matrix ``H[p, i] = ∂^derivative h_{xi_p}(x_i)``.

    Parameters
    ----------
    basis : BasisSpec
    points : array_like, shape (N, n)
    derivative : sequence of int, optional
        Per-axis derivative orders.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim == 1:
        pts = pts[:, None]
    n = basis.dimension
    if pts.shape[1] != n:
        raise ValueError(f"points have dimension {pts.shape[1]}, basis has {n}")
    der = (0,) * n if derivative is None else tuple(derivative)
    idx = basis.indices
    K = basis.degree
    out = None
    for i in range(n):
        tab = hermite_derivative_table(K, pts[:, i], der[i])
        fac = tab[idx[:, i]]
        out = fac if out is None else out * fac
    return out


def synthesize(c, points, derivative=None):
    """Evaluate ``sum_xi c_xi h_xi`` at ``points`` (an array or a GridFn).

    Returns a GridFn carrying the weights of ``points`` when available.
    """
    if isinstance(points, GridFn):
        pts, w, prec = points.points, points.weights, points.precision
    else:
        pts = np.asarray(points, dtype=float)
        if pts.ndim == 1:
            pts = pts[:, None]
        w, prec = None, None
    vals = c.values @ function_table(c.basis, pts, derivative)
    return GridFn(pts, w, vals, prec)


def transform(f, basis, check=True, tol=1e-10):
    """Hermite coefficients ``<f, h_xi>`` for all ``xi`` in ``basis``.

    Parameters
    ----------
    f : GridFn
        Must carry quadrature weights.
    basis : BasisSpec
    check : bool
        Verify that the grid integrates the basis Gram matrix to ``tol``
        when its exactness degree is not declared.

    Raises
    ------
    InsufficientQuadrature
        When the grid cannot resolve products of basis members.
    """
    if f.weights is None:
        raise InsufficientQuadrature("grid carries no integration weights")
    if f.dimension != basis.dimension:
        raise ValueError("grid and basis dimensions differ")
    H = function_table(basis, f.points)
    if f.precision is not None:
        if basis.degree > f.precision:
            raise InsufficientQuadrature(
                f"grid resolves degree {f.precision}, basis needs {basis.degree}"
            )
    elif check:
        gram = (H * f.weights) @ H.T
        res = float(np.max(np.abs(gram - np.eye(basis.count))))
        if res > tol:
            raise InsufficientQuadrature(f"round-trip residual {res:.3e} exceeds {tol:.1e}")
    return CoefVec(basis, H @ (f.weights * f.values))


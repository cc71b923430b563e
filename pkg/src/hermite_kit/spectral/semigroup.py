"""Heat semigroup, its kernel (series and Mehler closed form) and projectors."""

from __future__ import annotations

from math import comb, lgamma, log

import numpy as np

from ..core.basis import BasisSpec, CoefVec
from .kernels import KernelEvaluator, as_points, series_kernel

DEFAULT_DEGREE_CAP = 20000


class TruncationError(ValueError):
    """The required truncation degree exceeds the configured cap."""

    def __init__(self, needed, cap):
        super().__init__(f"truncation needs degree {needed}, cap is {cap}")
        self.needed = needed
        self.cap = cap


def _check_time(t):
    if not t > 0:
        raise ValueError(f"time must be positive, got {t}")


def heat_apply(t, c):
    """``c_xi -> exp(-t lambda_xi) c_xi``."""
    _check_time(t)
    return CoefVec(c.basis, c.values * np.exp(-t * c.basis.eigenvalues))


def heat_degree(t, dimension=1, tol=1e-12, cap=DEFAULT_DEGREE_CAP):
    """Smallest ``K`` whose omitted heat-series tail is below ``tol``.

    The tail is bounded by ``sum_{k>K} exp(-t(2k+n)) C(k+n-1, n-1) pi^{-n/2}``,
    using ``|h_xi| <= pi^{-n/4}``.

    Raises
    ------
    TruncationError
        If the degree exceeds ``cap``.
    """
    _check_time(t)
    n = dimension
    ks = np.arange(0, 2 * cap + 2)
    logterm = (
        -t * (2.0 * ks + n)
        + np.array([lgamma(k + n) - lgamma(k + 1) - lgamma(n) for k in ks])
        - 0.5 * n * log(np.pi)
    )
    term = np.exp(logterm)
    tail = np.cumsum(term[::-1])[::-1]  # tail[k] = sum_{j>=k}
    ok = np.nonzero(tail[1:] < tol)[0]
    if ok.size == 0 or ok[0] > cap:
        needed = int(ok[0]) if ok.size else int(np.ceil(np.log(1.0 / tol) / (2 * t)))
        raise TruncationError(needed, cap)
    return int(ok[0])


def mehler_kernel(t, x, y, dy=None, table=False):
    """Closed-form heat kernel and its ``y``-derivatives of order ``<= 2``.

    ``(2 pi sinh 2t)^{-n/2} exp(-(|x+y|^2 tanh t + |x-y|^2 coth t) / 4)``
    """
    _check_time(t)
    X = as_points(x)
    Y = as_points(y, X.shape[1])
    if table:
        X = X[:, None, :]
        Y = Y[None, :, :]
    n = X.shape[-1]
    th, cth = np.tanh(t), 1.0 / np.tanh(t)
    S = X + Y
    D = X - Y
    logk = -0.5 * n * np.log(2 * np.pi * np.sinh(2 * t)) - 0.25 * (
        np.sum(S * S, axis=-1) * th + np.sum(D * D, axis=-1) * cth
    )
    val = np.exp(logk)
    if dy is None:
        return val
    dy = (int(dy),) if np.isscalar(dy) else tuple(dy)
    fac = np.ones_like(val)
    for i, order in enumerate(dy):
        g = -0.5 * (S[..., i] * th - D[..., i] * cth)  # ∂_{y_i} log K
        g2 = -0.5 * (th + cth)  # ∂_{y_i}^2 log K
        if order == 0:
            continue
        if order == 1:
            fac = fac * g
        elif order == 2:
            fac = fac * (g * g + g2)
        else:
            raise ValueError("closed-form derivatives are available up to order 2")
    return val * fac


def mehler_L(t, x, y, table=False):
    """``L_x exp(-tL)(x, y) = -∂_t`` of the Mehler kernel, in closed form."""
    X = as_points(x)
    Y = as_points(y, X.shape[1])
    if table:
        X = X[:, None, :]
        Y = Y[None, :, :]
    n = X.shape[-1]
    S = np.sum((X + Y) ** 2, axis=-1)
    D = np.sum((X - Y) ** 2, axis=-1)
    sech2 = 1.0 / np.cosh(t) ** 2
    csch2 = 1.0 / np.sinh(t) ** 2
    dlog = -n / np.tanh(2 * t) - 0.25 * (S * sech2 - D * csch2)
    return -dlog * mehler_kernel(t, X.reshape(-1, n), Y.reshape(-1, n)).reshape(dlog.shape)


def heat_kernel(t, x, y, degree=None, dx=None, dy=None, table=False, cap=DEFAULT_DEGREE_CAP):
    """Truncated eigen-series of the heat kernel.

    Parameters
    ----------
    t : float
    x, y : array_like
        Points, paired elementwise unless ``table``.
    degree : int, optional
        Truncation degree; chosen by :func:`heat_degree` when omitted.
    dx, dy : int or tuple, optional
        Derivative orders via the exact ladder relations.
    """
    X = as_points(x)
    n = X.shape[1]
    K = heat_degree(t, n, cap=cap) if degree is None else degree
    if K > cap:
        raise TruncationError(K, cap)
    basis = BasisSpec(n, K)
    coef = np.exp(-t * basis.eigenvalues)
    return series_kernel(basis, coef, X, y, dx, dy, table=table)


def heat_kernel_evaluator(t, dimension=1, degree=None):
    K = heat_degree(t, dimension) if degree is None else degree
    basis = BasisSpec(dimension, K)
    coef = np.exp(-t * basis.eigenvalues)

    def ev(x, y, dx, dy, table):
        return series_kernel(basis, coef, x, y, dx, dy, table=table)

    return KernelEvaluator(ev, dimension, K, name=f"heat(t={t})")


def projector_QN(N, x, y, table=False):
    """``Q_N(x, y) = sum_{|xi| <= N} h_xi(x) h_xi(y)``."""
    X = as_points(x)
    basis = BasisSpec(X.shape[1], N)
    return series_kernel(basis, np.ones(basis.count), X, y, table=table)


def projector_diag(N, x):
    """``Q_N(x, x) >= 0``."""
    X = as_points(x)
    return projector_QN(N, X, X)


def projector_evaluator(N, dimension=1):
    basis = BasisSpec(dimension, N)
    coef = np.ones(basis.count)

    def ev(x, y, dx, dy, table):
        return series_kernel(basis, coef, x, y, dx, dy, table=table)

    return KernelEvaluator(ev, dimension, N, name=f"projector(N={N})")


def count_degree(N, dimension):
    """Number of multi-indices with ``|xi| <= N``."""
    return comb(N + dimension, dimension)

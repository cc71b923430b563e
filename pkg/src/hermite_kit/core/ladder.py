"""Exact coefficient-space ladder, position, derivative and spectral maps.

``A_i = -∂_i + x_i`` raises ``xi_i`` with factor ``sqrt(2 xi_i + 2)``;
``A*_i = ∂_i + x_i`` lowers it with factor ``sqrt(2 xi_i)``.
"""

from __future__ import annotations

import numpy as np

from .basis import BasisSpec, CoefVec, reindex

CREATION = "A"
ANNIHILATION = "A*"
_ALIASES = {"A": CREATION, "A*": ANNIHILATION, "AStar": ANNIHILATION, "Astar": ANNIHILATION}


def normalize_letter(kind):
    try:
        return _ALIASES[kind]
    except KeyError:
        raise ValueError(f"unknown ladder letter {kind!r}; use 'A' or 'A*'") from None


def ladder_factor(kind, k):
    """Coefficient of a single ladder step from degree ``k`` (array-friendly)."""
    k = np.asarray(k, dtype=float)
    if normalize_letter(kind) == CREATION:
        return np.sqrt(2.0 * k + 2.0)
    return np.sqrt(2.0 * k)


def ladder_apply(kind, i, c):
    """Apply ``A_i`` or ``A*_i`` to a coefficient vector.

    Parameters
    ----------
    kind : {'A', 'A*'}
    i : int
        Axis, ``0 <= i < n``.
    c : CoefVec

    Returns
    -------
    CoefVec
        On a basis of degree ``K + 1`` for ``A`` and ``max(K - 1, 0)`` for ``A*``.
    """
    kind = normalize_letter(kind)
    n, K = c.basis.dimension, c.basis.degree
    if not 0 <= i < n:
        raise ValueError(f"axis {i} out of range for dimension {n}")
    idx = c.basis.indices
    if kind == CREATION:
        new = BasisSpec(n, K + 1)
        shift = 1
    else:
        new = BasisSpec(n, max(K - 1, 0))
        shift = -1
    fac = ladder_factor(kind, idx[:, i])
    target = idx.copy()
    target[:, i] += shift
    pos = new.positions(target)
    keep = (pos >= 0) & (fac != 0)
    out = np.zeros(new.count, dtype=np.result_type(c.values, float))
    np.add.at(out, pos[keep], fac[keep] * c.values[keep])
    return CoefVec(new, out)


def position_apply(i, c):
    """Multiplication by ``x_i``: ``(A_i + A*_i) / 2``."""
    up = ladder_apply(CREATION, i, c)
    down = ladder_apply(ANNIHILATION, i, c)
    return 0.5 * (up + down)


def derivative_apply(i, c):
    """Differentiation ``∂_i = (A*_i - A_i) / 2``."""
    up = ladder_apply(CREATION, i, c)
    down = ladder_apply(ANNIHILATION, i, c)
    return 0.5 * (down - up)


def word_apply(letters, c):
    """Apply a product of ladder letters, rightmost first.

    ``letters`` is a sequence of ``(kind, axis)`` pairs written as an
    operator product, so ``[('A', 0), ('A*', 0)]`` means ``A_0 A*_0``.
    """
    for kind, axis in reversed(list(letters)):
        c = ladder_apply(kind, axis, c)
    return c


def apply_L(c, power=1.0):
    """``c_xi -> (2|xi| + n)^power c_xi``."""
    if power == 0:
        return c
    lam = c.basis.eigenvalues
    return CoefVec(c.basis, c.values * lam ** power)


def multiplier_apply(m, c):
    """``c_xi -> m(lambda_xi) c_xi`` for a scalar spectral function ``m``."""
    vals = np.asarray(m(c.basis.eigenvalues))
    return CoefVec(c.basis, c.values * vals)


def critical_radius(x):
    """``rho(x) = 1 / (1 + |x|)``; ``x`` has shape ``(n,)`` or ``(N, n)``.

    A scalar or 1-D array with a single axis is read as points in R.
    """
    arr = np.asarray(x, dtype=float)
    if arr.ndim == 0:
        return 1.0 / (1.0 + abs(float(arr)))
    if arr.ndim == 1:
        # a single point in R^n
        return 1.0 / (1.0 + float(np.linalg.norm(arr)))
    return 1.0 / (1.0 + np.linalg.norm(arr, axis=-1))


def comparable(x, y):
    """True when ``|x - y| < rho(x)``; then ``rho(y) / rho(x)`` lies in ``[1/2, 2]``."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    y = np.atleast_1d(np.asarray(y, dtype=float))
    return bool(np.linalg.norm(x - y) < critical_radius(x))


def truncate(c, degree):
    """Restrict ``c`` to total degree ``<= degree``."""
    return reindex(c, degree)

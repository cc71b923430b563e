"""Stable evaluation of L²-normalized Hermite functions.

The normalized three-term recurrence

    h_{k+1}(t) = t sqrt(2/(k+1)) h_k(t) - sqrt(k/(k+1)) h_{k-1}(t)

is run on mantissas with a per-point logarithmic scale, so that the
Gaussian factor of the seed never underflows and the growth in the
classically forbidden region never overflows.
"""

from __future__ import annotations

import numpy as np

PI_QUARTER = np.pi ** -0.25

# Rescale mantissas once they exceed this magnitude.
_BIG = 1e150


def _as_points(t):
    arr = np.asarray(t, dtype=float)
    return arr, arr.reshape(-1)


def _recurrence(K, flat):
    """Yield ``h_0(t), ..., h_K(t)`` one degree at a time (O(N) memory)."""
    prev = np.zeros_like(flat)
    cur = np.full_like(flat, PI_QUARTER)
    logscale = -0.5 * flat * flat
    scale = np.exp(logscale)
    yield cur * scale
    for k in range(K):
        nxt = flat * np.sqrt(2.0 / (k + 1)) * cur - np.sqrt(k / (k + 1)) * prev
        prev, cur = cur, nxt
        big = np.abs(cur) > _BIG
        if big.any():
            f = np.abs(cur[big])
            cur[big] /= f
            prev[big] /= f
            logscale[big] += np.log(f)
            scale = np.exp(logscale)
        yield cur * scale


def hermite_table(K, t):
    """Values of h_0, ..., h_K at the points ``t``.

    Parameters
    ----------
    K : int
        Largest degree, ``K >= 0``.
    t : array_like
        Evaluation points (any shape).

    Returns
    -------
    ndarray
        Array of shape ``(K + 1,) + t.shape``.
    """
    if K < 0:
        raise ValueError("degree must be non-negative")
    arr, flat = _as_points(t)
    out = np.empty((K + 1, flat.size))
    for k, row in enumerate(_recurrence(K, flat)):
        out[k] = row
    return out.reshape((K + 1,) + arr.shape)


def hermite_series_1d(coef, t):
    """``sum_k coef[k] h_k(t)`` without storing the table.

    ``coef`` may be 2-D ``(S, K+1)``, giving ``S`` series at once.
    """
    coef = np.asarray(coef)
    arr, flat = _as_points(t)
    K = coef.shape[-1] - 1
    out = np.zeros(coef.shape[:-1] + (flat.size,), dtype=np.result_type(coef, float))
    nz = np.nonzero(np.any(coef.reshape(-1, K + 1) != 0, axis=0))[0]
    if nz.size == 0:
        return out.reshape(coef.shape[:-1] + arr.shape)
    lo, hi = int(nz[0]), int(nz[-1])
    for k, row in enumerate(_recurrence(hi, flat)):
        if k >= lo:
            out += coef[..., k, None] * row
    return out.reshape(coef.shape[:-1] + arr.shape)


def hermite_moments_1d(K, t, w):
    """``sum_i w_i h_k(t_i)`` for ``k = 0..K`` without storing the table."""
    arr, flat = _as_points(t)
    w = np.asarray(w).reshape(-1)
    out = np.empty(K + 1, dtype=np.result_type(w, float))
    for k, row in enumerate(_recurrence(K, flat)):
        out[k] = row @ w
    return out


def hermite_eval_1d(k, t):
    """Evaluate the Hermite function of degree ``k`` at ``t``.

    Memory use is independent of ``k``; only the last two recurrence
    terms are kept.

    Examples
    --------
    >>> round(float(hermite_eval_1d(0, 0.0)), 10)
    0.7511255444
    """
    if k < 0:
        raise ValueError("degree must be non-negative")
    arr, flat = _as_points(t)
    prev = np.zeros_like(flat)
    cur = np.full_like(flat, PI_QUARTER)
    logscale = -0.5 * flat * flat
    for j in range(k):
        nxt = flat * np.sqrt(2.0 / (j + 1)) * cur - np.sqrt(j / (j + 1)) * prev
        prev, cur = cur, nxt
        big = np.abs(cur) > _BIG
        if big.any():
            f = np.abs(cur[big])
            cur[big] /= f
            prev[big] /= f
            logscale[big] += np.log(f)
    val = cur * np.exp(logscale)
    return val.reshape(arr.shape) if arr.ndim else float(val[0])


def derivative_rows(table, order=1):
    """Apply ``d/dt`` ``order`` times to a table of Hermite functions.

    Uses the exact relation ``h_k' = (sqrt(2k) h_{k-1} - sqrt(2k+2) h_{k+1}) / 2``.
    Each application consumes the top row, so a table of degrees
    ``0..K`` yields derivatives of degrees ``0..K-order``.
    """
    rows = np.asarray(table, dtype=float)
    for _ in range(order):
        K = rows.shape[0] - 1
        if K < 1:
            raise ValueError("table too short for the requested derivative order")
        k = np.arange(K).reshape((-1,) + (1,) * (rows.ndim - 1))
        lower = np.zeros_like(rows[:K])
        lower[1:] = rows[: K - 1]
        rows = 0.5 * (np.sqrt(2.0 * k) * lower - np.sqrt(2.0 * k + 2.0) * rows[1 : K + 1])
    return rows


def hermite_derivative_table(K, t, order=0):
    """Values of ``d^order/dt^order h_k`` for ``k = 0..K``."""
    if order == 0:
        return hermite_table(K, t)
    return derivative_rows(hermite_table(K + order, t), order)


def hermite_eval_nd(xi, x):
    """Evaluate ``h_xi(x) = prod_i h_{xi_i}(x_i)``.

    Parameters
    ----------
    xi : sequence of int or MultiIndex
    x : array_like
        Points of shape ``(..., n)``; a 1-D array is read as a single point.
    """
    entries = tuple(getattr(xi, "entries", xi))
    pts = np.asarray(x, dtype=float)
    if pts.ndim == 1:
        pts = pts.reshape(1, -1)
        single = True
    else:
        single = False
    if pts.shape[-1] != len(entries):
        raise ValueError(
            f"dimension mismatch: multi-index has {len(entries)} entries, points have {pts.shape[-1]}"
        )
    val = np.ones(pts.shape[:-1])
    for i, k in enumerate(entries):
        val = val * hermite_eval_1d(int(k), pts[..., i])
    return float(val[0]) if single else val

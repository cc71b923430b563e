"""Heat maximal function, ``h^p`` quasi-norm and the far-field heat estimate for localized functions."""

from __future__ import annotations

from math import floor

import numpy as np

from ..core.basis import CoefVec
from ..core.grid import GridFn, function_table
from ..reports import measure
from ..spectral.kernels import as_points
from ..spectral.semigroup import mehler_kernel
from .balls import monomial_exponents

T_MIN, T_MAX, T_COUNT = 1e-4, 10.0, 48


def t_sample(count=T_COUNT, lo=T_MIN, hi=T_MAX):
    """Geometric time sample; ``t_sample(2c - 1)`` contains ``t_sample(c)``."""
    return np.geomspace(lo, hi, count)


def heat_gridfn(f, t, points):
    """``exp(-tL) f`` at ``points`` by quadrature of the Mehler kernel against ``f``.

    Returns an array of shape ``(len(t), N)``.
    """
    if f.weights is None:
        raise ValueError("heat_gridfn needs quadrature weights")
    X = as_points(points, f.dimension)
    fw = f.weights * np.asarray(f.values, dtype=float)
    out = np.empty((len(t), X.shape[0]))
    for k, tk in enumerate(t):
        out[k] = mehler_kernel(tk, X, f.points, table=True) @ fw
    return out


def heat_orbit(f, points, times):
    """``exp(-tL) f`` for each time; ``f`` a CoefVec or weighted GridFn."""
    times = np.asarray(times, dtype=float)
    if isinstance(f, CoefVec):
        X = as_points(points, f.basis.dimension)
        table = function_table(f.basis, X)  # (count, N)
        decay = np.exp(-np.outer(times, f.basis.eigenvalues))  # (T, count)
        return (decay * f.values[None, :]) @ table
    if isinstance(f, GridFn):
        return heat_gridfn(f, times, points)
    raise TypeError("expected a CoefVec or a GridFn")


def maximal_function(f, grid, times=None, diagnostic=False):
    """``M f(x) = max_t |exp(-tL) f(x)|`` over a finite time sample.

    Parameters
    ----------
    f : CoefVec or GridFn
    grid : GridFn or array_like
        Evaluation points (weights are kept when present).
    times : array_like, optional
        Default :func:`t_sample`.
    diagnostic : bool
        Also return ``max M_refined / M`` for the time sample with
        doubled density (at least 1).
    """
    if isinstance(grid, GridFn):
        pts, w = grid.points, grid.weights
    else:
        pts, w = as_points(grid), None
    times = t_sample() if times is None else np.asarray(times, dtype=float)
    vals = np.max(np.abs(heat_orbit(f, pts, times)), axis=0)
    out = GridFn(pts, w, vals)
    if not diagnostic:
        return out
    fine = np.geomspace(times[0], times[-1], 2 * len(times) - 1)
    ref = np.max(np.abs(heat_orbit(f, pts, fine)), axis=0)
    pos = vals > 0
    factor = float(np.max(ref[pos] / vals[pos])) if pos.any() else 1.0
    return out, factor


def hp_norm(f, grid, p, times=None):
    """``||M f||_{L^p}`` on the quadrature of ``grid`` (a weighted GridFn)."""
    if not (isinstance(grid, GridFn) and grid.weights is not None):
        raise ValueError("hp_norm needs a weighted GridFn as integration grid")
    m = maximal_function(f, grid, times)
    return float(np.sum(grid.weights * m.values ** p) ** (1.0 / p))


AE_MODES = ("a", "b", "c")


def _ae_hypothesis(b, ball, params, mode, s, lam, alpha, tol):
    """Messages for violated hypotheses (empty when all hold)."""
    p, q = params.p, params.q
    bad = []
    n = ball.dimension
    r, rho = ball.radius, ball.rho
    if r > rho * (1 + tol):
        bad.append(f"r_B = {r:g} exceeds rho_B = {rho:g}")
    d = np.linalg.norm(b.points - ball.x, axis=1)
    if np.any((np.abs(b.values) > 0) & (d > r * (1 + 1e-12))):
        bad.append("b is not supported in B")
    nq = float(np.sum(b.weights * np.abs(b.values) ** q) ** (1 / q))
    if nq > ball.volume ** (1 / q - 1 / p) * (1 + tol):
        bad.append(f"||b||_q = {nq:.4g} exceeds |B|^(1/q-1/p)")
    l1 = float(np.sum(b.weights * np.abs(b.values)))
    exps = monomial_exponents(n, floor(s))
    mom = {e: float(np.sum(b.weights * b.values * np.prod((b.points - ball.x) ** np.array(e), axis=1))) for e in exps}
    if mode == "a":
        if not (lam * rho <= r * (1 + tol) and r <= rho * (1 + tol)):
            bad.append(f"mode (a) needs {lam:g} rho_B <= r_B <= rho_B")
    elif mode == "b":
        for e, v in mom.items():
            if abs(v) > tol * l1 * r ** sum(e):
                bad.append(f"moment {e} = {v:.3g} does not vanish")
    elif mode == "c":
        alpha = tuple(alpha)
        for e, v in mom.items():
            if e != alpha and abs(v) > tol * l1 * r ** sum(e):
                bad.append(f"moment {e} = {v:.3g} does not vanish")
        lim = ball.volume ** (1 - 1 / p) * (r / rho) ** (s - sum(alpha)) * r ** sum(alpha)
        if abs(mom.get(alpha, 0.0)) > lim * (1 + tol):
            bad.append(f"moment {alpha} exceeds its bound {lim:.3g}")
    else:
        raise ValueError(f"mode must be one of {AE_MODES}")
    return bad


def lemma_AE_check(b, ball, params, mode, s=1.0, lam=0.5, alpha=None, reach=16.0, count=24, tol=1e-9):
    """Far-field bound ``|exp(-tL) b(x)| <= C r_B^s |x - x_B|^{-(n+s)} |B|^{1-1/p}``.

    Samples ``x`` outside ``4B`` on rays along each axis (geometric
    distances from ``4 r_B`` to ``reach``) and ``t`` geometric on
    ``[1e-4, 10]``; the refinement doubles both densities.

    Parameters
    ----------
    b : GridFn
        Weighted samples of ``b`` on a quadrature of ``B``.
    mode : {'a', 'b', 'c'}

    Raises
    ------
    ValueError
        If the hypotheses of the chosen mode fail.
    """
    bad = _ae_hypothesis(b, ball, params, mode, s, lam, alpha, 1e-6 if mode == "a" else tol)
    if bad:
        raise ValueError("hypothesis validation failed: " + "; ".join(bad))
    n = ball.dimension
    r = ball.radius
    scale = ball.volume ** (1 - 1 / params.p) * r ** s

    def sampler(density):
        dist = np.geomspace(4 * r * (1 + 1e-9), reach, count * density)
        dirs = np.vstack([np.eye(n), -np.eye(n)])
        pts = (ball.x[None, None, :] + dist[None, :, None] * dirs[:, None, :]).reshape(-1, n)
        dd = np.tile(dist, len(dirs))
        times = np.geomspace(T_MIN, T_MAX, count * density)
        vals = np.abs(heat_gridfn(b, times, pts))  # (T, N)
        k = np.argmax(vals, axis=0)
        lhs = vals[k, np.arange(pts.shape[0])]
        rhs = scale * dd ** (-(n + s))
        cols = [f"x_{i + 1}" for i in range(n)] + ["t"]
        return cols, np.column_stack([pts, times[k]]), lhs, rhs

    return measure(
        f"AE({mode})",
        sampler,
        {"mode": mode, "s": s, "lambda": lam, "p": params.p, "q": params.q, "r_B": r, "x_B": list(ball.center)},
    )

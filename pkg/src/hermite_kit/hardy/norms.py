"""Finite-sample estimators of the Hermite-Lipschitz, bmo and Campanato norms.

Every estimator returns a :class:`NormEstimate` carrying the value at the
base sample family and at a refined family, so that the stability of a
sup-based estimate can be inspected.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import ceil, floor

import numpy as np
from scipy.interpolate import LinearNDInterpolator

from ..core.basis import BasisSpec, CoefVec
from ..core.functions import hermite_moments_1d, hermite_series_1d
from ..core.grid import GridFn, function_table, tensor_points
from ..core.ladder import critical_radius
from ..core.quadrature import composite_legendre
from ..spectral.admissible import DyadicBlock, build_admissible
from .balls import Ball, ball_grid
from .bump import LocalizedFunction


@dataclass
class NormEstimate:
    """Sup-based norm estimate with its refinement.

    Attributes
    ----------
    value : float
        Estimate on the base sample family.
    refined : float
        Estimate on the refined family (which contains more samples).
    parts : dict
        Per-level or per-condition contributions at base density.
    """

    name: str
    value: float
    refined: float
    parts: dict = field(default_factory=dict)

    def __float__(self):
        return float(self.value)

    @property
    def ratio(self):
        if self.value == 0:
            return 1.0 if self.refined == 0 else float("inf")
        return self.refined / self.value


# ---------------------------------------------------------------------------
# coefficients of non-band-limited inputs


def _box_grid(lo, hi, panels, order=16):
    axes, wax = [], []
    for a, b in zip(lo, hi):
        x, w = composite_legendre(a, b, panels, order)
        axes.append(x)
        wax.append(w)
    pts = tensor_points(axes)
    wts = np.ones(pts.shape[0])
    for m in np.meshgrid(*wax, indexing="ij"):
        wts = wts * m.ravel()
    return pts, wts


def project(f, degree):
    """Hermite coefficients of ``f`` up to ``degree``.

    ``f`` may be a CoefVec (truncated or zero-padded), a weighted GridFn
    (quadrature against its weights) or a :class:`LocalizedFunction`
    (composite Gauss-Legendre on its support box, resolving the
    oscillation of ``h_degree``).
    """
    if isinstance(f, CoefVec):
        basis = BasisSpec(f.basis.dimension, degree)
        vals = np.zeros(basis.count, dtype=f.values.dtype)
        m = min(basis.count, f.basis.count)
        vals[:m] = f.values[:m]
        return CoefVec(basis, vals)
    if isinstance(f, LocalizedFunction):
        n = f.dimension
        R = f.support_radius
        panels = max(32, int(ceil(2 * R * np.sqrt(2.0 * degree + 1) / np.pi)) + 1)
        lo = [c - R for c in f.x0]
        hi = [c + R for c in f.x0]
        pts, w = _box_grid(lo, hi, panels if n == 1 else min(panels, 64))
        f = GridFn(pts, w, f(pts))
    if isinstance(f, GridFn):
        if f.weights is None:
            raise ValueError("projection needs quadrature weights")
        basis = BasisSpec(f.dimension, degree)
        if f.dimension == 1:
            return CoefVec(basis, hermite_moments_1d(degree, f.points[:, 0], f.weights * f.values))
        return CoefVec(basis, function_table(basis, f.points) @ (f.weights * f.values))
    raise TypeError("expected a CoefVec, GridFn or LocalizedFunction")


def _support_box(f):
    if isinstance(f, tuple):
        return np.atleast_1d(np.asarray(f[0], dtype=float)), np.atleast_1d(np.asarray(f[1], dtype=float))
    if isinstance(f, LocalizedFunction):
        c = np.array(f.x0)
        return c - f.support_radius, c + f.support_radius
    if isinstance(f, GridFn):
        nz = np.abs(f.values) > 0
        pts = f.points[nz] if nz.any() else f.points
        return pts.min(axis=0), pts.max(axis=0)
    return None


def _eval_box(f, coef, margin):
    """Box outside which the band-limited pieces of ``f`` are negligible."""
    box = _support_box(f)
    n = coef.basis.dimension
    if box is not None:
        return box[0] - margin, box[1] + margin
    nz = np.nonzero(np.abs(coef.values) > 0)[0]
    K = int(coef.basis.orders[nz].max()) if nz.size else 0
    R = np.sqrt(2.0 * K + n) + 3.0
    return np.full(n, -R), np.full(n, R)


def _series(coef_values, basis, pts):
    if basis.dimension == 1:
        return hermite_series_1d(coef_values, pts[:, 0])
    out = np.zeros(np.shape(coef_values)[:-1] + (pts.shape[0],))
    step = max(64, int(4e6 // basis.count))
    for s in range(0, pts.shape[0], step):
        out[..., s : s + step] = coef_values @ function_table(basis, pts[s : s + step])
    return out


def _sup_block(f, coef, system, j, density, support=None):
    """``sup_x |phi_j(sqrt L) f(x)|`` on a uniform grid of spacing ``2^{-j}/(8 density)``.

    The grid covers the support of ``f`` with a margin of
    ``32 * 2^{-j}`` clipped to ``[1/4, 4]``, the reach of the block kernel.
    """
    n = coef.basis.dimension
    block = DyadicBlock(j, n)
    blo, bhi = block.order_range
    if bhi < blo:
        return 0.0
    basis = BasisSpec(n, bhi)
    w = system.spectral(j, basis.eigenvalues) * block.contains(basis.orders)
    c = coef.values[: basis.count] * w
    if not np.any(c):
        return 0.0
    margin = float(np.clip(32 * 2.0 ** -j, 0.25, 4.0))
    lo, hi = _eval_box(f if support is None else support, coef, margin)
    h = 2.0 ** (-j) / (8 * density)
    per_axis = [int(ceil((b - a) / h)) + 1 for a, b in zip(lo, hi)]
    if n > 1:
        per_axis = [min(m, 201 * density) for m in per_axis]
    pts = tensor_points([np.linspace(a, b, m) for a, b, m in zip(lo, hi, per_axis)])
    return float(np.max(np.abs(_series(c, basis, pts))))


def level_floor(f):
    """Level past which a localized input has passed its spectral peak.

    For a CoefVec, the first level beyond its top degree; otherwise
    ``4 + ceil(log2(1 + |x|))`` at the far edge of the support.
    """
    if isinstance(f, CoefVec):
        nz = np.nonzero(np.abs(f.values) > 0)[0]
        K = int(f.basis.orders[nz].max()) if nz.size else 0
        lam = 2 * K + f.basis.dimension
        return int(ceil(0.5 * np.log2(lam))) + 1
    box = _support_box(f)
    far = float(max(np.max(np.abs(box[0])), np.max(np.abs(box[1])))) if box is not None else 0.0
    return 4 + int(ceil(np.log2(1.0 + far)))


def lip_norm(f, s, j_max=None, system=None, family=None, j_cap=9, support=None):
    """``sup_{j >= 0} 2^{js} ||phi_j(sqrt L) f||_inf`` over computed levels.

    Parameters
    ----------
    s : float
        ``s = 0`` is routed to :func:`bmo_norm`.
    j_max : int, optional
        Last level. By default levels are added past :func:`level_floor`
        until one falls below half of the running maximum after the
        maximum has been passed (at most ``j_cap``).

    Notes
    -----
    The refined value recomputes the levels at doubled spatial density.
    """
    if s == 0:
        return bmo_norm(f, family)
    if s < 0:
        raise ValueError("s must be non-negative")
    system = build_admissible("partition") if system is None else system
    n = _dimension(f)
    parts, refined = {}, {}
    coef = None
    last = j_max if j_max is not None else j_cap
    floor_j = min(level_floor(f if support is None else support), j_cap)
    for j in range(last + 1):
        K = max(DyadicBlock(j, n).order_range[1], 0)
        if coef is None or coef.basis.degree < K:
            coef = project(f, K)
        parts[j] = 2.0 ** (j * s) * _sup_block(f, coef, system, j, 1, support)
        refined[j] = 2.0 ** (j * s) * _sup_block(f, coef, system, j, 2, support)
        peak = max(parts.values())
        done = j >= floor_j and j > max(parts, key=parts.get) and parts[j] < 0.5 * peak
        if j_max is None and (peak == 0 or done) and j >= floor_j:
            break
    value = max(parts.values())
    return NormEstimate(f"lip(s={s})", value, max(max(refined.values()), value), parts)


# ---------------------------------------------------------------------------
# ball families


@dataclass(frozen=True)
class BallFamily:
    """Centres on a uniform grid of ``[-R, R]^n``; radii on a geometric ladder.

    The ladder runs from ``r_max`` down by factors ``2^{-step}``; each centre
    uses the radii in ``[rho(c)/16, r_max]``.
    """

    R: float = 10.0
    centers: int = 41
    r_max: float = 4.0
    step: float = 0.5
    dimension: int = 1

    def doubled(self):
        return BallFamily(self.R, 2 * self.centers - 1, self.r_max, self.step / 2, self.dimension)

    def center_points(self):
        ax = np.linspace(-self.R, self.R, self.centers)
        return tensor_points([ax] * self.dimension)

    def ladder(self):
        r_min = critical_radius(np.full(self.dimension, self.R)) / 16
        k = int(floor(np.log2(self.r_max / r_min) / self.step)) + 1
        return self.r_max * 2.0 ** (-self.step * np.arange(k + 1))

    def balls(self):
        out = []
        lad = self.ladder()
        for c in self.center_points():
            rmin = critical_radius(c) / 16
            for r in lad[lad >= rmin * (1 - 1e-12)]:
                out.append(Ball(tuple(c), float(r)))
        return out


def _as_callable(f):
    if isinstance(f, CoefVec):
        return lambda x: f.values @ function_table(f.basis, x)
    if isinstance(f, GridFn):
        if f.dimension == 1:
            order = np.argsort(f.points[:, 0])
            xs, ys = f.points[order, 0], np.asarray(f.values)[order]
            return lambda x: np.interp(x[:, 0], xs, ys, left=0.0, right=0.0)
        interp = LinearNDInterpolator(f.points, f.values, fill_value=0.0)
        return lambda x: interp(x)
    if callable(f):
        return lambda x: np.asarray(f(x), dtype=float)
    raise TypeError("expected a CoefVec, GridFn or callable")


def _ball_nodes(ball):
    panels = max(4, int(ceil(8 * ball.radius)))
    g = ball_grid(ball, 0, panels=panels)
    return g.points, g.weights


def _bmo_parts(F, family):
    osc, avg = 0.0, 0.0
    for B in family.balls():
        pts, w = _ball_nodes(B)
        v = F(pts)
        vol = w.sum()
        mean = float(np.sum(w * v) / vol)
        osc = max(osc, float(np.sum(w * np.abs(v - mean)) / vol))
        if B.radius >= B.rho:
            avg = max(avg, float(np.sum(w * np.abs(v)) / vol))
    return osc, avg


def bmo_norm(f, family=None):
    """``max(sup_B avg|f - f_B|, sup_{r_B >= rho_B} avg|f|)`` over a ball family.

    The refined value uses :meth:`BallFamily.doubled`.
    """
    family = BallFamily(dimension=_dimension(f)) if family is None else family
    F = _as_callable(f)
    osc, avg = _bmo_parts(F, family)
    osc2, avg2 = _bmo_parts(F, family.doubled())
    return NormEstimate("bmo", max(osc, avg), max(osc2, avg2, osc, avg), {"oscillation": osc, "oversized": avg})


def _dimension(f):
    if isinstance(f, CoefVec):
        return f.basis.dimension
    if isinstance(f, (GridFn, LocalizedFunction)):
        return f.dimension
    return 1


def campanato_multiplier(r, eigenvalues, N):
    """``(1 - exp(-r^2 lambda))^N``, the coefficient action of ``(I - exp(-r^2 L))^N``."""
    return (-np.expm1(-(r * r) * np.asarray(eigenvalues, dtype=float))) ** N


def _campanato_sup(coef, alpha, N, family, lo, hi):
    n = coef.basis.dimension
    balls = family.balls()
    if n == 1:
        radii = np.unique([B.radius for B in balls])
        mult = np.stack([campanato_multiplier(r, coef.basis.eigenvalues, N) for r in radii]) * coef.values
        a = min(lo[0], -family.R) - family.r_max
        b = max(hi[0], family.R) + family.r_max
        h = min(0.01, np.pi / np.sqrt(2.0 * coef.basis.degree + 1) / 16)
        x = np.linspace(a, b, int(ceil((b - a) / h)) + 1)
        sq = hermite_series_1d(mult, x) ** 2
        dx = x[1] - x[0]
        cum = np.concatenate([np.zeros((radii.size, 1)), np.cumsum(0.5 * dx * (sq[:, 1:] + sq[:, :-1]), axis=1)], axis=1)
        best = 0.0
        ridx = {r: k for k, r in enumerate(radii)}
        for B in balls:
            k = ridx[B.radius]
            c = B.center[0]
            integral = np.interp(c + B.radius, x, cum[k]) - np.interp(c - B.radius, x, cum[k])
            mean = max(integral, 0.0) / (2 * B.radius)
            best = max(best, np.sqrt(mean) / B.volume ** alpha)
        return float(best)
    best = 0.0
    for B in balls:
        pts, w = _ball_nodes(B)
        vals = (campanato_multiplier(B.radius, coef.basis.eigenvalues, N) * coef.values) @ function_table(coef.basis, pts)
        mean = float(np.sum(w * vals ** 2) / w.sum())
        best = max(best, np.sqrt(mean) / B.volume ** alpha)
    return float(best)


def campanato_norm(f, alpha, N, family=None, degree=512):
    """``sup_B |B|^{-alpha} (avg_B |(I - exp(-r_B^2 L))^N f|^2)^{1/2}``.

    ``f`` is first expanded to ``degree`` (exact for a CoefVec of lower
    degree). The refined value uses :meth:`BallFamily.doubled`.

    Raises
    ------
    ValueError
        If ``N < 1 + floor(n alpha / 2)``.
    """
    n = _dimension(f)
    if N < 1 + floor(n * alpha / 2):
        raise ValueError(f"N = {N} must be at least 1 + floor(n alpha / 2) = {1 + floor(n * alpha / 2)}")
    family = BallFamily(dimension=n) if family is None else family
    K = f.basis.degree if isinstance(f, CoefVec) else degree
    coef = project(f, K)
    lo, hi = _eval_box(f, coef, margin=0.0)
    v = _campanato_sup(coef, alpha, N, family, lo, hi)
    v2 = _campanato_sup(coef, alpha, N, family.doubled(), lo, hi)
    return NormEstimate(f"campanato(alpha={alpha}, N={N})", v, max(v, v2))

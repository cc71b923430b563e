"""Balls, dyadic annuli, index bundles and annulus-adapted quadrature."""

from __future__ import annotations

from dataclasses import dataclass
from math import floor, gamma, pi

import numpy as np

from ..core.basis import BasisSpec
from ..core.grid import GridFn
from ..core.ladder import critical_radius
from ..core.quadrature import gauss_legendre

SMALL, MEDIUM, OVERSIZED = "small", "medium", "oversized"


def unit_ball_volume(n):
    return pi ** (n / 2) / gamma(n / 2 + 1)


@dataclass(frozen=True)
class Ball:
    """Ball ``B(x_B, r_B)`` with critical radius ``rho_B = rho(x_B)``."""

    center: tuple
    radius: float

    def __post_init__(self):
        c = tuple(float(v) for v in np.atleast_1d(self.center))
        if not self.radius > 0:
            raise ValueError("radius must be positive")
        object.__setattr__(self, "center", c)
        object.__setattr__(self, "radius", float(self.radius))

    @property
    def dimension(self):
        return len(self.center)

    @property
    def x(self):
        return np.array(self.center)

    @property
    def rho(self):
        return critical_radius(self.x)

    @property
    def regime(self):
        r, rho = self.radius, self.rho
        if r < rho / 8:
            return SMALL
        if r <= rho / 2:
            return MEDIUM
        return OVERSIZED

    @property
    def volume(self):
        return unit_ball_volume(self.dimension) * self.radius ** self.dimension

    def dilate(self, k):
        return Ball(self.center, self.radius * k)

    def annulus_volume(self, j):
        """``|U_j(B)|``: ``|B|`` for ``j = 0``, ``|2^j B| - |2^{j-1} B|`` otherwise."""
        if j == 0:
            return self.volume
        return self.volume * (2.0 ** (j * self.dimension)) * (1 - 2.0 ** (-self.dimension))

    def annulus_index(self, points):
        """Label ``j`` with ``2^{j-1} r < |x - x_B| <= 2^j r`` (``0`` inside ``B``)."""
        pts = np.asarray(points, dtype=float).reshape(-1, self.dimension)
        d = np.linalg.norm(pts - self.x, axis=1) / self.radius
        out = np.zeros(d.shape, dtype=np.int64)
        outside = d > 1
        out[outside] = np.ceil(np.log2(d[outside]) - 1e-13).astype(np.int64)
        return out


@dataclass(frozen=True)
class SpaceParams:
    """Index bundle ``(p, q, M, delta, omega, s, eps)``."""

    p: float = 1.0
    q: float = 2.0
    M: int = 0
    delta: float = 1.5
    omega: float = 0.5
    s: float = 0.0
    eps: float = 0.5

    def __post_init__(self):
        if not 0 < self.p <= 1:
            raise ValueError("p must lie in (0, 1]")
        if not self.q > 1:
            raise ValueError("q must exceed 1")
        if self.M < 0 or self.delta <= 0 or self.omega < 0 or self.s < 0:
            raise ValueError("M, omega, s must be non-negative and delta positive")
        if not 0 < self.eps <= 1:
            raise ValueError("eps must lie in (0, 1]")

    @property
    def floor_omega(self):
        return floor(self.omega)

    @property
    def omega_star(self):
        return self.omega - floor(self.omega)

    def delta_threshold(self, n):
        """Lower bound ``max{0, floor(omega) - n(1/p - 1)}`` for ``delta``."""
        return max(0.0, self.floor_omega - n * (1.0 / self.p - 1.0))

    def check_delta(self, n):
        thr = self.delta_threshold(n)
        if not self.delta > thr:
            raise ValueError(
                f"delta = {self.delta} violates delta > max(0, floor(omega) - n(1/p - 1)) = {thr:g}"
            )


@dataclass(frozen=True)
class BallGrid:
    """Quadrature adapted to the annuli ``U_0, ..., U_J`` of a ball.

    Attributes
    ----------
    points, weights : ndarray
    labels : ndarray of int
        Annulus index of each node.
    """

    ball: Ball
    J: int
    points: np.ndarray
    weights: np.ndarray
    labels: np.ndarray

    def gridfn(self, values):
        return GridFn(self.points, self.weights, values)

    def mask(self, j):
        return self.labels == j


def _radial_nodes(a, b, order, panels):
    x, w = gauss_legendre(order)
    edges = np.linspace(a, b, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    return (mid[:, None] + half[:, None] * x).ravel(), (half[:, None] * w).ravel()


def ball_grid(ball, J, order=16, panels=4, angular=48):
    """Gauss-Legendre quadrature on ``2^J B`` split along the annuli.

    In one dimension each annulus is two intervals; in two and three
    dimensions polar or spherical coordinates with Gauss-Legendre
    radii are used.
    """
    n = ball.dimension
    r, xb = ball.radius, ball.x
    pts, wts, labs = [], [], []
    for j in range(J + 1):
        lo = 0.0 if j == 0 else r * 2.0 ** (j - 1)
        hi = r * 2.0 ** j
        if n == 1:
            if j == 0:
                s, w = _radial_nodes(-hi, hi, order, 2 * panels)
            else:
                s1, w1 = _radial_nodes(lo, hi, order, panels)
                s, w = np.concatenate([-s1[::-1], s1]), np.concatenate([w1[::-1], w1])
            p = xb[None, :] + s[:, None]
        elif n == 2:
            rr, wr = _radial_nodes(lo, hi, order, panels)
            th = 2 * pi * np.arange(angular) / angular
            R, T = np.meshgrid(rr, th, indexing="ij")
            W = np.outer(wr * rr, np.full(angular, 2 * pi / angular))
            p = xb[None, :] + np.stack([(R * np.cos(T)).ravel(), (R * np.sin(T)).ravel()], -1)
            w = W.ravel()
        elif n == 3:
            rr, wr = _radial_nodes(lo, hi, order, panels)
            ct, wc = gauss_legendre(angular // 2)
            ph = 2 * pi * np.arange(angular) / angular
            R, C, P = np.meshgrid(rr, ct, ph, indexing="ij")
            S = np.sqrt(1 - C ** 2)
            W = (wr * rr ** 2)[:, None, None] * wc[None, :, None] * np.full(angular, 2 * pi / angular)[None, None, :]
            p = xb[None, :] + np.stack([(R * S * np.cos(P)).ravel(), (R * S * np.sin(P)).ravel(), (R * C).ravel()], -1)
            w = W.ravel()
        else:
            raise ValueError("ball quadrature supports dimensions 1 to 3")
        pts.append(p)
        wts.append(w)
        labs.append(np.full(w.size, j, dtype=np.int64))
    return BallGrid(ball, J, np.vstack(pts), np.concatenate(wts), np.concatenate(labs))


def monomial_exponents(n, degree):
    """Multi-indices ``|alpha| <= degree`` in graded lexicographic order."""
    return [tuple(int(v) for v in row) for row in BasisSpec(n, degree).indices]


def monomials(points, center, exponents, scale=1.0):
    """Matrix ``V[p, a] = ((x_p - center) / scale)^{alpha_a}``."""
    d = (np.asarray(points, dtype=float) - np.asarray(center)[None, :]) / scale
    return np.stack([np.prod(d ** np.array(a)[None, :], axis=1) for a in exponents], axis=1)

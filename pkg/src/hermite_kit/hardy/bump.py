"""The localized bump ``chi`` and the test functions ``g_{x0,alpha} = (x - x0)^alpha chi``."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..core.grid import GridFn
from ..core.ladder import critical_radius
from ..core.quadrature import gauss_legendre
from ..spectral.admissible import smooth_step


def psi(u):
    """Radial profile: 1 on ``[0, 1]``, 0 on ``[2, inf)``, C^∞."""
    return smooth_step(2.0 - np.asarray(u, dtype=float))


@dataclass(frozen=True)
class LocalizedFunction:
    """``(x - x0)^alpha psi(|x - x0| / rho(x0))`` as a callable with support data."""

    x0: tuple
    alpha: tuple

    @property
    def dimension(self):
        return len(self.x0)

    @property
    def scale(self):
        return critical_radius(np.array(self.x0))

    @property
    def support_radius(self):
        return 2.0 * self.scale

    def __call__(self, points):
        pts = np.asarray(points, dtype=float).reshape(-1, self.dimension)
        d = pts - np.array(self.x0)[None, :]
        chi = psi(np.linalg.norm(d, axis=1) / self.scale)
        poly = np.prod(d ** np.array(self.alpha)[None, :], axis=1)
        return poly * chi

    def grid(self, panels=64, order=16):
        """Composite Gauss-Legendre grid on the support box."""
        x, w = gauss_legendre(order)
        axes, wax = [], []
        for c in self.x0:
            a, b = c - self.support_radius, c + self.support_radius
            edges = np.linspace(a, b, panels + 1)
            half = 0.5 * np.diff(edges)
            mid = 0.5 * (edges[1:] + edges[:-1])
            axes.append((mid[:, None] + half[:, None] * x).ravel())
            wax.append((half[:, None] * w).ravel())
        mesh = np.meshgrid(*axes, indexing="ij")
        pts = np.stack([m.ravel() for m in mesh], -1)
        wts = np.ones(pts.shape[0])
        for m in np.meshgrid(*wax, indexing="ij"):
            wts = wts * m.ravel()
        return GridFn(pts, wts, self(pts))


def make_bump(x0):
    """``chi(x) = psi(|x - x0| / rho(x0))``: 1 on ``B(x0, rho)``, 0 off ``B(x0, 2 rho)``."""
    x0 = tuple(float(v) for v in np.atleast_1d(x0))
    return LocalizedFunction(x0, (0,) * len(x0))


def make_g(x0, alpha):
    """``g_{x0,alpha}(x) = (x - x0)^alpha chi(x)``."""
    x0 = tuple(float(v) for v in np.atleast_1d(x0))
    alpha = tuple(int(a) for a in np.atleast_1d(alpha))
    if len(alpha) != len(x0):
        raise ValueError("alpha and x0 dimensions differ")
    return LocalizedFunction(x0, alpha)

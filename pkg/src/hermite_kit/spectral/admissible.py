"""Smooth dyadic spectral cutoffs and the index blocks they live on."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from ..core.basis import BasisSpec

# Window on which an admissible function is bounded below.
LOWER_WINDOW = (2.0 ** -1.75, 2.0 ** -0.25)


def _e(u):
    u = np.asarray(u, dtype=float)
    out = np.zeros_like(u)
    pos = u > 0
    out[pos] = np.exp(-1.0 / u[pos])
    return out


def smooth_step(u):
    """C^∞ step: 0 for ``u <= 0``, 1 for ``u >= 1``."""
    a = _e(u)
    b = _e(1.0 - np.asarray(u, dtype=float))
    return a / (a + b)


def cutoff(lam):
    """``theta``: 1 on ``lam <= 1/2``, 0 on ``lam >= 1``, smooth between."""
    return smooth_step(2.0 * (1.0 - np.asarray(lam, dtype=float)))


def _partition_phi(lam):
    lam = np.asarray(lam, dtype=float)
    return cutoff(lam) - cutoff(2.0 * lam)


def _plain_phi(lam):
    # equal to 1 on the lower-bound window, supported in [1/4, 1]
    lam = np.asarray(lam, dtype=float)
    lo, hi = LOWER_WINDOW
    rise = smooth_step((lam - 0.25) / (lo - 0.25))
    fall = smooth_step((1.0 - lam) / (1.0 - hi))
    return rise * fall


@dataclass(frozen=True)
class AdmissibleSystem:
    """Dyadic family ``phi_j(lam) = phi(2^{-j} lam)`` with ``supp phi ⊆ [1/4, 1]``.

    Attributes
    ----------
    mode : {'partition', 'plain'}
        In partition mode ``sum_{j>=0} phi_j = 1`` on ``[1/2, inf)``.
    phi : callable
    """

    mode: str
    phi: Callable

    def __call__(self, lam):
        return self.phi(lam)

    def phi_j(self, j, lam):
        """``phi(2^{-j} lam)``; vanishes for ``lam < 2^{j-2}``."""
        return self.phi(np.ldexp(np.asarray(lam, dtype=float), -j))

    def spectral(self, j, eigenvalues):
        """``phi_j(sqrt(lambda))`` for an array of eigenvalues."""
        return self.phi_j(j, np.sqrt(np.asarray(eigenvalues, dtype=float)))

    def partial_sum(self, J, lam):
        """``sum_{j=0}^{J} phi_j(lam)``."""
        lam = np.asarray(lam, dtype=float)
        return sum(self.phi_j(j, lam) for j in range(J + 1))

    def lower_bound(self, samples=2001):
        """Minimum of ``phi`` over the lower-bound window (sampled)."""
        lam = np.linspace(*LOWER_WINDOW, samples)
        return float(np.min(self.phi(lam)))


def build_admissible(mode="partition"):
    """Construct an admissible system.

    Parameters
    ----------
    mode : {'partition', 'plain'}
        ``partition`` builds ``phi = theta - theta(2 .)`` so the dyadic
        sum telescopes; ``plain`` uses a single normalized bump.
    """
    if mode == "partition":
        return AdmissibleSystem("partition", _partition_phi)
    if mode == "plain":
        return AdmissibleSystem("plain", _plain_phi)
    raise ValueError(f"unknown admissible mode {mode!r}")


@dataclass(frozen=True)
class DyadicBlock:
    """Index set ``{xi : 4^{j-2}/2 - n/2 <= |xi| <= 4^j/2 - n/2}``."""

    j: int
    dimension: int

    @property
    def order_range(self):
        """Inclusive range ``(lo, hi)`` of admissible total degrees."""
        n = self.dimension
        lo = 0.5 * 4.0 ** (self.j - 2) - 0.5 * n
        hi = 0.5 * 4.0 ** self.j - 0.5 * n
        return max(0, int(np.ceil(lo))), int(np.floor(hi))

    def contains(self, orders):
        lo, hi = self.order_range
        orders = np.asarray(orders)
        return (orders >= lo) & (orders <= hi)

    def basis(self):
        """Smallest basis containing the block."""
        return BasisSpec(self.dimension, max(self.order_range[1], 0))

    def members(self):
        """Integer array of the block's multi-indices."""
        b = self.basis()
        lo, hi = self.order_range
        if hi < lo:
            return np.zeros((0, self.dimension), dtype=np.int64)
        return b.indices[b.block(lo).start : b.block(hi).stop]


def dyadic_block(j, dimension):
    return DyadicBlock(j, dimension)

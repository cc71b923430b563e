"""Gauss-Hermite rules with the Gaussian weight folded into the weights."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .functions import hermite_table


class QuadratureError(RuntimeError):
    """Root finding or validation of a quadrature rule failed."""


@dataclass(frozen=True)
class QuadratureRule:
    """One-dimensional rule for integrals ``∫ f(t) dt``.

    ``sum(w * h_j(nodes) * h_k(nodes)) == delta_jk`` for ``j, k <= precision``.
    """

    nodes: np.ndarray
    weights: np.ndarray
    precision: int

    def __post_init__(self):
        if self.nodes.shape != self.weights.shape:
            raise ValueError("node and weight counts differ")
        if np.any(self.weights <= 0):
            raise ValueError("weights must be positive")

    def integrate(self, values):
        return np.tensordot(values, self.weights, axes=([-1], [0]))


@lru_cache(maxsize=32)
def gauss_hermite_rule(m, validate=True):
    """Gauss-Hermite rule with ``m`` nodes for Hermite-function integrands.

    Nodes come from the Golub-Welsch eigenproblem for the Jacobi matrix,
    polished by Newton steps on ``h_m``. The weights are the Christoffel
    numbers ``1 / sum_{k<m} h_k(t_i)^2``, which already include the
    compensating ``exp(t_i^2)`` factor and never overflow.

    Parameters
    ----------
    m : int
        Number of nodes, ``m >= 1``.
    validate : bool
        Check the orthonormality residual of ``h_0..h_{m-1}`` (fail-fast).

    Raises
    ------
    QuadratureError
        If a Newton step fails to converge or validation fails.
    """
    if m < 1:
        raise ValueError("node count must be at least 1")
    if m == 1:
        nodes = np.zeros(1)
    else:
        off = np.sqrt(np.arange(1, m) / 2.0)
        nodes = eigh_tridiagonal(np.zeros(m), off, eigvals_only=True)
        nodes = _newton_polish(nodes, m)
    # enforce exact symmetry
    nodes = 0.5 * (nodes - nodes[::-1])
    tab = hermite_table(m - 1, nodes)
    weights = 1.0 / np.sum(tab * tab, axis=0)
    rule = QuadratureRule(nodes, weights, m - 1)
    if validate:
        gram = (tab * weights) @ tab.T
        res = np.max(np.abs(gram - np.eye(m)))
        if res > 1e-12 * max(1.0, np.sqrt(m)):
            raise QuadratureError(f"orthonormality residual {res:.3e} for m={m}")
    return rule


def _newton_polish(nodes, m, iters=8):
    t = nodes.copy()
    for _ in range(iters):
        tab = hermite_table(m, t)
        hm = tab[m]
        # h_m' = sqrt(2m) h_{m-1} - t h_m
        dh = np.sqrt(2.0 * m) * tab[m - 1] - t * hm
        step = hm / dh
        t = t - step
        if np.max(np.abs(step)) < 1e-15 * max(1.0, np.max(np.abs(t))):
            return t
    if np.max(np.abs(step)) > 1e-10 * max(1.0, np.max(np.abs(t))):
        bad = int(np.argmax(np.abs(step)))
        raise QuadratureError(f"Newton refinement did not converge at node index {bad}")
    return t


def default_node_count(K):
    """Default node count ``2K + 33`` for bases of maximal degree ``K``."""
    return 2 * K + 33


@lru_cache(maxsize=64)
def gauss_legendre(m):
    """Gauss-Legendre nodes and weights on ``[-1, 1]``."""
    return np.polynomial.legendre.leggauss(m)


def composite_legendre(a, b, panels, order=16):
    """Composite Gauss-Legendre nodes and weights on ``[a, b]``."""
    x, w = gauss_legendre(order)
    edges = np.linspace(a, b, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights

"""Empirical-constant records for inequalities of the form LHS <= C * RHS."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

REFINEMENT_LIMIT = 1.1


@dataclass
class BoundReport:
    """Outcome of an empirical-constant measurement.

    Attributes
    ----------
    name : str
    params : dict
        Full parameter tuple of the estimate.
    samples : int
        Number of samples at base density.
    constant : float
        ``sup LHS / RHS`` at base density.
    refined : float
        The same sup at doubled density.
    worst : dict
        Sample coordinates where the base-density sup is attained.
    columns : list of str
        Names of the sample coordinates in ``table``.
    table : ndarray
        Rows ``sample..., lhs, rhs, ratio`` at base density.
    """

    name: str
    params: dict
    samples: int
    constant: float
    refined: float
    worst: dict = field(default_factory=dict)
    columns: list = field(default_factory=list)
    table: np.ndarray = field(default=None, repr=False)
    limit: float = REFINEMENT_LIMIT

    @property
    def ratio(self):
        """``refined / constant``; 1 when both vanish."""
        if self.constant == 0:
            return 1.0 if self.refined == 0 else float("inf")
        return self.refined / self.constant

    @property
    def finite(self):
        return bool(np.isfinite(self.constant) and np.isfinite(self.refined))

    @property
    def passed(self):
        return self.finite and self.ratio <= self.limit

    def summary(self):
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name}: C={self.constant:.6g} refined={self.refined:.6g} ratio={self.ratio:.4f}"


def measure(name, sampler, params=None, limit=REFINEMENT_LIMIT):
    """Run ``sampler`` at densities 1 and 2 and build a :class:`BoundReport`.

    Parameters
    ----------
    sampler : callable
        ``sampler(density) -> (columns, samples, lhs, rhs)`` with
        ``samples`` of shape ``(S, len(columns))``. Samples with
        ``rhs <= 0`` are rejected.
    """
    out = []
    for density in (1, 2):
        cols, pts, lhs, rhs = sampler(density)
        lhs = np.abs(np.asarray(lhs, dtype=float)).ravel()
        rhs = np.asarray(rhs, dtype=float).ravel()
        pts = np.asarray(pts, dtype=float).reshape(lhs.size, -1)
        if np.any(rhs <= 0):
            raise ValueError(f"{name}: right-hand side must be positive on the sample domain")
        ratio = lhs / rhs
        out.append((cols, pts, lhs, rhs, ratio))
    cols, pts, lhs, rhs, ratio = out[0]
    C = float(np.max(ratio)) if ratio.size else 0.0
    Cr = float(np.max(out[1][4])) if out[1][4].size else 0.0
    k = int(np.argmax(ratio)) if ratio.size else 0
    worst = {c: float(v) for c, v in zip(cols, pts[k])} if ratio.size else {}
    table = np.column_stack([pts, lhs, rhs, ratio]) if ratio.size else np.zeros((0, len(cols) + 3))
    return BoundReport(
        name=name,
        params=dict(params or {}),
        samples=int(ratio.size),
        constant=C,
        refined=Cr,
        worst=worst,
        columns=list(cols),
        table=table,
        limit=limit,
    )

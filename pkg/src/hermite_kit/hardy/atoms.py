"""Atoms and molecules: generators and condition-by-condition validation."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .balls import SMALL, Ball, SpaceParams, ball_grid, monomial_exponents, monomials

TOL = 1e-9


@dataclass
class Condition:
    """One measured condition: ``measured <= bound`` (relative slack ``TOL``)."""

    name: str
    measured: float
    bound: float
    required: bool = True

    @property
    def passed(self):
        return (not self.required) or self.measured <= self.bound * (1 + TOL) + 1e-300

    @property
    def attained(self):
        """``measured / bound`` (the constant the data attains)."""
        return self.measured / self.bound if self.bound > 0 else float("inf") if self.measured > 0 else 0.0


@dataclass
class ValidationReport:
    kind: str
    conditions: list = field(default_factory=list)

    @property
    def passed(self):
        return all(c.passed for c in self.conditions)

    def __getitem__(self, name):
        for c in self.conditions:
            if c.name == name:
                return c
        raise KeyError(name)

    def summary(self):
        lines = [f"{self.kind}: {'valid' if self.passed else 'INVALID'}"]
        for c in self.conditions:
            flag = "ok" if c.passed else ("--" if not c.required else "FAIL")
            lines.append(f"  [{flag}] {c.name}: {c.measured:.4g} <= {c.bound:.4g}")
        return "\n".join(lines)


@dataclass
class Molecule:
    """A function given by a callable, with its ball and index bundle."""

    func: Callable
    ball: Ball
    params: SpaceParams
    name: str = "molecule"
    scale: float = 1.0

    def __call__(self, points):
        return self.scale * np.asarray(self.func(np.asarray(points, dtype=float).reshape(-1, self.ball.dimension)))

    def sample(self, J, **kw):
        """GridFn on the annulus quadrature of ``2^J B``, with annulus labels."""
        g = ball_grid(self.ball, J, **kw)
        return g, g.gridfn(self(g.points))


def _moment(f, center, alpha):
    d = f.points - np.asarray(center)[None, :]
    return float(f.integrate(np.prod(d ** np.array(alpha)[None, :], axis=1) * f.values))


def _lq(values, weights, q):
    if np.isinf(q):
        return float(np.max(np.abs(values))) if values.size else 0.0
    return float(np.sum(weights * np.abs(values) ** q) ** (1.0 / q))


def validate_atom(a, ball, params):
    """Measure the atom conditions for samples ``a`` (a GridFn).

    (i) ``r_B <= rho_B / 2``; (ii) support in ``B``; (iii) ``||a||_q <= |B|^{1/q-1/p}``;
    (iv) in the small regime, ``∫ x^alpha a = 0`` for ``|alpha| <= M``,
    measured as centred moments ``∫ (x - x_B)^alpha a`` (an equivalent
    family) relative to ``||a||_1 r_B^{|alpha|}``.
    """
    p, q, M = params.p, params.q, params.M
    rep = ValidationReport("atom")
    rep.conditions.append(Condition("(i) r_B <= rho_B/2", ball.radius, ball.rho / 2))
    d = np.linalg.norm(a.points - ball.x[None, :], axis=1)
    nz = np.abs(a.values) > 0
    reach = float(d[nz].max()) if nz.any() else 0.0
    rep.conditions.append(Condition("(ii) supp a in B", reach, ball.radius))
    rep.conditions.append(Condition("(iii) ||a||_q", _lq(a.values, a.weights, q), ball.volume ** (1 / q - 1 / p)))
    small = ball.regime == SMALL
    scale = _lq(a.values, a.weights, 1.0)
    for alpha in monomial_exponents(ball.dimension, M):
        mom = abs(_moment(a, ball.x, alpha))
        size = scale * ball.radius ** sum(alpha)
        rep.conditions.append(Condition(f"(iv) |∫(x-x_B)^{alpha} a|", mom, TOL * max(size, 1e-300), required=small))
    return rep


def validate_molecule(m, ball, params, J=None, grid=None):
    """Measure the molecule conditions.

    (ii) ``||m||_{L^q(U_j)} <= 2^{-j delta} |2^j B|^{1/q-1/p}`` for ``j <= J``;
    (iii) in the small regime ``|∫(x-x_B)^alpha m| <= |B|^{1-1/p} r_B^{|alpha|} (r_B/rho_B)^{omega-|alpha|}``
    for ``|alpha| <= floor(omega)``.

    Parameters
    ----------
    m : Molecule or GridFn
        A GridFn must come with ``grid`` (a BallGrid) to identify annuli.
    """
    p, q, delta, omega = params.p, params.q, params.delta, params.omega
    if isinstance(m, Molecule):
        J = 8 if J is None else J
        grid, f = m.sample(J)
    else:
        f = m
        if grid is None:
            raise ValueError("a BallGrid is required for sampled molecules")
        J = grid.J if J is None else J
    rep = ValidationReport("molecule")
    labels = ball.annulus_index(f.points)
    for j in range(J + 1):
        mask = labels == j
        if not mask.any():
            raise ValueError(f"insufficient grid coverage: annulus U_{j} has no nodes")
        val = _lq(f.values[mask], f.weights[mask], q)
        bound = 2.0 ** (-j * delta) * ball.dilate(2 ** j).volume ** (1 / q - 1 / p)
        rep.conditions.append(Condition(f"(ii) ||m||_q on U_{j}", val, bound))
    small = ball.regime == SMALL
    for alpha in monomial_exponents(ball.dimension, params.floor_omega):
        mom = abs(_moment(f, ball.x, alpha))
        k = sum(alpha)
        bound = ball.volume ** (1 - 1 / p) * ball.radius ** k * (ball.radius / ball.rho) ** (omega - k)
        rep.conditions.append(Condition(f"(iii) |∫(x-x_B)^{alpha} m|", mom, bound, required=small))
    return rep


# ---------------------------------------------------------------------------
# generators


def indicator_atom(ball, params):
    """``|B|^{-1/p} 1_B``."""
    c = ball.volume ** (-1.0 / params.p)
    return Molecule(lambda x: c * (np.linalg.norm(x - ball.x[None, :], axis=1) <= ball.radius), ball, params, "indicator")


def antisymmetric_atom(ball, params):
    """``|B|^{-1/p} (1_{B, left} - 1_{B, right})`` split along the first axis."""
    c = ball.volume ** (-1.0 / params.p)

    def f(x):
        inside = np.linalg.norm(x - ball.x[None, :], axis=1) <= ball.radius
        return c * inside * np.where(x[:, 0] < ball.x[0], 1.0, -1.0)

    return Molecule(f, ball, params, "antisymmetric")


def projected_atom(ball, params, profile=None, order=24):
    """Smooth atom with vanishing moments up to ``M``.

    A profile on ``B`` (default ``cos(3u_1) + u_1^2``, ``u = (x - x_B)/r_B``)
    minus its projection onto polynomials of degree ``<= M``, scaled so
    that ``||a||_q = |B|^{1/q-1/p}`` on the reference quadrature.
    """
    n = ball.dimension
    prof = profile or (lambda u: np.cos(3 * u[:, 0]) + u[:, 0] ** 2 + 0.5 * u[:, -1])
    g = ball_grid(ball, 0, order=order)
    exps = monomial_exponents(n, params.M)
    V = monomials(g.points, ball.x, exps, ball.radius)
    G = (V * g.weights[:, None]).T @ V
    rhs = (V * g.weights[:, None]).T @ prof((g.points - ball.x) / ball.radius)
    coef = np.linalg.solve(G, rhs)
    norm = _lq(prof((g.points - ball.x) / ball.radius) - V @ coef, g.weights, params.q)
    c = ball.volume ** (1 / params.q - 1 / params.p) / norm

    def f(x):
        u = (x - ball.x[None, :]) / ball.radius
        inside = np.linalg.norm(u, axis=1) <= 1
        Vx = monomials(x, ball.x, exps, ball.radius)
        return c * inside * (prof(u) - Vx @ coef)

    return Molecule(f, ball, params, f"projected(M={params.M})")


SYNTHETIC = {
    # (x - x_B) exp(-((x - x_B) / 4r)^2)
    "odd-gauss": lambda u: u[:, 0] * np.exp(-(u[:, 0] / 4.0) ** 2),
    # (1 - 2v^2) exp(-v^2), v = (x - x_B)/(2r): zero mean
    "mexican-hat": lambda u: (1 - 2 * (u[:, 0] / 2) ** 2) * np.exp(-((u[:, 0] / 2) ** 2)),
    # no moment cancellation at all
    "skew-gauss": lambda u: (1 + u[:, 0]) * np.exp(-((u[:, 0] / 3) ** 2)),
}


def synthetic_molecule(kind, ball, params, J=8, margin=0.5):
    """Scaled profile that satisfies the molecule conditions with the given margin.

    The profile is a function of ``u = (x - x_B) / r_B``; the scale is the
    largest for which every measured condition holds, times ``margin``.
    """
    try:
        prof = SYNTHETIC[kind]
    except KeyError:
        raise KeyError(f"unknown molecule {kind!r}; available: {', '.join(sorted(SYNTHETIC))}") from None
    base = Molecule(lambda x: prof((x - ball.x[None, :]) / ball.radius), ball, params, kind)
    rep = validate_molecule(base, ball, params, J=J)
    worst = max(c.attained for c in rep.conditions if c.required)
    base.scale = margin / worst
    return base


__all__ = [
    "Condition",
    "Molecule",
    "SYNTHETIC",
    "ValidationReport",
    "antisymmetric_atom",
    "indicator_atom",
    "projected_atom",
    "synthetic_molecule",
    "validate_atom",
    "validate_molecule",
]

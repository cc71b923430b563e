"""Hermite pseudo-multipliers ``sigma(x, L)``, their kernels and symbol classes."""

from __future__ import annotations

from itertools import product
from math import comb

import numpy as np

from ..core.basis import BasisSpec, CoefVec
from ..core.grid import GridFn, function_table, hermite_grid
from ..reports import measure
from .admissible import AdmissibleSystem, DyadicBlock, build_admissible, cutoff
from .kernels import KernelEvaluator, as_points, series_kernel

# Central-difference stencils (offsets, weights) for orders 0..2.
_STENCILS = {
    0: ((0,), (1.0,)),
    1: ((-1, 1), (-0.5, 0.5)),
    2: ((-1, 0, 1), (1.0, -2.0, 1.0)),
}


def _multi_range(orders):
    return product(*(range(o + 1) for o in orders))


def symbol_dx(sigma, x, xi, nu):
    """``∂_x^nu sigma(x, xi)`` as an ``(Nx, P)`` array.

    Uses the symbol's analytic derivative when supplied, otherwise
    central differences with step ``1e-4 * max(1, |x|)``.
    """
    x = np.asarray(x, dtype=float)
    nu = tuple(int(v) for v in nu)
    if sigma.dx is not None:
        return sigma.dx(x, np.asarray(xi), nu)
    if sum(nu) == 0:
        return sigma(x, xi)
    if max(nu) > 2:
        raise ValueError("numerical symbol derivatives are limited to order 2 per axis")
    h = 1e-4 * np.maximum(1.0, np.linalg.norm(x, axis=1))
    out = 0.0
    stencils = [_STENCILS[o] for o in nu]
    for combo in product(*(range(len(s[0])) for s in stencils)):
        shift = np.array([stencils[i][0][c] for i, c in enumerate(combo)], dtype=float)
        weight = np.prod([stencils[i][1][c] for i, c in enumerate(combo)])
        out = out + weight * sigma(x + h[:, None] * shift[None, :], xi)
    return out / h[:, None] ** sum(nu)


def forward_difference(sigma, x, xi, kappa):
    """Exact forward difference ``Delta_xi^kappa sigma(x, xi)``."""
    xi = np.asarray(xi, dtype=np.int64)
    kappa = tuple(int(k) for k in kappa)
    out = 0.0
    for r in _multi_range(kappa):
        sign = (-1) ** (sum(kappa) - sum(r))
        c = np.prod([comb(k, ri) for k, ri in zip(kappa, r)])
        out = out + sign * c * sigma(x, xi + np.array(r)[None, :])
    return out


def _kernel_coef(sigma, X, basis, weights=None, nu=None):
    """``sigma`` (or its x-derivative) on ``X x basis``, times spectral weights."""
    if sigma.x_independent and (nu is None or sum(nu) == 0):
        c = np.asarray(sigma.spectral(basis.eigenvalues))
        c = c if weights is None else c * weights
        return c
    nu = (0,) * basis.dimension if nu is None else nu
    c = symbol_dx(sigma, X, basis.indices, nu)
    return c if weights is None else c * weights[None, :]


def _assemble(sigma, basis, weights, x, y, dx, dy, table):
    n = basis.dimension
    X = as_points(x, n)
    dx = (0,) * n if dx is None else ((int(dx),) if np.isscalar(dx) else tuple(dx))
    if sigma.x_independent:
        coef = _kernel_coef(sigma, X, basis, weights)
        return series_kernel(basis, coef, X, y, dx, dy, table=table)
    total = 0.0
    for nu in _multi_range(dx):
        c = np.prod([comb(g, v) for g, v in zip(dx, nu)])
        coef = _kernel_coef(sigma, X, basis, weights, nu)
        rest = tuple(g - v for g, v in zip(dx, nu))
        total = total + c * series_kernel(basis, coef, X, y, rest, dy, table=table)
    return total


def pseudo_apply(sigma, c, points):
    """``sigma(x, L) f(x) = sum_xi sigma(x, xi) c_xi h_xi(x)`` at ``points``."""
    if isinstance(points, GridFn):
        pts, w, prec = points.points, points.weights, points.precision
    else:
        pts, w, prec = as_points(points, c.basis.dimension), None, None
    H = function_table(c.basis, pts)
    if sigma.x_independent:
        vals = (np.asarray(sigma.spectral(c.basis.eigenvalues)) * c.values) @ H
    else:
        S = sigma(pts, c.basis.indices)
        vals = np.einsum("ip,p,pi->i", S, c.values, H)
    return GridFn(pts, w, vals, prec)


def smooth_level_degree(level, dimension):
    """Largest degree with ``theta(2^{-level} sqrt(lambda)) != 0``."""
    return max(0, (4 ** level - dimension) // 2)


def smooth_weights(basis, level):
    """``theta(2^{-level} sqrt(lambda_xi))``: the partition sum over ``j <= level``."""
    return cutoff(np.ldexp(np.sqrt(basis.eigenvalues), -level))


def pseudo_kernel(sigma, x, y, degree=None, level=None, dx=None, dy=None, table=False, dimension=None):
    """Kernel ``K(x, y) = sum_xi sigma(x, xi) h_xi(x) h_xi(y)``, truncated.

    Give either ``degree`` (sharp truncation ``|xi| <= degree``) or
    ``level`` (smooth truncation by the partition sum up to ``level``).
    """
    n = as_points(x, dimension).shape[1]
    if (degree is None) == (level is None):
        raise ValueError("give exactly one of degree or level")
    if level is not None:
        basis = BasisSpec(n, smooth_level_degree(level, n))
        weights = smooth_weights(basis, level)
    else:
        basis = BasisSpec(n, degree)
        weights = None
    return _assemble(sigma, basis, weights, x, y, dx, dy, table)


def pseudo_kernel_piece(sigma, j, x, y, system=None, dx=None, dy=None, table=False, dimension=None):
    """``K_j(x, y) = sum_{xi in I_j} sigma(x, xi) phi_j(sqrt(lambda_xi)) h_xi(x) h_xi(y)``."""
    system = build_admissible("partition") if system is None else system
    n = as_points(x, dimension).shape[1]
    block = DyadicBlock(j, n)
    basis = block.basis()
    weights = system.spectral(j, basis.eigenvalues) * block.contains(basis.orders)
    return _assemble(sigma, basis, weights, x, y, dx, dy, table)


def pseudo_evaluator(sigma, dimension=1, degree=None, level=None):
    if level is not None:
        K = smooth_level_degree(level, dimension)
    else:
        K = degree

    def ev(x, y, dx, dy, table):
        return pseudo_kernel(sigma, x, y, degree=degree, level=level, dx=dx, dy=dy, table=table, dimension=dimension)

    return KernelEvaluator(ev, dimension, K, name=f"pseudo[{sigma.name}]")


def piece_evaluator(sigma, j, dimension=1, system=None):
    block = DyadicBlock(j, dimension)

    def ev(x, y, dx, dy, table):
        return pseudo_kernel_piece(sigma, j, x, y, system, dx, dy, table, dimension)

    return KernelEvaluator(ev, dimension, block.order_range[1], name=f"pseudo-piece[{sigma.name}, j={j}]")


def pseudo_matrix(sigma, basis, nodes=None):
    """Matrix ``M[eta, xi] = <sigma(., xi) h_xi, h_eta>`` on a Gauss-Hermite grid."""

    grid = hermite_grid(basis.degree, basis.dimension, nodes=nodes)
    H = function_table(basis, grid.points)
    if sigma.x_independent:
        return np.diag(np.asarray(sigma.spectral(basis.eigenvalues)))
    S = sigma(grid.points, basis.indices)  # (Np, P)
    return (H * grid.weights) @ (S.T * H).T


def symbol_class_check(sigma, x_lo=-6.0, x_hi=6.0, x_count=41, xi_max=64, kappa_max=None, nu_max=None, dimension=1):
    """Empirical membership test for the class ``S^{m,K,N}_{rho,delta}``.

    Measures ``sup |∂_x^nu Delta_xi^kappa sigma| / <xi>^{m/2 + delta|nu|/2 - rho|kappa|}``
    over ``|kappa| <= K``, ``|nu| <= N`` with ``<xi> = 1 + |xi|``. The
    refined pass doubles the x-sample density and the range of ``xi``.
    """
    n = dimension
    Kc = sigma.K if kappa_max is None else kappa_max
    Nc = sigma.N if nu_max is None else nu_max
    kappas = [k for k in product(range(Kc + 1), repeat=n) if sum(k) <= Kc]
    nus = [v for v in product(range(Nc + 1), repeat=n) if sum(v) <= Nc]

    def sampler(density):
        xs = np.linspace(x_lo, x_hi, (x_count - 1) * density + 1)
        X = np.stack(np.meshgrid(*([xs] * n), indexing="ij"), -1).reshape(-1, n)
        xi = BasisSpec(n, xi_max * density).indices
        weight = 1.0 + xi.sum(axis=1)
        rows, lhs, rhs = [], [], []
        for kappa in kappas:
            for nu in nus:
                if sum(nu) == 0:
                    val = forward_difference(sigma, X, xi, kappa)
                else:
                    sym = _DerivedSymbol(sigma, nu)
                    val = forward_difference(sym, X, xi, kappa)
                expo = sigma.m / 2 + sigma.delta * sum(nu) / 2 - sigma.rho * sum(kappa)
                r = np.broadcast_to(weight[None, :] ** expo, val.shape)
                XX = np.repeat(X, xi.shape[0], axis=0)
                II = np.tile(xi, (X.shape[0], 1))
                meta = np.tile(np.array(list(kappa) + list(nu), dtype=float), (XX.shape[0], 1))
                rows.append(np.hstack([XX, II, meta]))
                lhs.append(np.abs(val).ravel())
                rhs.append(r.ravel())
        cols = [f"x_{i + 1}" for i in range(n)] + [f"xi_{i + 1}" for i in range(n)]
        cols += [f"kappa_{i + 1}" for i in range(n)] + [f"nu_{i + 1}" for i in range(n)]
        return cols, np.vstack(rows), np.concatenate(lhs), np.concatenate(rhs)

    params = {"symbol": sigma.name, "m": sigma.m, "K": Kc, "N": Nc, "rho": sigma.rho, "delta": sigma.delta}
    return measure(f"symbol-class[{sigma.name}]", sampler, params)


class _DerivedSymbol:
    """``∂_x^nu sigma`` viewed as a symbol (for differences in ``xi``)."""

    def __init__(self, sigma, nu):
        self.sigma = sigma
        self.nu = nu

    def __call__(self, x, xi):
        return symbol_dx(self.sigma, x, xi, self.nu)


def multiplier_block(system: AdmissibleSystem, j, c: CoefVec) -> CoefVec:
    """``phi_j(sqrt(L)) f`` in coefficient space."""
    return CoefVec(c.basis, c.values * system.spectral(j, c.basis.eigenvalues))

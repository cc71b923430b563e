"""Hermite Riesz transforms ``R^alpha = A^alpha L^{-|alpha|/2}`` and their kernels.

``A^alpha`` is a ladder word: on axis ``i`` it applies ``A_i`` (creation)
or ``A*_i`` (annihilation) ``alpha_i`` times, so that
``A^alpha h_xi = a_alpha(xi) h_{xi + alpha~}`` with signed shift ``alpha~``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core.basis import BasisSpec, CoefVec, reindex
from .core.ladder import ANNIHILATION, CREATION, apply_L, ladder_apply, normalize_letter
from .hardy.bump import make_g
from .hardy.norms import level_floor, lip_norm, project
from .reports import BoundReport
from .spectral.admissible import DyadicBlock, build_admissible
from .spectral.kernels import KernelEvaluator, as_points, series_kernel
from .spectral.mehler import subordinated_kernel
from .spectral.pseudo import smooth_level_degree, smooth_weights


class DiagonalProximityError(ValueError):
    """Kernel evaluation requested too close to the diagonal for the truncation."""


@dataclass(frozen=True)
class LadderWord:
    """Per-axis ladder letters with exponents.

    Parameters
    ----------
    alpha : tuple of int
        Exponents ``alpha_i >= 0``.
    letters : tuple of str
        ``'A'`` or ``'A*'`` per axis.
    """

    alpha: tuple
    letters: tuple

    def __post_init__(self):
        alpha = tuple(int(a) for a in self.alpha)
        letters = tuple(normalize_letter(s) for s in self.letters)
        if len(alpha) != len(letters):
            raise ValueError("alpha and letters must have one entry per axis")
        if any(a < 0 for a in alpha):
            raise ValueError("exponents must be non-negative")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "letters", letters)

    @classmethod
    def parse(cls, alpha, word):
        """Parse CLI text such as ``alpha="1,2"``, ``word="A,AStar"``."""
        a = [int(v) for v in str(alpha).split(",") if v.strip()]
        w = [v.strip() for v in str(word).split(",") if v.strip()]
        if len(w) == 1 and len(a) > 1:
            w = w * len(a)
        return cls(tuple(a), tuple(w))

    @property
    def dimension(self):
        return len(self.alpha)

    @property
    def order(self):
        return sum(self.alpha)

    @property
    def shift(self):
        """Signed shift ``alpha~``: ``+alpha_i`` for ``A``, ``-alpha_i`` for ``A*``."""
        return np.array(
            [a if s == CREATION else -a for a, s in zip(self.alpha, self.letters)], dtype=np.int64
        )

    def adjoint(self):
        flip = {CREATION: ANNIHILATION, ANNIHILATION: CREATION}
        return LadderWord(self.alpha, tuple(flip[s] for s in self.letters))

    def coefficient(self, xi):
        """``a_alpha(xi)`` for an ``(P, n)`` index array; zero if an index would go negative."""
        xi = np.atleast_2d(np.asarray(xi, dtype=float))
        out = np.ones(xi.shape[0])
        for i, (a, s) in enumerate(zip(self.alpha, self.letters)):
            for r in range(a):
                if s == CREATION:
                    out = out * np.sqrt(2.0 * (xi[:, i] + r) + 2.0)
                else:
                    out = out * np.sqrt(np.clip(2.0 * (xi[:, i] - r), 0.0, None))
        return out

    def __str__(self):
        return ",".join(f"{s}^{a}" for a, s in zip(self.alpha, self.letters))


@dataclass(frozen=True)
class RieszOp:
    """``R^alpha`` with symbol ``sigma_alpha(xi) = (2|xi| + n)^{-|alpha|/2}``."""

    word: LadderWord

    @property
    def dimension(self):
        return self.word.dimension

    @property
    def order(self):
        return self.word.order

    def symbol(self, lam):
        return np.asarray(lam, dtype=float) ** (-self.order / 2.0)

    def multiplier(self, basis):
        """``sigma_alpha(xi) a_alpha(xi)`` on the basis enumeration."""
        return self.symbol(basis.eigenvalues) * self.word.coefficient(basis.indices)

    def __str__(self):
        return f"R[{self.word}]"


def first_order(k, sign, dimension=1):
    """First-order transform on axis ``k``.

    ``sign='-'`` gives ``A_k L^{-1/2}``; ``sign='+'`` gives ``A*_k L^{-1/2}``.
    """
    if not 0 <= k < dimension:
        raise ValueError(f"axis {k} out of range for dimension {dimension}")
    letter = {"-": CREATION, "+": ANNIHILATION}[sign]
    alpha = tuple(1 if i == k else 0 for i in range(dimension))
    letters = tuple(letter for _ in range(dimension))
    return RieszOp(LadderWord(alpha, letters))


def riesz_apply(op, c):
    """Exact coefficient map of ``R^alpha``: ``apply_L(-|alpha|/2)`` then the ladder word."""
    if c.basis.dimension != op.dimension:
        raise ValueError("operator and coefficient dimensions differ")
    out = apply_L(c, -op.order / 2.0)
    for i, (a, s) in enumerate(zip(op.word.alpha, op.word.letters)):
        for _ in range(a):
            out = ladder_apply(s, i, out)
    return out


def riesz_adjoint_apply(op, c):
    """``(R^alpha)^* c``: the adjoint ladder word, then ``apply_L(-|alpha|/2)``."""
    out = c
    for i, (a, s) in enumerate(zip(op.word.alpha, op.word.adjoint().letters)):
        for _ in range(a):
            out = ladder_apply(s, i, out)
    return apply_L(out, -op.order / 2.0)


def min_distance(level, constant=64.0):
    """Smallest ``|x - y|`` resolved by the smooth truncation at ``level``."""
    return constant * 2.0 ** (-level)


def _check_distance(X, Y, dmin, table, hint="raise the level"):
    if dmin <= 0:
        return
    if table:
        d = np.linalg.norm(X[:, None, :] - Y[None, :, :], axis=-1)
    else:
        d = np.linalg.norm(X - Y, axis=-1)
    if np.any(d < dmin):
        raise DiagonalProximityError(
            f"|x-y| = {float(np.min(d)):.3g} below the resolvable threshold {dmin:.3g}; {hint}"
        )


def _riesz_series(op, basis, weights, x, y, dx, dy, table):
    coef = op.multiplier(basis)
    if weights is not None:
        coef = coef * weights
    return series_kernel(basis, coef, x, y, dx, dy, x_shift=op.word.shift, table=table)


def riesz_kernel(op, x, y, level=None, degree=None, dx=None, dy=None, table=False, diagnostic=False, check=True):
    """Kernel ``sum_xi sigma_alpha(xi) A^alpha h_xi(x) h_xi(y)``, truncated.

    Parameters
    ----------
    level : int
        Smooth truncation by the partition sum up to ``level`` (default 7).
    degree : int
        Sharp truncation ``|xi| <= degree`` instead; no pointwise
        convergence off the diagonal is implied.
    diagnostic : bool
        Also return ``|K_{level+1} - K_level|``.
    check : bool
        Refuse pairs closer than :func:`min_distance` for smooth truncation.

    Raises
    ------
    DiagonalProximityError
    """
    n = op.dimension
    X = as_points(x, n)
    Y = as_points(y, n)
    if degree is not None and level is not None:
        raise ValueError("give at most one of level or degree")
    if degree is None:
        level = 7 if level is None else level
        if check:
            _check_distance(X, Y, min_distance(level), table)
        basis = BasisSpec(n, smooth_level_degree(level, n))
        val = _riesz_series(op, basis, smooth_weights(basis, level), X, Y, dx, dy, table)
        if not diagnostic:
            return val
        basis2 = BasisSpec(n, smooth_level_degree(level + 1, n))
        val2 = _riesz_series(op, basis2, smooth_weights(basis2, level + 1), X, Y, dx, dy, table)
        return val, np.abs(val2 - val)
    basis = BasisSpec(n, degree)
    val = _riesz_series(op, basis, None, X, Y, dx, dy, table)
    if not diagnostic:
        return val
    basis2 = BasisSpec(n, 2 * degree)
    return val, np.abs(_riesz_series(op, basis2, None, X, Y, dx, dy, table) - val)


def riesz_kernel_subordinated(op, x, y, dx=None, dy=None, table=False, nodes=None):
    """Off-diagonal kernel of ``R^alpha`` from the heat-kernel integral.

    Uses ``L^{-s} = Gamma(s)^{-1} ∫ t^{s-1} exp(-tL) dt`` with the Mehler
    closed form; independent of any series truncation. ``nodes`` overrides
    the time quadrature (see :func:`~hermite_kit.spectral.mehler.time_nodes`).

    Raises
    ------
    DiagonalProximityError
        If a pair lies on the diagonal.
    """
    n = op.dimension
    X = as_points(x, n)
    Y = as_points(y, n)
    if table:
        nx, ny = X.shape[0], Y.shape[0]
        X = np.repeat(X, ny, axis=0)
        Y = np.tile(Y, (nx, 1))
    _check_distance(X, Y, 1e-6, False, hint="the kernel is singular on the diagonal")
    dxo = None if dx is None else ((int(dx),) if np.isscalar(dx) else tuple(dx))
    dyo = None if dy is None else ((int(dy),) if np.isscalar(dy) else tuple(dy))
    val = subordinated_kernel(op.word.alpha, op.word.letters, X, Y, dxo, dyo, nodes)
    return val.reshape(nx, ny) if table else val


def riesz_kernel_piece(op, j, x, y, system=None, dx=None, dy=None, table=False):
    """``R_j(x, y) = sum_{xi in I_j} sigma_alpha a_alpha phi_j(sqrt(lambda)) h_{xi+alpha~}(x) h_xi(y)``."""
    system = build_admissible("partition") if system is None else system
    n = op.dimension
    block = DyadicBlock(j, n)
    basis = block.basis()
    weights = system.spectral(j, basis.eigenvalues) * block.contains(basis.orders)
    return _riesz_series(op, basis, weights, as_points(x, n), as_points(y, n), dx, dy, table)


def riesz_evaluator(op, level=7, check=True):
    def ev(x, y, dx, dy, table):
        return riesz_kernel(op, x, y, level=level, dx=dx, dy=dy, table=table, check=check)

    return KernelEvaluator(
        ev,
        op.dimension,
        smooth_level_degree(level, op.dimension),
        name=f"riesz[{op.word}]",
        min_distance=min_distance(level),
        info={"level": level},
    )


def riesz_subordinated_evaluator(op):
    def ev(x, y, dx, dy, table):
        return riesz_kernel_subordinated(op, x, y, dx, dy, table)

    return KernelEvaluator(ev, op.dimension, -1, max_order=3, name=f"riesz[{op.word}]", min_distance=1e-6)


def riesz_piece_evaluator(op, j, system=None):
    block = DyadicBlock(j, op.dimension)

    def ev(x, y, dx, dy, table):
        return riesz_kernel_piece(op, j, x, y, system, dx, dy, table)

    return KernelEvaluator(ev, op.dimension, block.order_range[1], name=f"riesz-piece[{op.word}, j={j}]")


def multiplier_sup(op, max_order):
    """``sup |a_alpha(xi) sigma_alpha(xi)|`` over ``|xi| <= max_order``."""
    return float(np.max(np.abs(op.multiplier(BasisSpec(op.dimension, max_order)))))


def operator_matrix(op, degree):
    """Matrix of ``R^alpha`` on ``span{h_xi : |xi| <= degree}`` (output truncated)."""
    basis = BasisSpec(op.dimension, degree)
    M = np.zeros((basis.count, basis.count))
    for p in range(basis.count):
        e = np.zeros(basis.count)
        e[p] = 1.0
        out = riesz_apply(op, CoefVec(basis, e))
        vals = out.values[: basis.count] if out.basis.count >= basis.count else np.pad(
            out.values, (0, basis.count - out.basis.count)
        )
        M[:, p] = vals
    return M


def cancellation_functional(
    op, omega, x0s=(0.0, 1.0, -1.0, 2.0, -2.0, 4.0, -4.0, 8.0, -8.0), alpha=None, kind="hardy", dimension=1
):
    """``sup_{x0} rho(x0)^{omega-|alpha|} ||T^# [(. - x0)^alpha chi]||_{Lambda^omega}``.

    ``T^# = T^*`` for ``kind='hardy'`` and ``T`` for ``kind='lip'``, where
    ``T`` is a :class:`RieszOp` or an x-independent symbol (a spectral
    multiplier, e.g. the heat semigroup). The operator acts exactly on the Hermite expansion of
    the localized function truncated at the degree of the level
    :func:`~hermite_kit.hardy.norms.level_floor`, and the result is
    truncated at the same degree.

    Returns
    -------
    BoundReport
        One sample per ``x0``; ``refined`` uses doubled spatial density.
    """
    riesz = isinstance(op, RieszOp)
    if not riesz and not getattr(op, "x_independent", False):
        raise TypeError("op must be a RieszOp or an x-independent symbol")
    n = op.dimension if riesz else dimension
    alpha = (0,) * n if alpha is None else tuple(alpha)
    if kind not in ("hardy", "lip"):
        raise ValueError("kind must be 'hardy' or 'lip'")

    def apply(c):
        if riesz:
            return riesz_adjoint_apply(op, c) if kind == "hardy" else riesz_apply(op, c)
        m = np.asarray(op.spectral(c.basis.eigenvalues))
        return CoefVec(c.basis, c.values * (np.conj(m) if kind == "hardy" else m))

    rows, refined = [], []
    for x0 in x0s:
        x0v = np.atleast_1d(np.asarray(x0, dtype=float))
        g = make_g(x0v, alpha)
        lo = x0v - g.support_radius
        hi = x0v + g.support_radius
        j_top = level_floor((lo, hi))
        K = DyadicBlock(j_top, n).order_range[1]
        c = project(g, K)
        out = reindex(apply(c), K)
        est = lip_norm(out, omega, j_max=j_top, support=(lo, hi))
        w = g.scale ** (omega - sum(alpha))
        rows.append([float(x0v[0]) if n == 1 else float(np.linalg.norm(x0v)), w * est.value, 1.0])
        refined.append(w * est.refined)
    table = np.array([[r[0], r[1], r[2], r[1] / r[2]] for r in rows])
    k = int(np.argmax(table[:, 3]))
    return BoundReport(
        name=f"cancellation[{kind}]({op if riesz else op.name}, omega={omega}, alpha={alpha})",
        params={"omega": omega, "alpha": list(alpha), "kind": kind, "x0": [float(np.atleast_1d(x)[0]) for x in x0s]},
        samples=len(rows),
        constant=float(table[:, 3].max()),
        refined=float(max(refined)),
        worst={"x0": float(table[k, 0])},
        columns=["x0"],
        table=table,
    )

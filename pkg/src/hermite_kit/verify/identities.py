"""Exact Hermite identities checked as hard assertions.

Each check returns an :class:`IdentityResult` with the largest absolute
residual; :func:`assert_identity` turns a failure into ``AssertionError``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from math import comb, factorial

import numpy as np
from numpy.polynomial import hermite as H
from numpy.polynomial import polynomial as P

from ..core.basis import BasisSpec, CoefVec, reindex
from ..core.functions import hermite_eval_1d, hermite_table
from ..core.grid import synthesize
from ..core.ladder import ANNIHILATION, CREATION, ladder_apply, position_apply
from ..spectral.admissible import DyadicBlock, build_admissible
from ..spectral.semigroup import heat_apply, heat_kernel, mehler_kernel

TOL = 1e-9


@dataclass
class IdentityResult:
    name: str
    residual: float
    scale: float = 1.0
    tol: float = TOL
    params: dict = field(default_factory=dict)

    @property
    def passed(self):
        return bool(np.isfinite(self.residual) and self.residual <= self.tol)

    def summary(self):
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name}: residual={self.residual:.3e} (scale {self.scale:.3g}, tol {self.tol:g})"


def assert_identity(result):
    if not result.passed:
        raise AssertionError(result.summary())
    return result


def _double_factorial(m):
    out = 1
    while m > 1:
        out *= m
        m -= 2
    return out


def identity_a_constant(ell, N):
    """``c_{l,N} = (-4)^{N-l} (2N-2l-1)!! binom(N, 2l-N)``."""
    return (-4) ** (N - ell) * _double_factorial(2 * N - 2 * ell - 1) * comb(N, 2 * ell - N)


def _ladder_power(m, mu):
    """Coefficient of ``A^m h_mu = c h_{mu+m}``."""
    out = np.ones_like(mu, dtype=float)
    for r in range(m):
        out = out * np.sqrt(2.0 * (mu + r) + 2.0)
    return out


def _samples(rng, count, n, box=3.0):
    return rng.uniform(-box, box, (count, n)), rng.uniform(-box, box, (count, n))


def check_identityA(N, j=1, dimension=1, axis=0, symbol=None, count=16, seed=0):
    """``2^N (x_i - y_i)^N K = sum_l c_{l,N} sum_xi Delta_i^l k (A_i^y - A_i^x)^{2l-N} h_xi(x) h_xi(y)``.

    ``K(x, y) = sum_xi k(xi) h_xi(x) h_xi(y)`` with ``k`` finitely supported;
    the default is ``k(xi) = phi_j(sqrt(lambda_xi))``. ``Delta_i`` is the
    forward difference in ``xi_i``; the right side uses exact ladder
    coefficients.

    Parameters
    ----------
    symbol : callable, optional
        ``k(xi)`` on an ``(P, n)`` integer array.
    """
    n = dimension
    rng = np.random.default_rng(seed)
    X, Y = _samples(rng, count, n)
    top = DyadicBlock(j, n).order_range[1] if symbol is None else 12
    if symbol is None:
        system = build_admissible("partition")

        def symbol(idx):
            return system.phi_j(j, np.sqrt(2.0 * idx.sum(axis=1) + n))

    # support of k lies in |xi| <= top; pad so that differences and shifts stay exact
    pad = N + 2
    basis = BasisSpec(n, top + pad)
    idx = basis.indices
    kv = np.where(idx.sum(axis=1) <= top, symbol(idx), 0.0)
    kmap = {tuple(r): v for r, v in zip(idx.tolist(), kv)}
    K_tab = max(top + 2 * pad, 1)
    Tx = [hermite_table(K_tab, X[:, a]) for a in range(n)]
    Ty = [hermite_table(K_tab, Y[:, a]) for a in range(n)]

    def h(tabs, rows):
        out = np.ones((rows.shape[0], tabs[0].shape[1]))
        for a in range(n):
            out = out * tabs[a][rows[:, a]]
        return out

    lhs_k = np.einsum("p,pi,pi->i", kv, h(Tx, idx), h(Ty, idx))
    lhs = 2.0 ** N * (X[:, axis] - Y[:, axis]) ** N * lhs_k
    rhs = np.zeros(count)
    e = np.zeros(n, dtype=np.int64)
    e[axis] = 1
    for ell in range(-(-N // 2), N + 1):
        # forward difference Delta_i^ell of k (zero outside the padded basis)
        d = np.zeros(idx.shape[0])
        for r in range(ell + 1):
            shifted = np.array([kmap.get(tuple(row), 0.0) for row in (idx + r * e).tolist()])
            d += comb(ell, r) * (-1) ** (ell - r) * shifted
        m = 2 * ell - N
        mu = idx[:, axis]
        for r in range(m + 1):
            coef = comb(m, r) * (-1) ** (m - r) * _ladder_power(m - r, mu) * _ladder_power(r, mu)
            rx, ry = idx.copy(), idx.copy()
            rx[:, axis] += m - r
            ry[:, axis] += r
            rhs += identity_a_constant(ell, N) * np.einsum("p,pi,pi->i", d * coef, h(Tx, rx), h(Ty, ry))
    return IdentityResult(
        f"identityA(N={N})",
        float(np.max(np.abs(lhs - rhs))),
        float(np.max(np.abs(lhs))),
        params={"N": N, "j": j, "n": n, "axis": axis},
    )


# ---------------------------------------------------------------------------
# commutation identities b1/b2 on functions of (x_i, y_i)


def _op(kind, var, c):
    """Ladder letter ``kind`` in variable ``var`` (0 = x, 1 = y)."""
    return ladder_apply(kind, var, c)


def _diff_power(kind, N, c):
    """``(A^x - A^y)^N`` by binomial expansion (the two letters commute)."""
    out = CoefVec.zeros(BasisSpec(2, c.basis.degree + N))
    for r in range(N + 1):
        t = c
        for _ in range(r):
            t = _op(kind, 0, t)
        for _ in range(N - r):
            t = _op(kind, 1, t)
        out = out + comb(N, r) * (-1) ** (N - r) * t
    return out


def _x(c):
    return position_apply(0, c)


def _xmy(c):
    return position_apply(0, c) - position_apply(1, c)


def _common(a, b):
    K = max(a.basis.degree, b.basis.degree)
    return reindex(a, K).values, reindex(b, K).values


def _sign(kind, k):
    return (-1) ** k if kind == ANNIHILATION else 1


def _falling(N, k):
    return 0 if k > N else factorial(N) // factorial(N - k)


def check_commutation(M, N, kind=CREATION, degree=6, seed=0):
    """Identities b1 and b2 as exact coefficient-space operator actions.

    Both sides act on random combinations of ``h_xi(x) h_eta(y)`` with
    ``xi + eta <= degree``; the residual is the largest coefficient
    difference (an ``L^2`` residual).

    Returns
    -------
    tuple of IdentityResult
        ``(b1, b2)``.
    """
    rng = np.random.default_rng(seed)
    basis = BasisSpec(2, degree)
    c = CoefVec(basis, rng.standard_normal(basis.count))

    def ax(cc):
        return _op(kind, 0, cc)

    def diffN(cc, k):
        return _diff_power(kind, k, cc)

    def xpow(cc, k):
        for _ in range(k):
            cc = _x(cc)
        return cc

    def xmypow(cc, k):
        for _ in range(k):
            cc = _xmy(cc)
        return cc

    def axpow(cc, k):
        for _ in range(k):
            cc = ax(cc)
        return cc

    # b1: x^M (A^x - A^y)^N = sum_k c_k binom(M,k) N!/(N-k)! (A^x - A^y)^{N-k} x^{M-k}
    lhs1 = xpow(diffN(c, N), M)
    rhs1 = CoefVec.zeros(BasisSpec(2, 0))
    for k in range(M + 1):
        f = _falling(N, k)
        if f == 0:
            continue
        rhs1 = rhs1 + (_sign(kind, k) * comb(M, k) * f) * diffN(xpow(c, M - k), N - k)
    a, b = _common(lhs1, rhs1)
    r1 = IdentityResult(
        f"b1(M={M},N={N},{kind})", float(np.max(np.abs(a - b))), float(np.max(np.abs(a))), params={"M": M, "N": N, "letter": kind}
    )
    # b2: (x - y)^N (A^x)^M = sum_k c_k binom(M,k) N!/(N-k)! (A^x)^{M-k} (x - y)^{N-k}
    lhs2 = xmypow(axpow(c, M), N)
    rhs2 = CoefVec.zeros(BasisSpec(2, 0))
    for k in range(M + 1):
        f = _falling(N, k)
        if f == 0:
            continue
        rhs2 = rhs2 + (_sign(kind, k) * comb(M, k) * f) * axpow(xmypow(c, N - k), M - k)
    a, b = _common(lhs2, rhs2)
    r2 = IdentityResult(
        f"b2(M={M},N={N},{kind})", float(np.max(np.abs(a - b))), float(np.max(np.abs(a))), params={"M": M, "N": N, "letter": kind}
    )
    return r1, r2


# ---------------------------------------------------------------------------
# ladder identities d1a/d1b against an independent polynomial representation


def _hermite_poly(mu):
    """Hermite-series coefficients of ``h_mu / exp(-t^2/2)``."""
    c = np.zeros(mu + 1)
    c[mu] = 1.0 / np.sqrt(2.0 ** mu * factorial(mu) * np.sqrt(np.pi))
    return c


def _poly_ladder(kind, c):
    """``A`` or ``A*`` on ``p(t) exp(-t^2/2)`` with ``p`` a Hermite series.

    ``A(p e) = (2 t p - p') e`` and ``A*(p e) = p' e``.
    """
    if kind == CREATION:
        return H.hermsub(2.0 * H.hermmulx(c), H.hermder(c))
    return H.hermder(c)


def check_ladder(kind, max_degree=40, m_max=3, t_max=8.0, count=161):
    """``(A_i)^m h_mu`` and ``(A*_i)^m h_mu`` against closed-form coefficients.

    The left side is computed in the physicists' Hermite-polynomial
    basis (``numpy.polynomial.hermite``), independent of the recurrence.
    Returns the absolute residual; ``params['relative']`` holds the
    largest residual relative to ``max |h_{mu +/- m}|``.
    """
    kind = CREATION if kind in (CREATION, "A") else ANNIHILATION
    t = np.linspace(-t_max, t_max, count)
    gauss = np.exp(-0.5 * t * t)
    worst, rel, scale = 0.0, 0.0, 0.0
    for mu in range(max_degree + 1):
        for m in range(1, m_max + 1):
            if kind == ANNIHILATION and mu < m:
                continue
            c = _hermite_poly(mu)
            for _ in range(m):
                c = _poly_ladder(kind, c)
            lhs = H.hermval(t, c) * gauss
            if kind == CREATION:
                fac = np.prod([np.sqrt(2.0 * (mu + r) + 2.0) for r in range(m)])
                target = mu + m
            else:
                fac = np.prod([np.sqrt(2.0 * (mu - r)) for r in range(m)])
                target = mu - m
            rhs = fac * hermite_eval_1d(target, t)
            res = float(np.max(np.abs(lhs - rhs)))
            worst = max(worst, res)
            size = float(np.max(np.abs(rhs)))
            scale = max(scale, size)
            rel = max(rel, res / size)
    name = "d1a" if kind == CREATION else "d1b"
    return IdentityResult(
        name, worst, scale, params={"max_degree": max_degree, "m_max": m_max, "t_max": t_max, "relative": rel}
    )


def check_identityC(beta_max=3, xi_max=20, t_max=6.0, count=121):
    """``x^beta h_xi`` from repeated exact position maps, compared pointwise (n = 1)."""
    t = np.linspace(-t_max, t_max, count)
    worst, scale = 0.0, 0.0
    for xi in range(xi_max + 1):
        c = CoefVec.unit(BasisSpec(1, xi), (xi,))
        for beta in range(beta_max + 1):
            lhs = t ** beta * hermite_eval_1d(xi, t)
            rhs = synthesize(c, t[:, None]).values
            # support: only h_{xi + beta - 2 omega}, 0 <= omega <= beta
            allowed = {xi + beta - 2 * w for w in range(beta + 1) if xi + beta - 2 * w >= 0}
            stray = [abs(v) for k, v in enumerate(c.values) if k not in allowed]
            worst = max(worst, float(np.max(np.abs(lhs - rhs))), max(stray, default=0.0))
            scale = max(scale, float(np.max(np.abs(lhs))))
            c = position_apply(0, c)
    return IdentityResult("identityC", worst, scale, params={"beta_max": beta_max, "xi_max": xi_max})


# ---------------------------------------------------------------------------
# Leibniz rules


def _forward(f, r):
    for _ in range(r):
        f = f[1:] - f[:-1]
    return f


def check_leibniz_discrete(ell, length=40, seed=0):
    """``Delta^l (fg)(xi) = sum_r binom(l,r) Delta^r f(xi) Delta^{l-r} g(xi + r)`` on random sequences."""
    rng = np.random.default_rng(seed)
    f = rng.standard_normal(length + ell + 1)
    g = rng.standard_normal(length + ell + 1)
    lhs = _forward(f * g, ell)[:length]
    rhs = np.zeros(length)
    for r in range(ell + 1):
        dg = _forward(g, ell - r)
        rhs += comb(ell, r) * _forward(f, r)[:length] * dg[r : r + length]
    return IdentityResult(f"leibniz1(l={ell})", float(np.max(np.abs(lhs - rhs))), float(np.max(np.abs(lhs))), params={"l": ell})


class _GaussPoly1D:
    """``p(t) exp(-a t^2)`` with ``p`` in the power basis."""

    def __init__(self, coef, a):
        self.coef = np.asarray(coef, dtype=float)
        self.a = float(a)

    def __mul__(self, other):
        return _GaussPoly1D(P.polymul(self.coef, other.coef), self.a + other.a)

    def d(self):
        # (p' - 2 a t p) e
        return _GaussPoly1D(P.polysub(P.polyder(self.coef), 2.0 * self.a * P.polymulx(self.coef)), self.a)

    def A(self):
        # (-p' + 2 a t p + t p) e
        return _GaussPoly1D(
            P.polyadd(-P.polyder(self.coef), (2.0 * self.a + 1.0) * P.polymulx(self.coef)), self.a
        )

    def __call__(self, t):
        return P.polyval(t, self.coef) * np.exp(-self.a * t * t)


def _h_as_gausspoly(xi):
    herm = _hermite_poly(xi)
    return _GaussPoly1D(H.herm2poly(herm), 0.5)


def check_leibniz_ladder(alpha, xi, f_coefs=None, t_max=5.0, count=101):
    """``A^alpha (f g) = sum_{nu <= alpha} binom(alpha,nu) (-1)^|nu| ∂^nu f A^{alpha-nu} g``.

    ``f`` is separable, ``f = prod_i p_i(x_i) exp(-x_i^2/4)``, and
    ``g = h_xi``. The left side differentiates the product symbolically;
    the right side uses exact ladder coefficients for ``g``.
    """
    alpha = tuple(int(a) for a in alpha)
    xi = tuple(int(k) for k in xi)
    n = len(alpha)
    f_coefs = f_coefs or [(1.0, 0.5, -0.25)] * n
    t = np.linspace(-t_max, t_max, count)
    grids = np.meshgrid(*([t] * n), indexing="ij")
    pts = [g.ravel() for g in grids]
    fs = [_GaussPoly1D(f_coefs[i], 0.25) for i in range(n)]
    lhs = np.ones(pts[0].size)
    for i in range(n):
        prod = fs[i] * _h_as_gausspoly(xi[i])
        for _ in range(alpha[i]):
            prod = prod.A()
        lhs = lhs * prod(pts[i])
    rhs = np.zeros_like(lhs)
    for nu in product(*[range(a + 1) for a in alpha]):
        term = np.ones_like(lhs) * np.prod([comb(a, v) for a, v in zip(alpha, nu)]) * (-1) ** sum(nu)
        for i in range(n):
            df = fs[i]
            for _ in range(nu[i]):
                df = df.d()
            k = alpha[i] - nu[i]
            g = _ladder_power(k, np.array([xi[i]]))[0] * hermite_eval_1d(xi[i] + k, pts[i])
            term = term * df(pts[i]) * g
        rhs += term
    return IdentityResult(
        f"leibniz2(alpha={alpha},xi={xi})",
        float(np.max(np.abs(lhs - rhs))),
        float(np.max(np.abs(lhs))),
        params={"alpha": list(alpha), "xi": list(xi)},
    )


def check_leibniz(kind, **kwargs):
    """Dispatch to the ``discrete`` (``ell``) or ``ladder`` (``alpha``, ``xi``) Leibniz check."""
    if kind == "discrete":
        return check_leibniz_discrete(**kwargs)
    if kind == "ladder":
        return check_leibniz_ladder(**kwargs)
    raise ValueError(f"unknown Leibniz kind {kind!r}; expected 'discrete' or 'ladder'")


def check_partition(J_max=10, count=4001):
    """``|sum_{j<=J} phi_j(lambda) - 1|`` on ``[1/2, 2^{J-1}]`` for ``J <= J_max``."""
    system = build_admissible("partition")
    worst = 0.0
    for J in range(1, J_max + 1):
        lam = np.geomspace(0.5, 2.0 ** (J - 1), count)
        worst = max(worst, float(np.max(np.abs(system.partial_sum(J, lam) - 1.0))))
    return IdentityResult("partition", worst, 1.0, tol=1e-12, params={"J_max": J_max})


def check_heat_series(t_values=None, box=3.0, count=61):
    """Series heat kernel against the Mehler closed form (n = 1).

    The residual is the normwise relative error on the ``(x, y)`` table,
    maximized over ``t``.
    """
    t_values = np.geomspace(0.1, 2.0, 12) if t_values is None else np.asarray(t_values, dtype=float)
    x = np.linspace(-box, box, count)
    worst = 0.0
    for t in t_values:
        S = heat_kernel(t, x, x, table=True)
        M = mehler_kernel(t, x, x, table=True)
        worst = max(worst, float(np.linalg.norm(S - M) / np.linalg.norm(M)))
    return IdentityResult("heat-series-vs-mehler", worst, 1.0, tol=1e-8, params={"t": [float(t_values[0]), float(t_values[-1])], "box": box})


def check_semigroup(t=0.3, s=0.7, degree=30, dimension=2, seed=0):
    """``exp(-tL) exp(-sL) c = exp(-(t+s)L) c`` in coefficient space."""
    rng = np.random.default_rng(seed)
    basis = BasisSpec(dimension, degree)
    c = CoefVec(basis, rng.standard_normal(basis.count))
    lhs = heat_apply(t, heat_apply(s, c)).values
    rhs = heat_apply(t + s, c).values
    res = float(np.max(np.abs(lhs - rhs)))
    return IdentityResult("semigroup", res, float(np.max(np.abs(rhs))), tol=1e-14, params={"t": t, "s": s, "K": degree, "n": dimension})


def run_identities(dimension_max=2, seed=0):
    """All exact identities; returns a list of :class:`IdentityResult`."""
    out = []
    for n in range(1, dimension_max + 1):
        for N in range(0, 4):
            r = check_identityA(N, j=1 if n == 1 else 2, dimension=n, axis=n - 1, seed=seed)
            r.params["n"] = n
            r.name = f"identityA(N={N},n={n})"
            out.append(r)
    for kind in (CREATION, ANNIHILATION):
        for M in range(0, 4):
            for N in range(0, 4):
                out.extend(check_commutation(M, N, kind, seed=seed))
    out.append(check_ladder(CREATION))
    out.append(check_ladder(ANNIHILATION))
    out.append(check_identityC())
    for ell in range(0, 5):
        out.append(check_leibniz_discrete(ell, seed=seed))
    for alpha, xi in [((0,), (3,)), ((1,), (0,)), ((2,), (5,)), ((3,), (7,)), ((1, 0), (2, 1)), ((1, 2), (3, 0))]:
        out.append(check_leibniz_ladder(alpha, xi))
    out.append(check_partition())
    out.append(check_semigroup(seed=seed))
    out.append(check_heat_series())
    return out


__all__ = [
    "IdentityResult",
    "assert_identity",
    "check_commutation",
    "check_identityA",
    "check_identityC",
    "check_ladder",
    "check_leibniz",
    "check_leibniz_discrete",
    "check_leibniz_ladder",
    "check_heat_series",
    "check_partition",
    "check_semigroup",
    "identity_a_constant",
    "run_identities",
]

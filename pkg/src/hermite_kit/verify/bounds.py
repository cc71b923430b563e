"""Empirical constants for the kernel, projector and function-space estimates.

Every check returns one or more :class:`~hermite_kit.reports.BoundReport`
objects: the sup of ``LHS / RHS`` over a declared sample domain, measured
at base density and at doubled density.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from ..core.basis import BasisSpec, CoefVec
from ..core.functions import hermite_moments_1d, hermite_table
from ..core.grid import GridFn
from ..core.ladder import critical_radius
from ..core.quadrature import composite_legendre
from ..hardy.atoms import indicator_atom, projected_atom
from ..hardy.balls import Ball, SpaceParams
from ..hardy.bump import LocalizedFunction, make_g
from ..hardy.maximal import hp_norm, t_sample
from ..hardy.norms import BallFamily, campanato_norm, lip_norm, project
from ..reports import BoundReport, measure
from ..riesz import (
    LadderWord,
    RieszOp,
    multiplier_sup,
    riesz_kernel_piece,
    riesz_subordinated_evaluator,
)
from ..spectral.admissible import DyadicBlock, build_admissible
from ..spectral.kernels import KernelEvaluator
from ..spectral.pseudo import pseudo_kernel_piece
from ..spectral.semigroup import mehler_kernel, mehler_L, projector_diag
from ..spectral.symbols import constant, hormander, imaginary_power

BOX = 6.0
POINTS = 41
X0_SAMPLE = (0.0, 1.0, -1.0, 2.0, -2.0, 4.0, -4.0, 8.0, -8.0)
X0_DENSE = tuple(np.linspace(-8.0, 8.0, 33))


@dataclass
class BoundSpec:
    """A named inequality ``|lhs| <= C rhs`` with its sample domain.

    Attributes
    ----------
    sampler : callable
        ``sampler(density) -> (columns, samples, lhs, rhs)``; exclusions are
        applied inside the sampler.
    """

    name: str
    sampler: Callable
    params: dict
    domain: str = ""

    def run(self, limit=None):
        kw = {} if limit is None else {"limit": limit}
        rep = measure(self.name, self.sampler, dict(self.params, domain=self.domain), **kw)
        return rep


def _rho(x):
    return 1.0 / (1.0 + np.abs(x))


def _pairs(lo, hi, count, exclude_diagonal=True):
    t = np.linspace(lo, hi, count)
    X, Y = np.meshgrid(t, t, indexing="ij")
    X, Y = X.ravel(), Y.ravel()
    if exclude_diagonal:
        keep = X != Y
        X, Y = X[keep], Y[keep]
    return X, Y


# ---------------------------------------------------------------------------
# projectors and the heat kernel


def check_QQ(mu=2.0, j_max=5, dimension=1):
    """``Q_{4^j}(x, x) <= C 2^{jn} (1 + (1+|x|)/2^j)^{-mu}``, ``j <= j_max``.

    ``x`` runs over ``[-3 2^j, 3 2^j]`` with spacing ``2^{-j}/4`` at base
    density (beyond ``sqrt(2 4^j)`` the diagonal decays like a Gaussian).
    """
    if dimension != 1:
        raise ValueError("projector bound check is implemented for n = 1")

    def sampler(density):
        rows, lhs, rhs = [], [], []
        for j in range(j_max + 1):
            L = 3.0 * 2.0 ** j
            x = np.linspace(-L, L, int(2 * L * 4 * 2 ** j) * density + 1)
            q = projector_diag(4 ** j, x)
            rows.append(np.column_stack([np.full_like(x, j), x]))
            lhs.append(q)
            rhs.append(2.0 ** j * (1.0 + (1.0 + np.abs(x)) / 2.0 ** j) ** (-mu))
        return ["j", "x"], np.vstack(rows), np.concatenate(lhs), np.concatenate(rhs)

    return measure(f"QQ(mu={mu:g})", sampler, {"mu": mu, "j_max": j_max, "n": dimension})


HK_C = 8.0


def _heat_domain(density, t_lo=0.05, t_hi=2.0, box=4.0, points=POINTS, times=12):
    t = np.geomspace(t_lo, t_hi, (times - 1) * density + 1)
    x = np.linspace(-box, box, (points - 1) * density + 1)
    T, X, Y = np.meshgrid(t, x, x, indexing="ij")
    return T.ravel(), X.ravel(), Y.ravel()


def _heat_damping(T, X, Y, N):
    return (1.0 + np.sqrt(T) / _rho(X) + np.sqrt(T) / _rho(Y)) ** (-N)


def check_HK(part, order, N, c=HK_C):
    """Heat-kernel bounds on ``[0.05, 2] x [-4, 4]^2`` (n = 1).

    ``part='a'``: ``|L^k e^{-tL}(x,y)| <= C e^{-|x-y|^2/(ct)} t^{-1/2-k} (1 + sqrt t/rho(x) + sqrt t/rho(y))^{-N}``;
    ``part='b'``: ``|∂_y^gamma e^{-tL}(x,y)|`` with ``t^{-(1+|gamma|)/2}``.
    Values use the Mehler closed form (``L`` via ``-∂_t``).
    """
    if part == "a" and order not in (0, 1):
        raise ValueError("part (a) is implemented for k <= 1")
    if part == "b" and order not in (1, 2):
        raise ValueError("part (b) is implemented for |gamma| <= 2")

    def sampler(density):
        T, X, Y = _heat_domain(density)
        lhs = np.empty_like(T)
        for tv in np.unique(T):
            m = T == tv
            if part == "a":
                lhs[m] = mehler_kernel(tv, X[m], Y[m]) if order == 0 else mehler_L(tv, X[m], Y[m])
            else:
                lhs[m] = mehler_kernel(tv, X[m], Y[m], dy=order)
        power = 0.5 + order if part == "a" else 0.5 * (1 + order)
        rhs = np.exp(-((X - Y) ** 2) / (c * T)) * T ** (-power) * _heat_damping(T, X, Y, N)
        return ["t", "x", "y"], np.column_stack([T, X, Y]), lhs, rhs

    label = "k" if part == "a" else "gamma"
    return measure(f"HK({part}, {label}={order}, N={N})", sampler, {"part": part, label: order, "N": N, "c": c})


# ---------------------------------------------------------------------------
# HCZO grading


def _regularity_triples(density, box, points, fractions=(0.45, 0.2, 0.05)):
    """``(x, y, h)`` with ``|h| = f |x - y|``, ``f < 1/2`` (the exclusion ``|x-y| > 2|h|``)."""
    X, Y = _pairs(-box, box, (points - 1) * density + 1)
    fr = np.geomspace(fractions[0], fractions[-1], (len(fractions) - 1) * density + 1)
    Xs, Ys, Hs = [], [], []
    for f in fr:
        for s in (1.0, -1.0):
            Xs.append(X)
            Ys.append(Y)
            Hs.append(s * f * np.abs(X - Y))
    return np.concatenate(Xs), np.concatenate(Ys), np.concatenate(Hs)


def grade_hczo(kernel, M=0, eps=0.5, box=BOX, points=POINTS, l2_sup=None, name=None):
    """Empirical constants for the four HCZO conditions (n = 1).

    (i) ``l2_sup(K)`` for ``K`` and ``2K`` (an operator-norm sequence);
    (ii) ``|K(x,y)| <= C |x-y|^{-1} (1 + |x-y|/rho(y))^{-M-eps}``;
    (iii)/(iv) ``|∂^M K(x,y) - ∂^M K(x',y)| <= C |x-x'|^eps / |x-y|^{1+M+eps}``
    for ``|x-y| > 2|x-x'|`` (and the same in ``y``).

    Parameters
    ----------
    kernel : KernelEvaluator
    l2_sup : callable, optional
        ``l2_sup(K) -> float``; (i) is skipped when absent.

    Raises
    ------
    ValueError
        If ``kernel.max_order < M``.
    """
    if kernel.dimension != 1:
        raise ValueError("HCZO grading is implemented for n = 1")
    if kernel.max_order < M:
        raise ValueError(f"kernel provides derivatives up to order {kernel.max_order}, need {M}")
    label = name or kernel.name
    params = {"kernel": label, "M": M, "eps": eps, "box": box, "points": points}
    reports = []
    if l2_sup is not None:

        def s_i(density):
            K = 64 * density
            return ["degree"], np.array([[K]]), np.array([l2_sup(K)]), np.array([1.0])

        reports.append(measure(f"HCZO(i)[{label}]", s_i, params))

    def s_ii(density):
        X, Y = _pairs(-box, box, (points - 1) * density + 1)
        lhs = kernel(X, Y)
        d = np.abs(X - Y)
        rhs = d ** (-1.0) * (1.0 + d / _rho(Y)) ** (-M - eps)
        return ["x", "y"], np.column_stack([X, Y]), lhs, rhs

    reports.append(measure(f"HCZO(ii)[{label}]", s_ii, params))

    for tag, var in (("iii", "x"), ("iv", "y")):

        def s_reg(density, var=var):
            X, Y, Hh = _regularity_triples(density, box, points)
            if var == "x":
                lhs = kernel(X, Y, dx=M) - kernel(X + Hh, Y, dx=M)
            else:
                lhs = kernel(X, Y, dy=M) - kernel(X, Y + Hh, dy=M)
            rhs = np.abs(Hh) ** eps / np.abs(X - Y) ** (1 + M + eps)
            return ["x", "y", "h"], np.column_stack([X, Y, Hh]), lhs, rhs

        reports.append(measure(f"HCZO({tag})[{label}]", s_reg, params))
    return reports


def riesz_hczo(order=1, letter="A", M=0, eps=0.5, **kw):
    """:func:`grade_hczo` for ``R^alpha`` (n = 1), kernel by subordination."""
    op = RieszOp(LadderWord((order,), (letter,)))
    ev = riesz_subordinated_evaluator(op)
    return grade_hczo(ev, M, eps, l2_sup=lambda K: multiplier_sup(op, K), name=str(op), **kw)


def zero_kernel():
    def ev(x, y, dx, dy, table):
        return np.zeros(np.broadcast(np.asarray(x, dtype=float), np.asarray(y, dtype=float)).shape)

    return KernelEvaluator(ev, 1, 0, max_order=4, name="zero")


def heat_hczo(t=0.5, M=0, eps=0.5, **kw):
    """Condition (ii) and the regularity conditions for the heat kernel at fixed ``t``."""

    def ev(x, y, dx, dy, table):
        x = np.asarray(x, dtype=float).ravel()
        y = np.asarray(y, dtype=float).ravel()
        if dx:
            # symmetry: ∂_x K(x, y) = ∂_y K(y, x)
            return mehler_kernel(t, y, x, dy=dx)
        return mehler_kernel(t, x, y, dy=dy or None)

    return grade_hczo(KernelEvaluator(ev, 1, -1, max_order=2, name=f"heat(t={t:g})"), M, eps, **kw)


def check_kernel_RT(order=1, letter="A", gamma=0, eta=0, mu=2.0, box=BOX, points=POINTS):
    """``|∂_x^gamma ∂_y^eta R^alpha(x,y)| <= C |x-y|^{-1-gamma-eta} (1 + |x-y|/rho(x) + |x-y|/rho(y))^{-mu}``."""
    op = RieszOp(LadderWord((order,), (letter,)))
    ev = riesz_subordinated_evaluator(op)

    def sampler(density):
        X, Y = _pairs(-box, box, (points - 1) * density + 1)
        lhs = ev(X, Y, dx=gamma or None, dy=eta or None)
        d = np.abs(X - Y)
        rhs = d ** (-1.0 - gamma - eta) * (1.0 + d / _rho(X) + d / _rho(Y)) ** (-mu)
        return ["x", "y"], np.column_stack([X, Y]), lhs, rhs

    return measure(
        f"kernelRT[{op}](gamma={gamma}, eta={eta}, mu={mu:g})",
        sampler,
        {"alpha": order, "letter": letter, "gamma": gamma, "eta": eta, "mu": mu},
    )


# ---------------------------------------------------------------------------
# dyadic pieces


def _piece_samples(j, density, centers=64, offsets=16):
    """Centres on ``[-2^{j+1}, 2^{j+1}]`` and offsets ``u 2^{-j}``, ``|u| <= 8``."""
    L = 2.0 ** (j + 1)
    x = np.linspace(-L, L, (centers - 1) * density + 1)
    u = np.linspace(-8.0, 8.0, 2 * offsets * density + 1)
    X, U = np.meshgrid(x, u, indexing="ij")
    X = X.ravel()
    return X, X + U.ravel() * 2.0 ** (-j)


def check_ddKj(side="pseudo", N=0, gamma=0, eta=0, j_range=(1, 5), mu=2.0, symbol=None, order=1, letter="A"):
    """Dyadic-piece bounds, one report per ``j``.

    ``|x-y|^N |∂_x^gamma ∂_y^eta K_j(x,y)| <= C 2^{j(1+m+gamma+eta+N(1-2 rho))} (1 + 2^{-j}/rho(x) + 2^{-j}/rho(y))^{-mu}``
    for pseudo-multiplier pieces (``rho = 1``, ``m`` from the symbol) and
    ``2^{j(1+gamma+eta-N)}`` for Riesz pieces. Returns the list of reports
    and the spread ``max C_j / min C_j``.
    """
    system = build_admissible("partition")
    if side == "pseudo":
        sigma = constant(1.0) if symbol is None else symbol
        m, rho = sigma.m, sigma.rho

        def K(j, X, Y):
            return pseudo_kernel_piece(sigma, j, X, Y, system, dx=gamma or None, dy=eta or None)

        label = f"pseudo[{sigma.name}]"
    elif side == "riesz":
        op = RieszOp(LadderWord((order,), (letter,)))
        m, rho = 0.0, 1.0

        def K(j, X, Y):
            return riesz_kernel_piece(op, j, X, Y, system, dx=gamma or None, dy=eta or None)

        label = f"riesz[{op.word}]"
    else:
        raise ValueError("side must be 'pseudo' or 'riesz'")
    reports = []
    for j in range(j_range[0], j_range[1] + 1):

        def sampler(density, j=j):
            X, Y = _piece_samples(j, density)
            lhs = np.abs(X - Y) ** N * np.abs(K(j, X, Y))
            expo = 1 + m + gamma + eta + N * (1 - 2 * rho)
            rhs = 2.0 ** (j * expo) * (1.0 + 2.0 ** (-j) / _rho(X) + 2.0 ** (-j) / _rho(Y)) ** (-mu)
            return ["x", "y"], np.column_stack([X, Y]), lhs, rhs

        reports.append(
            measure(
                f"ddKj[{label}](N={N}, gamma={gamma}, eta={eta}, mu={mu:g}, j={j})",
                sampler,
                {"side": side, "N": N, "gamma": gamma, "eta": eta, "j": j, "mu": mu},
            )
        )
    Cs = [r.constant for r in reports]
    spread = max(Cs) / min(Cs) if min(Cs) > 0 else float("inf")
    return reports, spread


# ---------------------------------------------------------------------------
# coefficient sums over dyadic blocks


def _cn_coefficients(x0, beta, degree, sigma=None, ladder=None):
    """``<chi (. - x0)^beta, F_xi>`` for ``xi <= degree`` (n = 1).

    ``F_xi = h_xi`` by default, ``sigma(., xi) h_xi`` for a symbol, or
    ``A^alpha h_xi`` for a ladder word.
    """
    g = make_g((x0,), (beta,))
    grid = g.grid()
    t, w = grid.points[:, 0], grid.weights * grid.values
    if sigma is None and ladder is None:
        return hermite_moments_1d(degree, t, w)
    if ladder is not None:
        word = LadderWord((ladder[0],), (ladder[1],))
        base = hermite_moments_1d(degree + ladder[0], t, w)
        xi = np.arange(degree + 1)
        tgt = xi + int(word.shift[0])
        coef = word.coefficient(xi[:, None])
        out = np.zeros(degree + 1)
        ok = tgt >= 0
        out[ok] = coef[ok] * base[tgt[ok]]
        return out
    H = hermite_table(degree, t)
    S = sigma(grid.points, BasisSpec(1, degree).indices)  # (Np, P)
    return np.einsum("pi,ip,i->p", H, S, w)


def check_lemma_CN(variant="CN0", N=0, beta=0, j_range=(0, 5), x0s=None, sigma=None, alpha=1, letter="A", M=0):
    """Empirical constants for the coefficient sums over ``I_j`` (n = 1).

    ``(sum_{xi in I_j} |<chi (.-x0)^beta, F_xi>|^2)^{1/2} <= C rho(x0)^{beta+1-2N} 2^{-j(2N-1/2)} w``
    where ``w = max{1, 2^j rho(x0)}^{2N delta}`` for CN1, ``N`` is replaced
    by ``floor((1+M)/2)+1`` for CN2, and CN3 uses ``F_xi = A^alpha h_xi``
    with ``2^{-j(2N-1/2-|alpha|)}``. The refined pass doubles the ``x0``
    sample.
    """
    x0s = np.asarray(X0_DENSE if x0s is None else x0s, dtype=float)
    system = build_admissible("partition")
    if variant == "CN2":
        N = (1 + M) // 2 + 1
    if variant in ("CN1", "CN2") and sigma is None:

        sigma = hormander(1.0) if variant == "CN1" else imaginary_power(1.0)
    delta = getattr(sigma, "delta", 0.0) if variant == "CN1" else 0.0
    top = DyadicBlock(j_range[1], 1).order_range[1]

    def sampler(density):
        pts = np.sort(x0s)
        if density > 1:
            mids = 0.5 * (pts[1:] + pts[:-1])
            pts = np.sort(np.concatenate([pts, mids]))
        rows, lhs, rhs = [], [], []
        for x0 in pts:
            if variant == "CN3":
                c = _cn_coefficients(x0, beta, top, ladder=(alpha, letter))
            elif variant in ("CN1", "CN2"):
                c = _cn_coefficients(x0, beta, top, sigma=sigma)
            else:
                c = _cn_coefficients(x0, beta, top)
            r = critical_radius(x0)
            lam = 2.0 * np.arange(top + 1) + 1.0
            for j in range(j_range[0], j_range[1] + 1):
                wgt = system.spectral(j, lam) != 0
                val = float(np.sqrt(np.sum(np.abs(c[wgt & DyadicBlock(j, 1).contains(np.arange(top + 1))]) ** 2)))
                a = alpha if variant == "CN3" else 0
                bound = r ** (beta + 1 - 2 * N) * 2.0 ** (-j * (2 * N - 0.5 - a))
                if variant == "CN1":
                    bound *= max(1.0, 2.0 ** j * r) ** (2 * N * delta)
                rows.append([x0, j])
                lhs.append(val)
                rhs.append(bound)
        return ["x0", "j"], np.array(rows), np.array(lhs), np.array(rhs)

    params = {"variant": variant, "N": N, "beta": beta, "j_range": list(j_range)}
    if variant == "CN3":
        params.update(alpha=alpha, letter=letter)
    if sigma is not None:
        params["symbol"] = sigma.name
    return measure(f"{variant}(N={N}, beta={beta})", sampler, params)


# ---------------------------------------------------------------------------
# function-space estimates


def check_lip_eg(s, alpha=0, x0s=X0_SAMPLE):
    """``rho(x0)^{s-|alpha|} ||g_{x0,alpha}||_{Lambda^s} <= C`` (bmo for ``s = 0``).

    ``refined`` is the largest of the per-sample refined estimates.
    """
    rows, refined = [], []
    family = BallFamily()
    for x0 in x0s:
        g = make_g((x0,), (alpha,))
        est = lip_norm(g, s, family=family) if s == 0 else lip_norm(g, s)
        w = critical_radius(x0) ** (s - alpha)
        rows.append([x0, w * est.value, 1.0, w * est.value])
        refined.append(w * est.refined)
    table = np.array(rows)
    k = int(np.argmax(table[:, 3]))
    return BoundReport(
        name=f"lip-eg(s={s:g}, alpha={alpha})",
        params={"s": s, "alpha": alpha, "x0": list(map(float, x0s))},
        samples=len(rows),
        constant=float(table[:, 3].max()),
        refined=float(max(refined)),
        worst={"x0": float(table[k, 0])},
        columns=["x0"],
        table=table,
    )


ATOM_BALLS = ((0.0, 1 / 16), (0.0, 1 / 64), (2.0, 1 / 48), (8.0, 1 / 160), (0.0, 0.25), (4.0, 0.1))


def check_maximal_atoms(p_tilde=1.0, p=1.0, q=2.0, M=0, balls=ATOM_BALLS, reach=24.0):
    """``||M_L a||_{L^p~} <= C |B|^{1/p~ - 1/p}`` on generated atoms (n = 1).

    Small-regime balls carry a projected atom with vanishing moments up to
    ``M``; the others carry the normalized indicator. The integration grid
    is composite Gauss-Legendre on ``x_B +- reach``, graded towards the
    ball; refinement doubles both the panel count and the time sample.
    """
    params = SpaceParams(p=p, q=q, M=M)
    atoms = []
    for c, r in balls:
        ball = Ball((c,), r)
        a = projected_atom(ball, params) if ball.regime == "small" else indicator_atom(ball, params)
        g, f = a.sample(0, order=32)
        atoms.append((ball, f))

    def sampler(density):
        lhs, rhs, pts = [], [], []
        times = t_sample(48 * density)
        for ball, f in atoms:
            x, r = ball.center[0], ball.radius
            edges = np.concatenate([-np.geomspace(reach, r / 4, 24), np.geomspace(r / 4, reach, 24)])
            t, w = [], []
            for a, b in zip(edges[:-1], edges[1:]):
                tt, ww = composite_legendre(a, b, density, order=12)
                t.append(tt), w.append(ww)
            t, w = x + np.concatenate(t), np.concatenate(w)
            grid = GridFn(t[:, None], w, np.zeros_like(t))
            lhs.append(hp_norm(f, grid, p_tilde, times))
            rhs.append(ball.volume ** (1 / p_tilde - 1 / p))
            pts.append([x, r])
        return ["x_B", "r_B"], np.array(pts), lhs, rhs

    return measure(
        f"maximal-atoms(p~={p_tilde:g}, p={p:g}, M={M})",
        sampler,
        {"p_tilde": p_tilde, "p": p, "q": q, "M": M, "balls": [list(b) for b in balls], "reach": reach},
    )


def campanato_test_set():
    """Named test functions: Hermite functions, localized bumps, Gaussians."""
    out = {}
    for k in (0, 1, 3):
        out[f"h_{k}"] = CoefVec.unit(BasisSpec(1, k), (k,))
    for x0, a in ((0.0, 0), (2.0, 0), (1.0, 1)):
        out[f"g(x0={x0:g},alpha={a})"] = LocalizedFunction((x0,), (a,))
    for width in (0.5, 1.0):
        K = 160
        t, w = composite_legendre(-12.0, 12.0, 96)
        f = GridFn(t[:, None], w, np.exp(-0.5 * (t / width) ** 2))
        out[f"gauss(width={width:g})"] = project(f, K)
    return out


def check_campanato_equiv(s=1.0, N=None, tests=None, family=None, window=(1 / 50, 50)):
    """Ratio window ``lip_norm / campanato_norm`` over a test set (n = 1).

    ``N`` defaults to ``1 + floor(s/2)``. Returns a report whose
    ``constant`` is ``max(ratio, 1/ratio)`` over the set (so the window
    holds iff ``constant <= 50``) and whose ``refined`` value uses the
    doubled ball family.
    """
    N = 1 + int(np.floor(s / 2)) if N is None else N
    tests = campanato_test_set() if tests is None else tests
    family = BallFamily() if family is None else family
    fam2 = family.doubled()
    rows, spread2 = [], []
    names = list(tests)
    for i, key in enumerate(names):
        f = tests[key]
        lip = float(lip_norm(f, s).value)
        c1 = float(campanato_norm(f, s, N, family=family).value)
        c2 = float(campanato_norm(f, s, N, family=fam2).value)
        r1 = lip / c1 if c1 > 0 else float("inf")
        r2 = lip / c2 if c2 > 0 else float("inf")
        rows.append([i, lip, c1, r1])
        spread2.append(max(r2, 1 / r2))
    table = np.array(rows)
    dev = np.maximum(table[:, 3], 1 / table[:, 3])
    k = int(np.argmax(dev))
    rep = BoundReport(
        name=f"campanato-equiv(s={s:g}, N={N})",
        params={
            "s": s,
            "N": N,
            "tests": names,
            "ratio_min": float(table[:, 3].min()),
            "ratio_max": float(table[:, 3].max()),
            "window": list(window),
        },
        samples=len(rows),
        constant=float(dev.max()),
        refined=float(max(spread2)),
        worst={"test": float(k)},
        columns=["test"],
        table=np.column_stack([table[:, 0], table[:, 1], table[:, 2], table[:, 3]]),
    )
    return rep


__all__ = [
    "BoundSpec",
    "campanato_test_set",
    "check_HK",
    "check_QQ",
    "check_campanato_equiv",
    "check_maximal_atoms",
    "check_ddKj",
    "check_kernel_RT",
    "check_lemma_CN",
    "check_lip_eg",
    "grade_hczo",
    "heat_hczo",
    "riesz_hczo",
    "zero_kernel",
]

"""Constructive decomposition of a small-regime molecule into scaled atoms.

The molecule is split over the annuli ``U_j(B)``; on each annulus the
polynomials ``(x - x_B)^alpha``, ``|alpha| <= floor(omega)``, are
orthonormalized for the averaged inner product, a dual basis is formed,
and summation by parts over the tail moments yields three families of
pieces. All integrals use the same discrete quadrature, so the algebraic
identities hold to rounding error.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..core.grid import GridFn
from ..core.io import gridfn_to_csv
from .atoms import Molecule
from .balls import SMALL, monomial_exponents, monomials

J_CAP = 8
BUDGET_FRACTION = 1e-3
GRAM_COND_LIMIT = 1e12
TAIL_ANNULI = 3


class DecompositionError(ValueError):
    """Hypotheses of the decomposition are not met."""


@dataclass
class AnnulusBasis:
    """Polynomial data on one annulus.

    Attributes
    ----------
    volume : float
        Discrete ``|U_j|`` (sum of quadrature weights).
    lam : ndarray
        ``lam[a, b]``: coefficient of ``(x - x_B)^beta`` in ``upsilon_{j,alpha}``.
    dual : ndarray
        ``dual[a, b]``: coefficient of ``(x - x_B)^beta`` in ``nu_{j,alpha}``.
    upsilon, nu : ndarray, shape (A, N_j)
        Values on the annulus nodes.
    gram_cond : float
        Condition number of the scaled Gram matrix.
    """

    j: int
    volume: float
    lam: np.ndarray
    dual: np.ndarray
    upsilon: np.ndarray
    nu: np.ndarray
    gram_cond: float


@dataclass
class Decomposition:
    """Pieces and measured constants.

    Piece values live on the full node set (zero off their support).
    ``pieces_j[j]``, ``pieces_ja[(j, alpha)]``, ``pieces_a[alpha]``.
    """

    ball: object
    params: object
    J: int
    exponents: list
    points: np.ndarray
    weights: np.ndarray
    labels: np.ndarray
    values: np.ndarray
    bases: list
    moments: np.ndarray
    N: np.ndarray
    projections: list
    pieces_j: dict
    pieces_ja: dict
    pieces_a: dict
    constants: dict = field(default_factory=dict)
    diagnostics: dict = field(default_factory=dict)

    def reassemble(self):
        total = np.zeros_like(self.values)
        for v in list(self.pieces_j.values()) + list(self.pieces_ja.values()) + list(self.pieces_a.values()):
            total = total + v
        return total

    def gridfn(self, values):
        return GridFn(self.points, self.weights, values)

    def manifest(self):
        return {
            "ball": {"center": list(self.ball.center), "radius": self.ball.radius, "rho": self.ball.rho},
            "params": {
                "p": self.params.p,
                "q": self.params.q,
                "delta": self.params.delta,
                "omega": self.params.omega,
            },
            "J": self.J,
            "constants": dict(self.constants),
            "gram_condition": [b.gram_cond for b in self.bases],
            "diagnostics": dict(self.diagnostics),
        }


def choose_J(ball, params, cap=J_CAP):
    """Smallest ``J`` whose molecule budget falls below ``1e-3`` of the ``j = 0`` budget."""
    e = 1.0 / params.q - 1.0 / params.p
    base = ball.volume ** e
    for J in range(cap + 1):
        if 2.0 ** (-J * params.delta) * ball.dilate(2 ** J).volume ** e < BUDGET_FRACTION * base:
            return J
    return cap


def _lq(values, weights, q):
    if np.isinf(q):
        return float(np.max(np.abs(values))) if values.size else 0.0
    return float(np.sum(weights * np.abs(values) ** q) ** (1.0 / q))


def _inner(w, vol, f, g):
    return (f * w) @ g.T / vol


def annulus_basis(j, ball, exponents, points, weights):
    """Two-pass Gram-Schmidt and dual basis on the nodes of ``U_j``."""
    vol = float(weights.sum())
    s = ball.radius * 2.0 ** j
    E = monomials(points, ball.x, exponents, s).T  # (A, Nj), scaled monomials
    G = _inner(weights, vol, E, E)
    ev = np.linalg.eigvalsh(G)
    cond = float(ev[-1] / ev[0]) if ev[0] > 0 else float("inf")
    if not cond < GRAM_COND_LIMIT:
        raise DecompositionError(f"singular Gram matrix on U_{j}: condition number {cond:.3g}")
    A = len(exponents)
    L = np.zeros((A, A))
    U = np.zeros_like(E)
    for a in range(A):
        v = E[a].copy()
        c = np.zeros(A)
        c[a] = 1.0
        for _ in range(2):
            for b in range(a):
                proj = _inner(weights, vol, v, U[b])
                v = v - proj * U[b]
                c = c - proj * L[b]
        nrm = np.sqrt(_inner(weights, vol, v, v))
        U[a] = v / nrm
        L[a] = c / nrm
    scale = np.array([s ** -sum(e) for e in exponents])
    # dual in scaled monomials: diag(s^-|alpha|) G_s^{-1}, with G_s^{-1} = L^T L
    Ds = scale[:, None] * (L.T @ L)
    nu = Ds @ E
    return AnnulusBasis(j, vol, L * scale[None, :], Ds * scale[None, :], U, nu, cond)


def _sample(m, ball, J):
    if isinstance(m, Molecule):
        g, f = m.sample(J + TAIL_ANNULI)
        return g.points, g.weights, g.labels, f.values
    if isinstance(m, GridFn):
        if m.weights is None:
            raise DecompositionError("sampled molecule needs quadrature weights")
        return m.points, m.weights, ball.annulus_index(m.points), np.asarray(m.values, dtype=float)
    raise TypeError("expected a Molecule or a GridFn")


def decompose_molecule(m, ball, params, J=None, tail_tol=None):
    """Decompose a molecule over ``U_0, ..., U_J``.

    Parameters
    ----------
    m : Molecule or GridFn
        A GridFn must carry weights; its nodes are labelled by annulus.
    J : int, optional
        Default :func:`choose_J`.
    tail_tol : float, optional
        Bound for ``||m||_q`` beyond ``2^J B``; default ``1e-3 |B|^{1/q-1/p}``.

    Raises
    ------
    DecompositionError
        Ball not small, ``delta`` inadmissible, annulus without nodes,
        singular Gram matrix, or tail above tolerance.
    """
    if ball.regime != SMALL:
        raise DecompositionError(f"ball must satisfy r_B < rho_B/8 (regime is {ball.regime})")
    n = ball.dimension
    try:
        params.check_delta(n)
    except ValueError as exc:
        raise DecompositionError(str(exc)) from None
    J = choose_J(ball, params) if J is None else int(J)
    e = 1.0 / params.q - 1.0 / params.p
    tail_tol = BUDGET_FRACTION * ball.volume ** e if tail_tol is None else tail_tol
    points, weights, labels, values = _sample(m, ball, J)
    tail = labels > J
    tail_norm = _lq(values[tail], weights[tail], params.q)
    if tail_norm > tail_tol:
        raise DecompositionError(f"tail tolerance unmet: ||m||_q beyond 2^J B = {tail_norm:.3g} > {tail_tol:.3g}")

    exps = monomial_exponents(n, params.floor_omega)
    A = len(exps)
    Vfull = monomials(points, ball.x, exps).T  # (A, N), unscaled
    bases, moments = [], np.zeros((J + 1, A))
    masks = []
    for j in range(J + 1):
        mask = labels == j
        if not mask.any():
            raise DecompositionError(f"insufficient grid coverage: U_{j} has no nodes")
        masks.append(mask)
        bases.append(annulus_basis(j, ball, exps, points[mask], weights[mask]))
        moments[j] = _inner(weights[mask], bases[j].volume, values[mask], Vfull[:, mask])

    # N[j, a] = sum_{k >= j} |U_k| <m_k, (x - x_B)^alpha>_k, N[J+1] = 0
    vols = np.array([b.volume for b in bases])
    N = np.zeros((J + 2, A))
    N[: J + 1] = np.cumsum((vols[:, None] * moments)[::-1], axis=0)[::-1]

    size = values.size
    projections, pieces_j, pieces_ja, pieces_a = [], {}, {}, {}
    nu_full = []
    for j, (mask, b) in enumerate(zip(masks, bases)):
        Pj = np.zeros(size)
        Pj[mask] = moments[j] @ b.nu
        projections.append(Pj)
        aj = np.zeros(size)
        aj[mask] = values[mask] - Pj[mask]
        pieces_j[j] = aj
        nf = np.zeros((A, size))
        nf[:, mask] = b.nu
        nu_full.append(nf)
    for j in range(J):
        for a, alpha in enumerate(exps):
            pieces_ja[(j, alpha)] = N[j + 1, a] * (nu_full[j + 1][a] / vols[j + 1] - nu_full[j][a] / vols[j])
    for a, alpha in enumerate(exps):
        pieces_a[alpha] = nu_full[0][a] * N[0, a] / vols[0]

    dec = Decomposition(
        ball, params, J, exps, points, weights, labels, values, bases, moments, N,
        projections, pieces_j, pieces_ja, pieces_a,
    )
    _measure(dec, nu_full, tail_norm)
    return dec


def _measure(dec, nu_full, tail_norm):
    ball, params, J = dec.ball, dec.params, dec.J
    p, q, delta, omega = params.p, params.q, params.delta, params.omega
    e = 1.0 / q - 1.0 / p
    w, x = dec.weights, dec.points
    V = monomials(x, ball.x, dec.exponents).T
    r = ball.radius

    def budget(j):
        return 2.0 ** (-j * delta) * ball.dilate(2 ** j).volume ** e

    C1 = max(_lq(v, w, q) / budget(j) for j, v in dec.pieces_j.items())
    C2 = max((_lq(v, w, q) / budget(j) for (j, _), v in dec.pieces_ja.items()), default=0.0)
    C3 = max(_lq(v, w, q) / ball.volume ** e for v in dec.pieces_a.values())
    dec.constants.update(C1=C1, C2=C2, C3=C3)

    # support and moment properties
    mol8 = max(float(np.max(np.abs(V @ (w * v)))) for v in dec.pieces_j.values())
    mol9 = max((float(np.max(np.abs(V @ (w * v)))) for v in dec.pieces_ja.values()), default=0.0)
    mol11b = 0.0
    for a, alpha in enumerate(dec.exponents):
        mom = V @ (w * dec.pieces_a[alpha])
        target = np.zeros(len(dec.exponents))
        target[a] = dec.N[0, a]
        mol11b = max(mol11b, float(np.max(np.abs(mom - target))))
    mol11c = max(
        abs(dec.N[0, a]) / (ball.volume ** (1 - 1 / p) * (r / ball.rho) ** (omega - sum(al)) * r ** sum(al))
        for a, al in enumerate(dec.exponents)
    )
    support = 0.0
    for (j, _), v in dec.pieces_ja.items():
        support = max(support, float(np.max(np.abs(v[dec.labels > j + 1]), initial=0.0)))
    for j, v in dec.pieces_j.items():
        support = max(support, float(np.max(np.abs(v[dec.labels != j]), initial=0.0)))
    for v in dec.pieces_a.values():
        support = max(support, float(np.max(np.abs(v[dec.labels != 0]), initial=0.0)))

    # dual-basis and Gram-Schmidt diagnostics
    dual = 0.0
    nu_bound, ups_bound, lam_bound, N_decay = 0.0, 0.0, 0.0, 0.0
    for j, b in enumerate(dec.bases):
        mask = dec.labels == j
        G = (b.nu * w[mask]) @ V[:, mask].T / b.volume
        dual = max(dual, float(np.max(np.abs(G - np.eye(len(dec.exponents))))))
        s = 2.0 ** j * r
        for a, al in enumerate(dec.exponents):
            nu_bound = max(nu_bound, float(np.max(np.abs(b.nu[a]))) * s ** sum(al))
            lam_bound = max(lam_bound, float(np.max(np.abs(b.lam[a]))) * s ** sum(al))
            N_decay = max(
                N_decay,
                abs(dec.N[j, a]) / (2.0 ** (-j * delta) * s ** sum(al) * ball.dilate(2 ** j).volume ** (1 - 1 / p)),
            )
        ups_bound = max(ups_bound, float(np.max(np.abs(b.upsilon))))

    # telescoping: sum_j P_j = sum_alpha sum_j (N_j - N_{j+1}) nu_j / |U_j|
    lhs = np.sum(dec.projections, axis=0)
    rhs = np.zeros_like(lhs)
    for j, b in enumerate(dec.bases):
        for a in range(len(dec.exponents)):
            rhs = rhs + (dec.N[j, a] - dec.N[j + 1, a]) * nu_full[j][a] / b.volume
    tele = float(np.sqrt(np.sum(w * (lhs - rhs) ** 2)))

    resid = float(np.sqrt(np.sum(w * (dec.reassemble() - dec.values) ** 2)))
    dec.diagnostics.update(
        reassembly_L2=resid,
        tail_Lq=tail_norm,
        telescoping_L2=tele,
        mol8_moment=mol8,
        mol9_moment=mol9,
        mol11b_moment=mol11b,
        mol11c_ratio=float(mol11c),
        support_leak=support,
        dual_residual=dual,
        nu_sup_scaled=nu_bound,
        upsilon_sup=ups_bound,
        lambda_scaled=lam_bound,
        N_decay=float(N_decay),
        gram_condition_max=max(b.gram_cond for b in dec.bases),
    )


def stability(m, ball, params, J=None):
    """``C1, C2, C3`` at ``J`` and ``J + 1`` with their ratios."""
    J = choose_J(ball, params) if J is None else J
    d0 = decompose_molecule(m, ball, params, J=J)
    d1 = decompose_molecule(m, ball, params, J=J + 1)
    out = {}
    for k in ("C1", "C2", "C3"):
        a, b = d0.constants[k], d1.constants[k]
        out[k] = (a, b, (b / a) if a > 0 else (1.0 if b == 0 else float("inf")))
    return out


def export_decomposition(dec, outdir, drop_below=None):
    """One CSV per piece plus ``manifest.json``; returns the written paths.

    Pieces with ``L^2`` norm at most ``drop_below`` are listed in the
    manifest under ``negligible`` instead of being written.
    """
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    paths = []

    def tag(alpha):
        return "_".join(str(a) for a in alpha)

    named = [(f"a_j{j}.csv", v) for j, v in dec.pieces_j.items()]
    named += [(f"a_j{j}_alpha{tag(alpha)}.csv", v) for (j, alpha), v in dec.pieces_ja.items()]
    named += [(f"a_alpha{tag(alpha)}.csv", v) for alpha, v in dec.pieces_a.items()]
    negligible = []
    for name, v in named:
        if drop_below is not None and np.sqrt(np.sum(dec.weights * np.abs(v) ** 2)) <= drop_below:
            negligible.append(name)
            continue
        p = out / name
        gridfn_to_csv(dec.gridfn(v), p)
        paths.append(p)
    man = dec.manifest()
    man["pieces"] = [p.name for p in paths]
    man["negligible"] = negligible
    mp = out / "manifest.json"
    mp.write_text(json.dumps(man, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    paths.append(mp)
    return paths

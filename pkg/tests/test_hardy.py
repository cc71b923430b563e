"""Balls, atoms, molecules, decomposition and the norm estimators."""

import json

import numpy as np
import pytest

from hermite_kit.core.basis import BasisSpec, CoefVec
from hermite_kit.core.functions import hermite_eval_1d
from hermite_kit.core.grid import GridFn, uniform_grid
from hermite_kit.hardy import (
    MEDIUM,
    OVERSIZED,
    SMALL,
    Ball,
    BallFamily,
    DecompositionError,
    SpaceParams,
    antisymmetric_atom,
    ball_grid,
    bmo_norm,
    campanato_multiplier,
    campanato_norm,
    decompose_molecule,
    export_decomposition,
    indicator_atom,
    lemma_AE_check,
    lip_norm,
    make_bump,
    make_g,
    maximal_function,
    projected_atom,
    psi,
    stability,
    synthetic_molecule,
    t_sample,
    validate_atom,
    validate_molecule,
)
from hermite_kit.spectral import build_admissible


def test_ball_regimes():
    assert Ball((0.0,), 1 / 16).regime == SMALL
    assert Ball((0.0,), 1 / 8).regime == MEDIUM
    assert Ball((0.0,), 0.5).regime == MEDIUM
    assert Ball((0.0,), 0.6).regime == OVERSIZED
    assert Ball((3.0,), 1 / 16).regime == MEDIUM  # rho(3) = 1/4
    with pytest.raises(ValueError):
        Ball((0.0,), 0.0)


def test_annulus_index_and_volume():
    b = Ball((1.0,), 0.5)
    assert b.annulus_index([[1.2], [1.6], [2.0], [3.5]]).tolist() == [0, 1, 1, 3]
    assert b.volume == pytest.approx(1.0)
    assert b.annulus_volume(2) == pytest.approx(2.0)
    g = ball_grid(b, 3)
    for j in range(4):
        assert g.weights[g.mask(j)].sum() == pytest.approx(b.annulus_volume(j), rel=1e-12)


def test_space_params_validation_and_delta():
    with pytest.raises(ValueError):
        SpaceParams(p=1.5)
    prm = SpaceParams(p=1.0, omega=2.5, delta=2.0)
    with pytest.raises(ValueError, match="delta > max"):
        prm.check_delta(1)
    SpaceParams(p=0.5, omega=2.5, delta=1.5).check_delta(1)  # threshold max(0, 2 - 1) = 1
    assert prm.floor_omega == 2 and prm.omega_star == pytest.approx(0.5)


# ---------------------------------------------------------------------------
# atoms and molecules


def _sampled(mol, J=0):
    return mol.sample(J)[1]


def test_indicator_atom_medium_ball():
    ball = Ball((0.0,), 0.25)
    prm = SpaceParams(p=1.0, q=2.0, M=0)
    rep = validate_atom(_sampled(indicator_atom(ball, prm)), ball, prm)
    assert rep.passed
    assert not any(c.required for c in rep.conditions if c.name.startswith("(iv)"))


def test_indicator_atom_small_ball_lacks_cancellation():
    ball = Ball((0.0,), 1 / 16)
    prm = SpaceParams(p=1.0, q=2.0, M=0)
    rep = validate_atom(_sampled(indicator_atom(ball, prm)), ball, prm)
    assert not rep.passed
    assert "INVALID" in rep.summary()


def test_antisymmetric_atom_small_ball():
    ball = Ball((0.0,), 1 / 16)
    prm = SpaceParams(p=1.0, q=2.0, M=0)
    rep = validate_atom(_sampled(antisymmetric_atom(ball, prm)), ball, prm)
    assert rep.passed
    assert rep["(iv) |∫(x-x_B)^(0,) a|"].measured < 1e-12


@pytest.mark.parametrize("M", [0, 1, 2])
def test_projected_atom_is_a_molecule(M):
    ball = Ball((0.0,), 1 / 32)
    prm = SpaceParams(p=1.0, q=2.0, M=M, omega=min(M + 1, 1.5), delta=1.0)
    atom = projected_atom(ball, prm)
    assert validate_atom(_sampled(atom), ball, prm).passed
    assert validate_molecule(atom, ball, prm, J=4).passed


def test_molecule_requires_grid_for_samples():
    ball = Ball((0.0,), 1 / 16)
    f = GridFn(np.zeros((3, 1)), np.ones(3), np.zeros(3))
    with pytest.raises(ValueError):
        validate_molecule(f, ball, SpaceParams())
    g = ball_grid(ball, 1)
    sub = g.gridfn(np.ones(g.weights.size))
    with pytest.raises(ValueError, match="insufficient grid coverage"):
        validate_molecule(sub, ball, SpaceParams(), J=3, grid=g)


def test_synthetic_molecule_unknown_kind():
    with pytest.raises(KeyError, match="available"):
        synthetic_molecule("square", Ball((0.0,), 1 / 16), SpaceParams())


# ---------------------------------------------------------------------------
# decomposition


def test_atom_decomposes_to_single_piece():
    ball = Ball((0.0,), 1 / 16)
    prm = SpaceParams(p=1.0, q=2.0, M=0, omega=0.5, delta=1.5)
    atom = antisymmetric_atom(ball, prm)
    dec = decompose_molecule(atom, ball, prm)
    w = dec.weights
    l2 = lambda v: float(np.sqrt(np.sum(w * v ** 2)))  # noqa: E731
    assert l2(dec.pieces_j[0] - dec.values) <= 1e-10 * l2(dec.values)
    others = [v for j, v in dec.pieces_j.items() if j] + list(dec.pieces_ja.values()) + list(dec.pieces_a.values())
    assert max(l2(v) for v in others) <= 1e-10


@pytest.mark.parametrize(
    "kind,center,r,p,omega",
    [("odd-gauss", 0.0, 1 / 16, 1.0, 0.5), ("mexican-hat", 2.0, 1 / 40, 0.8, 1.5)],
)
def test_decomposition_invariants(kind, center, r, p, omega):
    ball = Ball((center,), r)
    prm = SpaceParams(p=p, q=2.0, omega=omega, delta=1.5)
    mol = synthetic_molecule(kind, ball, prm)
    dec = decompose_molecule(mol, ball, prm)
    d = dec.diagnostics
    assert d["reassembly_L2"] <= 1e-8
    assert d["mol8_moment"] <= 1e-9
    assert d["mol11b_moment"] <= 1e-9
    assert d["dual_residual"] <= 1e-9
    assert d["telescoping_L2"] <= 1e-9
    assert d["support_leak"] == 0.0
    assert all(np.isfinite(v) for v in dec.constants.values())


def test_decomposition_stability():
    ball = Ball((0.0,), 1 / 16)
    prm = SpaceParams(p=1.0, q=2.0, omega=0.5, delta=1.5)
    st = stability(synthetic_molecule("odd-gauss", ball, prm), ball, prm)
    for k in ("C1", "C2", "C3"):
        assert 1 / 1.1 <= st[k][2] <= 1.1


def test_decomposition_refusals():
    prm = SpaceParams(p=1.0, q=2.0, omega=0.5, delta=1.5)
    with pytest.raises(DecompositionError, match="regime"):
        decompose_molecule(indicator_atom(Ball((0.0,), 0.25), prm), Ball((0.0,), 0.25), prm)
    bad = SpaceParams(p=1.0, q=2.0, omega=2.5, delta=1.0)
    with pytest.raises(DecompositionError, match="delta"):
        decompose_molecule(indicator_atom(Ball((0.0,), 1 / 16), bad), Ball((0.0,), 1 / 16), bad)
    ball = Ball((0.0,), 1 / 16)
    mol = synthetic_molecule("skew-gauss", ball, prm)
    with pytest.raises(DecompositionError, match="tail"):
        decompose_molecule(mol, ball, prm, J=1)


def test_export_decomposition(tmp_path):
    ball = Ball((0.0,), 1 / 16)
    prm = SpaceParams(p=1.0, q=2.0, omega=0.5, delta=1.5)
    dec = decompose_molecule(antisymmetric_atom(ball, prm), ball, prm)
    paths = export_decomposition(dec, tmp_path, drop_below=1e-10)
    man = json.loads((tmp_path / "manifest.json").read_text())
    assert man["pieces"] == ["a_j0.csv"]
    assert len(man["negligible"]) >= 1
    assert len(paths) == 2


# ---------------------------------------------------------------------------
# bump


def test_psi_values():
    assert psi(0.0) == 1.0 and psi(1.0) == 1.0 and psi(2.0) == 0.0 and psi(3.0) == 0.0
    assert psi(1.5) == pytest.approx(0.5)


def test_bump_and_g():
    chi = make_bump(2.0)  # rho(2) = 1/3
    assert chi([[2.0]])[0] == 1.0
    assert chi([[2.0 + 2 / 3]])[0] == 0.0
    g = make_g(2.0, 1)
    x = np.array([[1.9], [2.2]])
    np.testing.assert_allclose(g(x), (x[:, 0] - 2.0) * chi(x))
    np.testing.assert_array_equal(make_g(2.0, 0)(x), chi(x))
    with pytest.raises(ValueError):
        make_g((0.0, 1.0), 1)


def test_bump_derivatives_scale_with_rho():
    """max |chi'| * rho(x0) is the same for every x0."""
    vals = []
    for x0 in (0.0, 2.0, 8.0):
        chi = make_bump(x0)
        t = np.linspace(x0 - 2.5 * chi.scale, x0 + 2.5 * chi.scale, 20001)
        d = np.gradient(chi(t[:, None]), t)
        vals.append(np.max(np.abs(d)) * chi.scale)
    assert max(vals) / min(vals) < 1.01


# ---------------------------------------------------------------------------
# maximal function and h^p


def test_maximal_of_h0():
    c = CoefVec.unit(BasisSpec(1, 0), (0,))
    x = np.linspace(-3, 3, 13)
    times = t_sample()
    m = maximal_function(c, x, times)
    # e^{-t} h_0 decreases in t, so the smallest sampled time wins
    np.testing.assert_allclose(m.values, np.exp(-times[0]) * hermite_eval_1d(0, x), rtol=1e-14)
    assert m.values[6] == pytest.approx(hermite_eval_1d(0, 0.0), rel=2e-4)


def test_maximal_dominates_each_sample():
    c = CoefVec(BasisSpec(1, 6), [1.0, -0.5, 0.3, 0.0, 0.2, 0.1, -0.4])
    x = np.linspace(-4, 4, 17)
    times = t_sample(12)
    from hermite_kit.hardy import heat_orbit

    orbit = np.abs(heat_orbit(c, x, times))
    m, factor = maximal_function(c, x, times, diagnostic=True)
    assert np.all(m.values[None, :] >= orbit - 1e-15)
    assert factor >= 1.0


def test_lemma_AE_hypothesis_failure():
    ball = Ball((0.0,), 1 / 16)
    prm = SpaceParams(p=1.0, q=2.0, M=0)
    b = _sampled(indicator_atom(ball, prm))
    with pytest.raises(ValueError, match="hypothesis validation failed"):
        lemma_AE_check(b, ball, prm, "b", s=0.5)


def test_lemma_AE_mode_b():
    ball = Ball((0.0,), 1 / 16)
    prm = SpaceParams(p=1.0, q=2.0, M=0)
    b = _sampled(antisymmetric_atom(ball, prm))
    rep = lemma_AE_check(b, ball, prm, "b", s=0.5, count=8)
    assert rep.finite and rep.constant > 0


# ---------------------------------------------------------------------------
# norms


def test_bmo_of_constant_on_interior_balls():
    fam = BallFamily(R=2.0, centers=5, r_max=0.5)
    f = uniform_grid(-20, 20, 8001, func=lambda p: np.ones(len(p)))
    est = bmo_norm(f, fam)
    assert est.parts["oscillation"] <= 1e-12
    assert est.value == pytest.approx(1.0)


def test_lip_norm_of_h0_single_line():
    c = CoefVec.unit(BasisSpec(1, 0), (0,))
    est = lip_norm(c, 1.0)
    assert np.isfinite(est.value)
    system = build_admissible("partition")
    active = [j for j in range(8) if system.phi_j(j, 1.0) > 0]
    assert set(j for j, v in est.parts.items() if v > 0) == set(active)


def test_campanato_multiplier_exact():
    assert campanato_multiplier(0.5, 3, 2) == pytest.approx((1 - np.exp(-0.75)) ** 2, rel=1e-15)
    np.testing.assert_array_equal(campanato_multiplier(0.3, [0.0], 4), [0.0])


def test_campanato_requires_large_N():
    c = CoefVec.unit(BasisSpec(1, 2), (2,))
    with pytest.raises(ValueError, match="must be at least"):
        campanato_norm(c, 2.0, 1)


def test_estimators_monotone_under_refinement():
    c = CoefVec(BasisSpec(1, 8), np.linspace(1, -1, 9))
    fam = BallFamily(R=3.0, centers=7)
    for est in (campanato_norm(c, 0.5, 2, fam), lip_norm(c, 0.5), bmo_norm(c, fam)):
        assert est.refined >= est.value

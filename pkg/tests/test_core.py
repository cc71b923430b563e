"""Hermite functions, bases, quadrature, ladder calculus and CSV I/O."""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hermite_kit.core.basis import BasisSpec, CoefVec, MultiIndex, reindex
from hermite_kit.core.functions import (
    hermite_derivative_table,
    hermite_eval_1d,
    hermite_eval_nd,
    hermite_series_1d,
    hermite_table,
)
from hermite_kit.core.grid import (
    GridFn,
    InsufficientQuadrature,
    hermite_grid,
    synthesize,
    transform,
    uniform_grid,
)
from hermite_kit.core.io import (
    CSVFormatError,
    coefvec_from_csv,
    coefvec_to_csv,
    gridfn_from_csv,
    gridfn_to_csv,
)
from hermite_kit.core.ladder import (
    ANNIHILATION,
    CREATION,
    apply_L,
    critical_radius,
    derivative_apply,
    ladder_apply,
    normalize_letter,
    position_apply,
    word_apply,
)
from hermite_kit.core.quadrature import default_node_count, gauss_hermite_rule

# mpmath at 40 digits (normalized physicists' polynomials times the Gaussian)
H_ORACLE = [
    (0, 0.0, 0.75112554446494248286),
    (1, 0.5, 0.46871701988925172646),
    (3, 0.7, -0.47995350309611403362),
    (10, -1.3, -0.34999147167891238927),
    (40, 2.0, 0.14596024206081009848),
    (100, 5.0, 0.21085461968393164179),
    (400, 10.0, 0.13178731323126863729),
    (1000, 30.0, -0.013944824394386906175),
]

# roots of H_5
GH5_NODES = [-2.0201828704560856329, -0.95857246461381850711, 0.0, 0.95857246461381850711, 2.0201828704560856329]


@pytest.mark.parametrize("k,t,expected", H_ORACLE)
def test_hermite_eval_matches_oracle(k, t, expected):
    assert hermite_eval_1d(k, t) == pytest.approx(expected, rel=1e-12, abs=1e-15)


def test_hermite_table_agrees_with_single_evaluation():
    t = np.linspace(-8, 8, 33)
    tab = hermite_table(60, t)
    for k in (0, 7, 33, 60):
        np.testing.assert_allclose(tab[k], hermite_eval_1d(k, t), rtol=1e-13, atol=1e-16)


def test_hermite_table_no_overflow_far_out():
    tab = hermite_table(2000, np.array([0.0, 40.0, 80.0]))
    assert np.all(np.isfinite(tab))
    assert abs(tab[2000, 2]) < 1e-100


def test_series_matches_table():
    rng = np.random.default_rng(1)
    c = rng.standard_normal(31)
    t = np.linspace(-5, 5, 21)
    np.testing.assert_allclose(hermite_series_1d(c, t), c @ hermite_table(30, t), atol=1e-13)


def test_derivative_table_against_finite_difference():
    t = np.linspace(-3, 3, 13)
    d = hermite_derivative_table(12, t, order=1)
    e = 1e-6
    fd = (hermite_table(12, t + e) - hermite_table(12, t - e)) / (2 * e)
    np.testing.assert_allclose(d, fd, atol=1e-8)


def test_eval_nd_is_tensor_product():
    x = np.array([[0.3, -1.1], [2.0, 0.5]])
    v = hermite_eval_nd((2, 3), x)
    np.testing.assert_allclose(v, hermite_eval_1d(2, x[:, 0]) * hermite_eval_1d(3, x[:, 1]))


# ---------------------------------------------------------------------------
# quadrature


def test_gauss_hermite_nodes_are_roots_of_h5():
    np.testing.assert_allclose(gauss_hermite_rule(5).nodes, GH5_NODES, atol=1e-14)


def test_gauss_hermite_orthonormality_129_nodes():
    rule = gauss_hermite_rule(129)
    tab = hermite_table(64, rule.nodes)
    gram = (tab * rule.weights) @ tab.T
    assert np.max(np.abs(gram - np.eye(65))) <= 1e-10


def test_default_node_count():
    assert default_node_count(0) == 33
    assert default_node_count(48) == 129


def test_quadrature_integrates_gaussian():
    rule = gauss_hermite_rule(40)
    # ∫ exp(-t^2) dt = sqrt(pi)
    assert rule.integrate(np.exp(-rule.nodes ** 2)) == pytest.approx(np.sqrt(np.pi), rel=1e-13)


# ---------------------------------------------------------------------------
# bases and coefficient vectors


def test_basis_enumeration_graded_lex():
    b = BasisSpec(2, 2)
    assert [tuple(r) for r in b.indices] == [(0, 0), (0, 1), (1, 0), (0, 2), (1, 1), (2, 0)]
    assert b.count == 6
    assert list(b.eigenvalues) == [2, 4, 4, 6, 6, 6]
    assert b.block(2) == slice(3, 6)


@given(st.integers(1, 3), st.integers(0, 9))
def test_position_inverts_enumeration(n, K):
    b = BasisSpec(n, K)
    assert np.array_equal(b.positions(b.indices), np.arange(b.count))


def test_position_outside_basis():
    b = BasisSpec(2, 3)
    with pytest.raises(KeyError):
        b.position((2, 2))
    assert b.positions(np.array([[4, 0], [-1, 0]])).tolist() == [-1, -1]


def test_multi_index_ordering_and_validation():
    assert MultiIndex((0, 2)) < MultiIndex((1, 1)) < MultiIndex((0, 3))
    assert MultiIndex((1, 2)).eigenvalue == 8
    with pytest.raises(ValueError):
        MultiIndex((1, -1))


def test_coefvec_arithmetic_aligns_degrees():
    a = CoefVec(BasisSpec(1, 2), [1.0, 2.0, 3.0])
    b = CoefVec(BasisSpec(1, 4), [1.0, 0.0, 0.0, 0.0, 5.0])
    s = a + b
    assert s.basis.degree == 4
    np.testing.assert_allclose(s.values, [2, 2, 3, 0, 5])
    assert a.inner(b) == pytest.approx(1.0)
    np.testing.assert_allclose(reindex(b, 1).values, [1, 0])
    with pytest.raises(ValueError):
        CoefVec(BasisSpec(1, 2), [1.0])


@given(st.integers(1, 2), st.integers(0, 30), st.integers(0, 2**31 - 1))
def test_parseval(n, K, seed):
    K = min(K, 30 if n == 1 else 14)
    rng = np.random.default_rng(seed)
    basis = BasisSpec(n, K)
    c = CoefVec(basis, rng.standard_normal(basis.count))
    grid = hermite_grid(K, n)
    f = synthesize(c, grid)
    assert abs(f.lp_norm(2) ** 2 - c.norm() ** 2) <= 1e-10 * max(1.0, c.norm() ** 2)


# ---------------------------------------------------------------------------
# ladder calculus


def test_ladder_factors_on_unit_vectors():
    e3 = CoefVec.unit(BasisSpec(1, 3), (3,))
    up = ladder_apply(CREATION, 0, e3)
    down = ladder_apply(ANNIHILATION, 0, e3)
    assert up.values[4] == pytest.approx(np.sqrt(8.0))
    assert down.values[2] == pytest.approx(np.sqrt(6.0))
    assert np.count_nonzero(up.values) == 1 and np.count_nonzero(down.values) == 1
    # annihilation of h_0 vanishes
    assert ladder_apply(ANNIHILATION, 0, CoefVec.unit(BasisSpec(1, 0), (0,))).norm() == 0


def test_letter_aliases():
    assert normalize_letter("AStar") == ANNIHILATION
    with pytest.raises(ValueError):
        normalize_letter("B")


@given(st.integers(0, 2**31 - 1))
def test_ladder_pointwise(seed):
    """A = -d/dt + t and A* = d/dt + t act pointwise as their coefficient maps."""
    rng = np.random.default_rng(seed)
    c = CoefVec(BasisSpec(1, 12), rng.standard_normal(13))
    t = np.linspace(-4, 4, 17)
    f = synthesize(c, t).values
    df = synthesize(c, t, derivative=(1,)).values
    np.testing.assert_allclose(synthesize(ladder_apply(CREATION, 0, c), t).values, -df + t * f, atol=1e-11)
    np.testing.assert_allclose(synthesize(ladder_apply(ANNIHILATION, 0, c), t).values, df + t * f, atol=1e-11)
    np.testing.assert_allclose(synthesize(position_apply(0, c), t).values, t * f, atol=1e-11)
    np.testing.assert_allclose(synthesize(derivative_apply(0, c), t).values, df, atol=1e-11)


def test_annihilation_sign_matters():
    """Negative control: swapping the sign of the derivative in A* breaks the identity."""
    c = CoefVec.unit(BasisSpec(1, 4), (4,))
    t = np.linspace(-3, 3, 13)
    f = synthesize(c, t).values
    df = synthesize(c, t, derivative=(1,)).values
    got = synthesize(ladder_apply(ANNIHILATION, 0, c), t).values
    assert np.max(np.abs(got - (df + t * f))) < 1e-12
    assert np.max(np.abs(got - (-df + t * f))) > 0.1


def test_word_apply_commutator():
    """[A*, A] = 2 on a generic vector."""
    c = CoefVec(BasisSpec(1, 6), np.arange(1.0, 8.0))
    lhs = word_apply([(ANNIHILATION, 0), (CREATION, 0)], c) - word_apply([(CREATION, 0), (ANNIHILATION, 0)], c)
    np.testing.assert_allclose(reindex(lhs, 6).values, 2 * c.values, atol=1e-12)


def test_eigenrelation_via_ladder():
    """(-Δ + |x|^2) h_xi = (2|xi| + n) h_xi from exact second derivatives."""
    basis = BasisSpec(2, 10)
    t = np.linspace(-6, 6, 25)
    X = np.stack(np.meshgrid(t, t, indexing="ij"), -1).reshape(-1, 2)
    worst = 0.0
    for pos in range(basis.count):
        c = CoefVec.unit(basis, tuple(basis.indices[pos]))
        f = synthesize(c, X).values
        lap = synthesize(c, X, derivative=(2, 0)).values + synthesize(c, X, derivative=(0, 2)).values
        lhs = -lap + np.sum(X ** 2, axis=1) * f
        rhs = apply_L(c).values[pos] * f
        scale = np.maximum(np.abs(rhs), 1e-300)
        mask = np.abs(f) > 1e-8 * np.max(np.abs(f))
        worst = max(worst, float(np.max(np.abs(lhs - rhs)[mask] / scale[mask])))
    assert worst <= 1e-9


def test_critical_radius():
    assert critical_radius(0.0) == 1.0
    assert critical_radius(np.array([3.0, 4.0])) == pytest.approx(1 / 6)
    np.testing.assert_allclose(critical_radius(np.array([[1.0], [-3.0]])), [0.5, 0.25])


# ---------------------------------------------------------------------------
# grids and transforms


def test_transform_round_trip_h3():
    grid = hermite_grid(8, 1, func=lambda p: hermite_eval_1d(3, p[:, 0]))
    c = transform(grid, BasisSpec(1, 8))
    np.testing.assert_allclose(c.values, np.eye(9)[3], atol=1e-13)
    assert np.max(np.abs(synthesize(c, grid.points).values - grid.values)) <= 1e-10


def test_transform_rejects_coarse_grid():
    g = uniform_grid(-3, 3, 7, func=lambda p: np.exp(-p[:, 0] ** 2))
    with pytest.raises(InsufficientQuadrature):
        transform(g, BasisSpec(1, 10))
    with pytest.raises(InsufficientQuadrature):
        transform(GridFn(np.zeros(3), None, np.zeros(3)), BasisSpec(1, 1))


def test_gridfn_norms():
    g = uniform_grid(0.0, 1.0, 101, func=lambda p: p[:, 0])
    assert g.lp_norm(1) == pytest.approx(0.5, rel=1e-4)
    assert g.lp_norm(np.inf) == 1.0


# ---------------------------------------------------------------------------
# CSV


def test_gridfn_csv_round_trip(tmp_path):
    g = hermite_grid(4, 2, func=lambda p: p[:, 0] - 2 * p[:, 1])
    gridfn_to_csv(g, tmp_path / "g.csv")
    back = gridfn_from_csv(tmp_path / "g.csv")
    assert back.dimension == 2 and back.precision == g.precision
    np.testing.assert_array_equal(back.points, g.points)
    np.testing.assert_array_equal(back.values, g.values)
    np.testing.assert_array_equal(back.weights, g.weights)


def test_coefvec_csv_round_trip_complex(tmp_path):
    c = CoefVec(BasisSpec(2, 3), np.arange(10) * (1 + 0.5j))
    coefvec_to_csv(c, tmp_path / "c.csv")
    back = coefvec_from_csv(tmp_path / "c.csv")
    np.testing.assert_array_equal(back.values, c.values)


@pytest.mark.parametrize(
    "text,match",
    [
        ("# dim=1 weighted=true\n", "no data rows"),
        ("# dim=1 weighted=true\n0.0,1.0,2.0\n0.5,oops,1.0\n", "line 3"),
        ("# dim=1 weighted=true\n0.0,1.0\n", "line 2: expected 3 fields"),
        ("0.0,1.0,2.0\n", "missing 'dim"),
    ],
)
def test_gridfn_csv_errors_are_line_numbered(tmp_path, text, match):
    p = tmp_path / "bad.csv"
    p.write_text(text)
    with pytest.raises(CSVFormatError, match=match):
        gridfn_from_csv(p)

"""Heat semigroup, projectors, admissible cutoffs and pseudo-multipliers."""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hermite_kit.core.basis import BasisSpec, CoefVec
from hermite_kit.spectral import (
    REGISTRY,
    DyadicBlock,
    TruncationError,
    build_admissible,
    cutoff,
    get_symbol,
    heat_apply,
    heat_degree,
    heat_kernel,
    mehler_L,
    mehler_kernel,
    projector_diag,
    projector_QN,
    pseudo_kernel,
    pseudo_matrix,
    symbol_class_check,
)

# mpmath at 40 digits
MEHLER_ORACLE = [
    (0.5, 0.3, -0.7, 0.21031870545182174141),
    (0.1, 1.0, 1.2, 0.71285313471714514913),
    (2.0, -2.0, 3.0, 9.1752017420519103687e-5),
]
QDIAG_ORACLE = [
    (16, 1.1, 1.8507030004547763943),
    (64, 0.0, 3.6432762355526510612),
    (64, 7.5, 2.7529698895100954231),
]


@pytest.mark.parametrize("t,x,y,expected", MEHLER_ORACLE)
def test_mehler_matches_oracle(t, x, y, expected):
    assert float(mehler_kernel(t, [x], [y])[0]) == pytest.approx(expected, rel=1e-13)


@pytest.mark.parametrize("t,x,y,expected", MEHLER_ORACLE)
def test_heat_series_matches_oracle(t, x, y, expected):
    assert float(heat_kernel(t, [x], [y])[0]) == pytest.approx(expected, rel=1e-9, abs=1e-13)


def test_mehler_is_tensor_product():
    x = np.array([[0.3, -1.0]])
    y = np.array([[0.5, 0.2]])
    k2 = mehler_kernel(0.4, x, y)[0]
    k1 = mehler_kernel(0.4, x[:, :1], y[:, :1])[0] * mehler_kernel(0.4, x[:, 1:], y[:, 1:])[0]
    assert k2 == pytest.approx(k1, rel=1e-14)


def test_mehler_y_derivative_against_finite_difference():
    x, y, e = np.array([0.4]), np.array([-0.3]), 1e-5
    d1 = mehler_kernel(0.7, x, y, dy=1)[0]
    fd = (mehler_kernel(0.7, x, y + e)[0] - mehler_kernel(0.7, x, y - e)[0]) / (2 * e)
    assert d1 == pytest.approx(fd, rel=1e-8)
    with pytest.raises(ValueError):
        mehler_kernel(0.7, x, y, dy=3)


def test_mehler_L_is_minus_time_derivative():
    x, y, t, e = np.array([0.4]), np.array([1.3]), 0.6, 1e-5
    fd = -(mehler_kernel(t + e, x, y)[0] - mehler_kernel(t - e, x, y)[0]) / (2 * e)
    assert mehler_L(t, x, y)[0] == pytest.approx(fd, rel=1e-8)


def test_heat_time_must_be_positive():
    with pytest.raises(ValueError):
        heat_apply(0.0, CoefVec.zeros(BasisSpec(1, 2)))


def test_heat_degree_cap():
    assert heat_degree(1.0) < 20
    with pytest.raises(TruncationError):
        heat_degree(1e-4, cap=100)


@given(st.floats(0.05, 2.0), st.floats(0.05, 2.0), st.integers(0, 2**31 - 1))
def test_semigroup_law(t, s, seed):
    rng = np.random.default_rng(seed)
    c = CoefVec(BasisSpec(2, 12), rng.standard_normal(BasisSpec(2, 12).count))
    lhs = heat_apply(t, heat_apply(s, c))
    rhs = heat_apply(t + s, c)
    assert np.max(np.abs(lhs.values - rhs.values)) <= 1e-14 * max(1.0, c.norm())


@pytest.mark.parametrize("N,x,expected", QDIAG_ORACLE)
def test_projector_diagonal_matches_oracle(N, x, expected):
    assert float(projector_diag(N, [x])[0]) == pytest.approx(expected, rel=1e-12)


def test_projector_is_idempotent_under_quadrature():
    from hermite_kit.core.quadrature import gauss_hermite_rule

    rule = gauss_hermite_rule(80)
    w = rule.weights
    Q = projector_QN(10, rule.nodes, rule.nodes, table=True)
    np.testing.assert_allclose((Q * w) @ Q, Q, atol=1e-11)


def test_projector_diagonal_nonnegative():
    assert np.all(projector_diag(20, np.linspace(-9, 9, 50)) >= 0)


# ---------------------------------------------------------------------------
# admissible systems and dyadic blocks


def test_cutoff_values():
    assert cutoff(0.4) == 1.0 and cutoff(1.0) == 0.0
    assert 0.0 < float(cutoff(0.75)) < 1.0


def test_partition_of_unity():
    sys_ = build_admissible("partition")
    lam = np.linspace(0.5, 2.0 ** 9, 4001)
    assert np.max(np.abs(sys_.partial_sum(12, lam) - 1.0)) <= 1e-14


@pytest.mark.parametrize("mode", ["partition", "plain"])
def test_admissible_support_and_lower_bound(mode):
    sys_ = build_admissible(mode)
    assert np.all(sys_(np.array([0.0, 0.2, 0.25, 1.0, 1.5])) == 0.0)
    assert sys_.lower_bound() > 0.01


def test_unknown_admissible_mode():
    with pytest.raises(ValueError):
        build_admissible("sharp")


@pytest.mark.parametrize("j,expected", [(1, (0, 1)), (2, (0, 7)), (3, (2, 31))])
def test_order_range(j, expected):
    assert DyadicBlock(j, 1).order_range == expected


def test_block_members_respect_order_range():
    m = DyadicBlock(2, 2).members()
    lo, hi = DyadicBlock(2, 2).order_range
    assert m.sum(axis=1).min() == lo and m.sum(axis=1).max() == hi


# ---------------------------------------------------------------------------
# symbols and pseudo-multipliers


def test_registry_and_unknown_key():
    assert set(REGISTRY) == {"constant", "power", "riesz", "imaginary-power", "heat", "hormander", "modulation"}
    with pytest.raises(KeyError, match="available"):
        get_symbol("nope")


def test_symbol_values():
    xi = np.array([[0], [3]])
    x = np.zeros((2, 1))
    np.testing.assert_allclose(get_symbol("riesz", 1)(x, xi), [[1.0, 7 ** -0.5]] * 2)
    assert np.allclose(np.abs(get_symbol("imaginary-power", 2.0)(x, xi)), 1.0)
    assert not get_symbol("hormander", 1.0).x_independent


def test_constant_symbol_kernel_is_projector():
    x = np.linspace(-3, 3, 7)
    K = pseudo_kernel(get_symbol("constant", 1.0), x, x[::-1], degree=16)
    np.testing.assert_allclose(K, projector_QN(16, x, x[::-1]), atol=1e-13)


def test_heat_symbol_kernel_is_heat_series():
    x, y = np.linspace(-2, 2, 5), np.linspace(-1, 3, 5)
    K = pseudo_kernel(get_symbol("heat", 0.5), x, y, degree=40)
    np.testing.assert_allclose(K, heat_kernel(0.5, x, y, degree=40), atol=1e-13)


def test_pseudo_kernel_needs_one_truncation():
    with pytest.raises(ValueError):
        pseudo_kernel(get_symbol("constant"), [0.0], [0.0])


def test_pseudo_matrix_multiplication_operator():
    """Modulation by exp(i x) is unitary: its compressed matrix has norm at most 1."""
    M = pseudo_matrix(get_symbol("modulation"), BasisSpec(1, 20))
    assert np.linalg.norm(M, 2) <= 1.0 + 1e-10
    D = pseudo_matrix(get_symbol("power", 0.5), BasisSpec(1, 3))
    np.testing.assert_allclose(np.diag(D), np.sqrt([1, 3, 5, 7]))


@pytest.mark.parametrize("key,params", [("imaginary-power", (1.0,)), ("hormander", (1.0,)), ("riesz", (1,))])
def test_symbol_class_check_stable(key, params):
    rep = symbol_class_check(get_symbol(key, *params), x_count=9, xi_max=24, kappa_max=2, nu_max=1)
    assert rep.finite and rep.passed
    assert rep.constant < 10

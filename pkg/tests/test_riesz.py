"""Hermite-Riesz transforms: ladder words, coefficient maps and kernels."""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hermite_kit.core.basis import BasisSpec, CoefVec
from hermite_kit.core.grid import hermite_grid, synthesize
from hermite_kit.riesz import (
    DiagonalProximityError,
    LadderWord,
    RieszOp,
    first_order,
    min_distance,
    riesz_adjoint_apply,
    riesz_apply,
    riesz_kernel,
    riesz_kernel_piece,
    riesz_kernel_subordinated,
)

# first-order kernels, mpmath at 40 digits via the heat-kernel integral
RIESZ_ORACLE = [
    (0.5, -0.5, "A", 0.3847087930656132),
    (1.0, 2.0, "A", -0.02205845142523051),
    (0.5, -0.5, "A*", -0.1717427972419168),
    (-1.5, 0.25, "A*", 0.02481523574002031),
]


def _op(letter):
    return RieszOp(LadderWord((1,), (letter,)))


@pytest.mark.parametrize("x,y,letter,expected", RIESZ_ORACLE)
def test_subordinated_kernel_matches_oracle(x, y, letter, expected):
    got = float(riesz_kernel_subordinated(_op(letter), [x], [y])[0])
    assert got == pytest.approx(expected, rel=1e-7, abs=1e-10)


@pytest.mark.parametrize("x,y,letter,expected", RIESZ_ORACLE)
def test_smooth_series_converges_to_oracle(x, y, letter, expected):
    got = float(riesz_kernel(_op(letter), [x], [y], level=8)[0])
    assert got == pytest.approx(expected, abs=5e-6)


def test_refusal_near_diagonal():
    op = _op("A")
    with pytest.raises(DiagonalProximityError, match="raise the level"):
        riesz_kernel(op, [0.0], [0.1], level=7)
    with pytest.raises(DiagonalProximityError, match="singular"):
        riesz_kernel_subordinated(op, [0.3], [0.3])
    assert min_distance(7) == 0.5
    # sharp truncation does not refuse
    assert np.isfinite(riesz_kernel(op, [0.0], [0.1], degree=32)[0])


def test_diagnostic_is_small_far_from_diagonal():
    val, diag = riesz_kernel(_op("A"), [0.0], [2.0], level=7, diagnostic=True)
    assert diag[0] < 1e-5 * max(1.0, abs(val[0]))


def test_ladder_word_parse_and_coefficient():
    w = LadderWord.parse("1,2", "AStar")
    assert w.alpha == (1, 2) and w.letters == ("A*", "A*")
    assert w.order == 3 and w.shift.tolist() == [-1, -2]
    np.testing.assert_allclose(w.coefficient([[1, 2], [0, 5]]), [np.sqrt(2) * np.sqrt(4 * 2), 0.0])
    up = LadderWord((2,), ("A",))
    assert up.coefficient([[3]])[0] == pytest.approx(np.sqrt(8 * 10))
    assert up.adjoint().letters == ("A*",)
    with pytest.raises(ValueError):
        LadderWord((1, 0), ("A",))
    with pytest.raises(ValueError):
        LadderWord((-1,), ("A",))


def test_first_order_helper():
    assert first_order(1, "-", 2).word.alpha == (0, 1)
    assert first_order(0, "+").word.letters == ("A*",)
    with pytest.raises(ValueError):
        first_order(2, "-", 2)


@given(st.integers(0, 2), st.sampled_from(["A", "A*"]), st.integers(0, 2**31 - 1))
def test_adjoint_pairing(a, letter, seed):
    """<R f, g> = <f, R^* g> on finite expansions."""
    rng = np.random.default_rng(seed)
    op = RieszOp(LadderWord((a, 1), (letter, "A")))
    basis = BasisSpec(2, 8)
    f = CoefVec(basis, rng.standard_normal(basis.count))
    g = CoefVec(basis, rng.standard_normal(basis.count))
    lhs = riesz_apply(op, f).inner(g)
    rhs = f.inner(riesz_adjoint_apply(op, g))
    assert lhs == pytest.approx(rhs, rel=1e-12, abs=1e-12)


def test_first_order_transform_norms():
    """A* L^{-1/2} is a contraction; A L^{-1/2} has norm sqrt(2), attained on h_0."""
    rng = np.random.default_rng(3)
    c = CoefVec(BasisSpec(1, 40), rng.standard_normal(41))
    assert riesz_apply(_op("A*"), c).norm() <= c.norm() * (1 + 1e-12)
    assert riesz_apply(_op("A"), c).norm() <= np.sqrt(2) * c.norm()
    e0 = CoefVec.unit(BasisSpec(1, 0), (0,))
    assert riesz_apply(_op("A"), e0).norm() == pytest.approx(np.sqrt(2))


def test_kernel_represents_operator():
    """∫ K(x, y) f(y) dy equals the coefficient map for a finite expansion."""
    op = _op("A")
    c = CoefVec(BasisSpec(1, 6), np.linspace(1, 0.2, 7))
    grid = hermite_grid(20, 1)
    f = synthesize(c, grid).values
    x = np.array([-1.0, 0.5, 2.0])
    K = riesz_kernel(op, x, grid.points, degree=20, table=True)
    got = K @ (grid.weights * f)
    want = synthesize(riesz_apply(op, c), x).values
    np.testing.assert_allclose(got, want, atol=1e-11)


def test_pieces_sum_to_smooth_series():
    op = _op("A*")
    x, y = np.array([0.0, 1.0]), np.array([2.0, -1.0])
    total = sum(riesz_kernel_piece(op, j, x, y) for j in range(0, 6))
    np.testing.assert_allclose(total, riesz_kernel(op, x, y, level=5, check=False), atol=1e-12)


@pytest.mark.parametrize("letter", ["A", "A*"])
def test_first_order_norm_up_to_degree_200(letter):
    basis = BasisSpec(1, 200)
    mags = [riesz_apply(_op(letter), CoefVec.unit(basis, (k,))).norm() for k in range(201)]
    assert max(mags) <= np.sqrt(2) + 1e-12
    if letter == "A*":
        assert mags[0] == 0.0
        assert mags[3] == pytest.approx(np.sqrt(6 / 7))
    else:
        assert mags[3] == pytest.approx(np.sqrt(8 / 7))


def test_riesz_apply_degree_bookkeeping():
    op = RieszOp(LadderWord((2, 1), ("A*", "A")))
    basis = BasisSpec(2, 6)
    c = CoefVec(basis, np.ones(basis.count))
    out = riesz_apply(op, c)
    support = {tuple(r) for r, v in zip(out.basis.indices, out.values) if abs(v) > 0}
    expect = {(a - 2, b + 1) for a, b in basis.indices if a >= 2}
    assert support == expect

import numpy as np
import pytest

from dna_ensembles.core import Tensor, gradcheck, least_squares_residual
from dna_ensembles.core.ops.linalg import ols_fit


def _normal_equations_residual(regressor, target):
    augmented = np.hstack([regressor, np.ones((regressor.shape[0], 1))])
    coef = np.linalg.solve(augmented.T @ augmented, augmented.T @ target)
    return target - augmented @ coef


def test_residual_matches_normal_equations():
    rng = np.random.default_rng(0)
    regressor = rng.normal(size=(80, 50))
    target = rng.normal(size=(80, 64))

    ss_res, ss_total = least_squares_residual(Tensor(regressor), Tensor(target))
    oracle = np.sum(_normal_equations_residual(regressor, target) ** 2)

    assert ss_res.item() == pytest.approx(oracle, rel=1e-8)
    assert ss_total.item() == pytest.approx(np.sum(target**2), rel=1e-12)


def test_exact_linear_relation_leaves_no_residual():
    rng = np.random.default_rng(1)
    regressor = rng.normal(size=(30, 4))
    target = regressor @ rng.normal(size=(4, 3)) + rng.normal(size=3)

    residual, _coef, rank = ols_fit(regressor, target)
    assert rank == 5
    assert np.max(np.abs(residual)) < 1e-10


def test_rank_deficient_regressor_uses_the_pseudo_inverse():
    rng = np.random.default_rng(2)
    base = rng.normal(size=(20, 2))
    regressor = np.hstack([base, base[:, :1], np.zeros((20, 1))])
    target = rng.normal(size=(20, 2))

    residual, _coef, rank = ols_fit(regressor, target)
    full_residual, _c, _r = ols_fit(base, target)
    assert rank == 3
    np.testing.assert_allclose(residual, full_residual, atol=1e-10)


@pytest.mark.parametrize(
    ("regressor_shape", "target_shape", "match"),
    [
        ((5, 4), (5, 1), "underdetermined"),
        ((5, 3), (6, 1), "different row counts"),
        ((5,), (5, 1), "expects matrices"),
    ],
)
def test_invalid_regression_shapes(regressor_shape, target_shape, match):
    with pytest.raises(ValueError, match=match):
        ols_fit(np.ones(regressor_shape), np.ones(target_shape))


def test_residual_gradient_matches_finite_differences():
    rng = np.random.default_rng(3)
    regressor = rng.normal(size=(20, 3))
    target = rng.normal(size=(20, 2))

    def loss(z_r, z_t):
        return least_squares_residual(z_r, z_t)[0]

    assert gradcheck(loss, [regressor, target]) < 1e-6

"""Dense linear algebra: matrix products and least-squares residuals."""

__docformat__ = "google"

import numpy as np

from ...log import logger
from .base import Op, OpFamily

PINV_RCOND = 1e-10


def _matmul_forward(values, params):
    a, b = values
    if a.ndim != 2 or b.ndim != 2:
        raise ValueError(f"matmul expects matrices, got {a.shape} and {b.shape}")
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"matmul inner dimensions differ: {a.shape} @ {b.shape}")
    return a @ b, None


def _matmul_backward(grad, values, value, saved, params):
    a, b = values
    return grad @ b.T, a.T @ grad


def ols_fit(regressor, target, rcond=PINV_RCOND):
    """Regress ``target`` on ``[regressor, 1]`` by SVD pseudo-inverse.

    Args:
    - regressor (ndarray): N x P matrix, an intercept column is appended.
    - target (ndarray): N x Q matrix.
    - rcond (float): singular values below ``rcond * sigma_max`` are dropped.

    Returns:
    tuple: (residual N x Q, coefficients (P+1) x Q, rank of the augmented matrix).
    """
    regressor = np.asarray(regressor, dtype=np.float64)
    target = np.asarray(target, dtype=np.float64)
    if regressor.ndim != 2 or target.ndim != 2:
        raise ValueError(
            f"least squares expects matrices, got {regressor.shape} and {target.shape}"
        )
    n, p = regressor.shape
    if target.shape[0] != n:
        raise ValueError(
            f"regressor and target have different row counts: {n} != {target.shape[0]}"
        )
    if n <= p + 1:
        raise ValueError(
            f"underdetermined regression: {n} rows for {p} regressors plus intercept"
        )

    augmented = np.hstack([regressor, np.ones((n, 1))])
    left, spectrum, right_t = np.linalg.svd(augmented, full_matrices=False)
    keep = spectrum > rcond * spectrum[0]
    coef = right_t[keep].T @ ((left[:, keep].T @ target) / spectrum[keep, None])
    residual = target - augmented @ coef
    return residual, coef, int(keep.sum())


def _residual_ss_forward(values, params):
    regressor, target = values
    residual, coef, rank = ols_fit(regressor, target, params["rcond"])
    if rank < regressor.shape[1] + 1:
        logger().debug(
            f"Rank deficient regressor: rank {rank} of {regressor.shape[1] + 1} columns"
        )
    return np.sum(residual * residual), (residual, coef)


def _residual_ss_backward(grad, values, value, saved, params):
    residual, coef = saved
    p = values[0].shape[1]
    # the fitted coefficients are stationary, so only the explicit terms remain
    grad_augmented = -2.0 * grad * (residual @ coef.T)
    return grad_augmented[:, :p], 2.0 * grad * residual


def register_ops(registry):
    registry.register(
        Op("matmul", OpFamily.LINALG, 2, _matmul_forward, _matmul_backward)
    )
    registry.register(
        Op(
            "residual_sum_of_squares",
            OpFamily.LINALG,
            2,
            _residual_ss_forward,
            _residual_ss_backward,
            params=("rcond",),
            defaults={"rcond": PINV_RCOND},
        )
    )

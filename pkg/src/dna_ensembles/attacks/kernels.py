"""Discretized Gaussian smoothing kernels."""

__docformat__ = "google"

import cv2
import numpy as np


def gaussian_kernel(width: int, sigma: float) -> np.ndarray:
    """Gaussian centered at ``(width - 1) / 2``, normalized to unit sum.

    Example:
    >>> gaussian_kernel(1, 0.25)
    array([1.])
    """
    if int(width) != width or width < 1 or width % 2 == 0:
        raise ValueError(f"kernel width must be a positive odd integer, got {width}")
    if sigma <= 0:
        raise ValueError(f"kernel sigma must be positive, got {sigma}")
    kernel = cv2.getGaussianKernel(int(width), float(sigma), cv2.CV_64F).reshape(-1)
    return kernel / kernel.sum()


def averaged_kernel(kernels) -> np.ndarray:
    """Mean of centered ``(width, sigma)`` kernels, zero-padded to the widest.

    Convolving with the result equals averaging the same-length convolutions
    with every kernel.
    """
    if not kernels:
        raise ValueError("at least one kernel is required")
    width = max(int(s) for s, _sigma in kernels)
    total = np.zeros(width)
    for s, sigma in kernels:
        offset = (width - int(s)) // 2
        total[offset : offset + int(s)] += gaussian_kernel(s, sigma)
    return total / len(kernels)

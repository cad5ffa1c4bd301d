"""FFT helpers and the power-of-two padding contract for spectral work."""

__docformat__ = "google"

import numpy as np


def next_power_of_two(length: int) -> int:
    if length < 1:
        raise ValueError(f"length must be at least 1, got {length}")
    return 1 << (int(length) - 1).bit_length()


def pad_to(x, length: int):
    """Zero-pad the last axis of ``x`` at the end up to ``length``."""
    x = np.asarray(x, dtype=np.float64)
    extra = length - x.shape[-1]
    if extra < 0:
        raise ValueError(f"cannot pad length {x.shape[-1]} down to {length}")
    widths = [(0, 0)] * (x.ndim - 1) + [(0, extra)]
    return np.pad(x, widths)


def crop(x, length: int):
    return np.asarray(x)[..., :length]


def fft(x):
    """Discrete Fourier transform along the last axis (any length >= 1)."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape[-1] < 1:
        raise ValueError("fft needs at least one sample")
    return np.fft.fft(x, axis=-1)


def ifft(spectrum):
    return np.fft.ifft(np.asarray(spectrum, dtype=np.complex128), axis=-1)


def frequencies(length: int):
    """Normalized frequency of every FFT bin, folded about Nyquist (0 .. 0.5)."""
    bins = np.arange(length)
    return np.minimum(bins, length - bins) / length

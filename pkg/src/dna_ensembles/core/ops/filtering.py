"""Linear filtering by pointwise multiplication in the Fourier domain."""

__docformat__ = "google"

import numpy as np

from .base import Op, OpFamily


def spectral_filter(x, response):
    """Zero-pad the last axis to ``len(response)``, filter, crop back."""
    length = x.shape[-1]
    padded_length = response.shape[0]
    if length > padded_length:
        raise ValueError(
            f"signal of length {length} is longer than the filter ({padded_length})"
        )
    spectrum = np.fft.fft(x, n=padded_length, axis=-1)
    return np.fft.ifft(spectrum * response, axis=-1).real[..., :length]


def _filter_forward(values, params):
    return spectral_filter(values[0], np.asarray(params["response"])), None


def _filter_backward(grad, values, value, saved, params):
    # real, even response: the operator is its own adjoint
    return (spectral_filter(grad, np.asarray(params["response"])),)


def register_ops(registry):
    registry.register(
        Op(
            "spectral_filter",
            OpFamily.SPECTRAL,
            1,
            _filter_forward,
            _filter_backward,
            params=("response",),
        )
    )

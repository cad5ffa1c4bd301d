"""Complementary ring filters applied by pointwise multiplication in the Fourier domain.

A bank splits the folded frequency axis ``0 .. 0.5`` into bands whose
responses sum to one at every bin, so the filtered views of a signal add up
to the signal again. Responses are real and symmetric about Nyquist, which
keeps every filtered view real and makes each band its own adjoint.
"""

__docformat__ = "google"

from dataclasses import dataclass
from typing import Sequence, Tuple, Union

import numpy as np

from .core import Tensor, spectral, spectral_filter
from .core.ops.filtering import spectral_filter as _filter_array


@dataclass(frozen=True)
class BankConfig:
    """Cutoff and raised-cosine transition width in normalized frequency."""

    cutoff: float = 0.2
    transition_width: float = 0.05

    def __post_init__(self):
        _check_edges((self.cutoff,), self.transition_width)

    @classmethod
    def from_value(cls, value):
        if value is None:
            return cls()
        if isinstance(value, cls):
            return value
        if isinstance(value, dict):
            return cls(**value)
        raise TypeError("bank config must be a BankConfig, dict, or None")

    def to_dict(self):
        return {"cutoff": self.cutoff, "transition_width": self.transition_width}


def _check_edges(cutoffs, transition_width):
    if transition_width < 0:
        raise ValueError(f"transition width must be non-negative, got {transition_width}")
    for cutoff in cutoffs:
        low = cutoff - transition_width / 2
        high = cutoff + transition_width / 2
        if not (0 < low and high < 0.5):
            raise ValueError(
                f"cutoff {cutoff} with transition width {transition_width} leaves "
                f"the band edges [{low}, {high}] outside (0, 0.5)"
            )


def lowpass_response(freqs, cutoff: float, transition_width: float) -> np.ndarray:
    """Raised-cosine low band: 1 up to ``cutoff - tw/2``, 0 from ``cutoff + tw/2``.

    With ``transition_width == 0`` a bin exactly at the cutoff is kept.
    """
    freqs = np.asarray(freqs, dtype=np.float64)
    if transition_width == 0:
        return (freqs <= cutoff).astype(np.float64)
    t = np.clip((freqs - (cutoff - transition_width / 2)) / transition_width, 0.0, 1.0)
    return 0.5 * (1.0 + np.cos(np.pi * t))


@dataclass(frozen=True, eq=False)
class RingFilterBank:
    """Frequency responses of complementary bands over ``length`` FFT bins.

    ``responses[j]`` is the multiplier of band ``j``; band 0 is the lowest.
    """

    length: int
    responses: np.ndarray
    cutoffs: Tuple[float, ...]
    transition_width: float

    def __post_init__(self):
        responses = np.array(self.responses, dtype=np.float64)
        if responses.ndim != 2 or responses.shape[1] != self.length:
            raise ValueError(
                f"responses of shape {responses.shape} do not match length {self.length}"
            )
        responses.setflags(write=False)
        object.__setattr__(self, "responses", responses)
        object.__setattr__(self, "cutoffs", tuple(float(c) for c in self.cutoffs))

    @property
    def num_bands(self):
        return self.responses.shape[0]

    def response(self, band: int) -> np.ndarray:
        if not 0 <= band < self.num_bands:
            raise ValueError(f"band {band} out of range for a {self.num_bands}-band bank")
        return self.responses[band]

    def apply(self, band: int, x):
        return apply_band(self, band, x)

    def to_dict(self):
        return {
            "length": self.length,
            "cutoffs": list(self.cutoffs),
            "transition_width": self.transition_width,
        }


def design_bank(
    length: int,
    cutoff: Union[float, Sequence[float]] = 0.2,
    transition_width: float = 0.05,
    num_bands: int = 2,
) -> RingFilterBank:
    """Design ``num_bands`` complementary responses over ``length`` bins.

    Args:
    - length (int): FFT length the bank filters at.
    - cutoff (float | sequence): One cutoff per band boundary, increasing.
    - transition_width (float): Width of the raised-cosine roll-off.
    - num_bands (int): Number of bands.

    Raises:
    ValueError: a band edge outside (0, 0.5), or a cutoff count mismatch.

    Example:
    >>> bank = design_bank(8, cutoff=0.25, transition_width=0.0)
    >>> bank.responses[0].tolist()
    [1.0, 1.0, 1.0, 0.0, 0.0, 0.0, 1.0, 1.0]
    """
    if length < 1:
        raise ValueError(f"bank length must be at least 1, got {length}")
    if num_bands < 2:
        raise ValueError(f"a bank needs at least two bands, got {num_bands}")
    cutoffs = (cutoff,) if np.isscalar(cutoff) else tuple(cutoff)
    if len(cutoffs) != num_bands - 1:
        raise ValueError(f"{num_bands} bands need {num_bands - 1} cutoffs, got {len(cutoffs)}")
    if any(b <= a for a, b in zip(cutoffs, cutoffs[1:])):
        raise ValueError(f"cutoffs must increase, got {cutoffs}")
    _check_edges(cutoffs, transition_width)

    freqs = spectral.frequencies(length)
    bands = []
    below = np.zeros(length)
    for c in cutoffs:
        lowpass = lowpass_response(freqs, c, transition_width)
        bands.append(lowpass - below)
        below = lowpass
    # last band closes the partition of unity
    bands.append(1.0 - np.sum(bands, axis=0))
    return RingFilterBank(length, np.stack(bands), cutoffs, float(transition_width))


def bank_for_signal_length(signal_length: int, cfg: BankConfig = None) -> RingFilterBank:
    """Two-band bank at the next power of two above ``signal_length``."""
    cfg = BankConfig.from_value(cfg)
    return design_bank(
        spectral.next_power_of_two(signal_length), cfg.cutoff, cfg.transition_width
    )


def apply_band(bank: RingFilterBank, band: int, x):
    """Filter the last axis of ``x`` through one band.

    Tensors stay on the graph (the backward applies the same band); arrays
    are filtered directly.
    """
    response = bank.response(band)
    if isinstance(x, Tensor):
        return spectral_filter(x, response)
    return _filter_array(np.asarray(x, dtype=np.float64), response)


def band_energy(x, bank: RingFilterBank) -> np.ndarray:
    """Energy of ``x`` in each band, ``(..., num_bands)``; sums to ``||x||^2``."""
    x = np.asarray(x, dtype=np.float64)
    power = np.abs(spectral.fft(spectral.pad_to(x, bank.length))) ** 2 / bank.length
    return np.einsum("...f,bf->...b", power, bank.responses)


def band_fractions(x, bank: RingFilterBank) -> np.ndarray:
    energy = band_energy(x, bank)
    total = energy.sum(axis=-1, keepdims=True)
    return np.divide(energy, total, out=np.zeros_like(energy), where=total > 0)


@dataclass(frozen=True)
class BandView:
    """What one arm sees: its input passed through a single band."""

    bank: RingFilterBank
    band: int

    def __post_init__(self):
        self.bank.response(self.band)

    def apply(self, x):
        return apply_band(self.bank, self.band, x)

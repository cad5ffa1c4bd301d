__docformat__ = "google"

from dataclasses import dataclass, field, replace
from typing import Optional, Tuple

import numpy as np


@dataclass(frozen=True, eq=False)
class Record:
    """One labelled single-channel signal of arbitrary length."""

    id: str
    signal: np.ndarray
    label: int

    def __eq__(self, other):
        if not isinstance(other, Record):
            return NotImplemented
        return (
            self.id == other.id
            and self.label == other.label
            and np.array_equal(self.signal, other.signal)
        )

    __hash__ = None  # type: ignore[assignment]

    def __post_init__(self):
        signal = np.array(self.signal, dtype=np.float64).reshape(-1)
        if signal.size == 0:
            raise ValueError(f"record {self.id!r} has an empty signal")
        signal.setflags(write=False)
        object.__setattr__(self, "signal", signal)
        object.__setattr__(self, "label", int(self.label))


@dataclass(frozen=True)
class Normalization:
    mean: float
    std: float


@dataclass(frozen=True)
class Dataset:
    records: Tuple[Record, ...]
    num_classes: int
    label_names: Tuple[str, ...] = ()
    fixed_length: Optional[int] = None
    normalization: Optional[Normalization] = None
    sample_rate: Optional[float] = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "records", tuple(self.records))
        if not self.label_names:
            names = tuple(str(index) for index in range(self.num_classes))
            object.__setattr__(self, "label_names", names)
        if len(self.label_names) != self.num_classes:
            raise ValueError(
                f"{len(self.label_names)} label names for {self.num_classes} classes"
            )
        for record in self.records:
            if not 0 <= record.label < self.num_classes:
                raise ValueError(
                    f"record {record.id!r} has label {record.label} "
                    f"outside [0, {self.num_classes})"
                )
            if self.fixed_length is not None and record.signal.size != self.fixed_length:
                raise ValueError(
                    f"record {record.id!r} has length {record.signal.size}, "
                    f"expected {self.fixed_length}"
                )

    def __len__(self):
        return len(self.records)

    @property
    def ids(self):
        return tuple(record.id for record in self.records)

    def signals(self):
        """Stack all signals into an N x L array (requires a fixed length)."""
        if self.fixed_length is None:
            raise ValueError("signals() needs a preprocessed, fixed-length dataset")
        return np.stack([record.signal for record in self.records])

    def labels(self):
        return np.array([record.label for record in self.records], dtype=np.int64)

    def subset(self, indices):
        return replace(self, records=tuple(self.records[i] for i in indices))

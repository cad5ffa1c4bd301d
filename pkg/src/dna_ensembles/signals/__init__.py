"""Dataset ingestion, synthesis, preprocessing and splitting."""

__docformat__ = "google"

from .io import load_dataset, read_signal, read_split, write_dataset, write_signal, write_split
from .preprocess import fit_length, preprocess, split, split_by_ids
from .records import Dataset, Normalization, Record
from .synth import CLASS_NAMES, SynthConfig, synthesize

__all__ = [
    "CLASS_NAMES",
    "Dataset",
    "Normalization",
    "Record",
    "SynthConfig",
    "fit_length",
    "load_dataset",
    "preprocess",
    "read_signal",
    "read_split",
    "split",
    "split_by_ids",
    "synthesize",
    "write_dataset",
    "write_signal",
    "write_split",
]

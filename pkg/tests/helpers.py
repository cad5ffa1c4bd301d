from pathlib import Path
from typing import NamedTuple

import numpy as np

from dna_ensembles.decor import DecorConfig
from dna_ensembles.ensemble import EnsembleKind, TrainConfig, train_arm
from dna_ensembles.filters import BankConfig
from dna_ensembles.model import ArchConfig
from dna_ensembles.signals import Dataset, Record, SynthConfig, preprocess, split, synthesize


PROJECT_ROOT = Path(__file__).resolve().parents[1]
SRC_ROOT = PROJECT_ROOT / "src"

TOY_LENGTH = 128
TOY_ARCH = ArchConfig(
    conv_blocks=((8, 7, 2), (16, 5, 2)),
    feature_dim=16,
    num_classes=3,
    input_length=TOY_LENGTH,
)


class Splits(NamedTuple):
    train: Dataset
    test: Dataset


def toy_splits(records_per_class=40, seed=3):
    raw = synthesize(
        SynthConfig(records_per_class=records_per_class, length=TOY_LENGTH, seed=seed)
    )
    train, test = split(raw, train_fraction=0.75, seed=seed)
    train = preprocess(train, TOY_LENGTH)
    return Splits(train, preprocess(test, TOY_LENGTH, train.normalization))


def toy_train_config(epochs=30, lam=0.2, r=8, batch_size=40, learning_rate=3e-3):
    return TrainConfig(
        epochs=epochs,
        batch_size=batch_size,
        learning_rate=learning_rate,
        decor=DecorConfig(r=r, lam=lam),
        bank=BankConfig(),
    )


def train_toy_model(train_set, epochs=60):
    result = train_arm(0, EnsembleKind.COR, train_set, toy_train_config(epochs), arch=TOY_ARCH)
    return result.params


def dataset_from_arrays(signals, labels, num_classes=None):
    signals = np.asarray(signals, dtype=np.float64)
    labels = [int(label) for label in labels]
    records = tuple(
        Record(f"r{index:03d}", signal, label)
        for index, (signal, label) in enumerate(zip(signals, labels))
    )
    return Dataset(
        records,
        num_classes=num_classes or max(labels) + 1,
        fixed_length=signals.shape[1],
    )


def tiny_run_config(output_dir, **overrides):
    """A JSON-ready config that runs the whole pipeline in seconds."""
    config = {
        "data": {
            "synthetic": {"records_per_class": 20, "length": 64, "seed": 5},
            "split_seed": 2,
            "train_fraction": 0.7,
        },
        "arch": {"conv_blocks": [[4, 5, 2], [8, 5, 2]], "feature_dim": 8},
        "train": {"epochs": 6, "batch_size": 16, "learning_rate": 0.01},
        "decor": {"r": 4},
        "attack": {"epsilons": [0.0, 0.5], "steps": 3},
        "output_dir": str(output_dir),
    }
    for section, values in overrides.items():
        if isinstance(values, dict):
            config.setdefault(section, {}).update(values)
        else:
            config[section] = values
    return config

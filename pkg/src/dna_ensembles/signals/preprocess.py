__docformat__ = "google"

from dataclasses import replace

import numpy as np

from ..log import logger
from .records import Dataset, Normalization, Record

STD_FLOOR = 1e-8


def fit_length(signal, length: int):
    """Center-crop or symmetrically zero-pad ``signal`` to ``length``."""
    signal = np.asarray(signal, dtype=np.float64)
    size = signal.size
    if size >= length:
        start = (size - length) // 2
        return signal[start : start + length]
    before = (length - size) // 2
    return np.pad(signal, (before, length - size - before))


def preprocess(dataset: Dataset, length: int, normalization=None) -> Dataset:
    """Crop/pad every signal to ``length`` and z-score it.

    Without ``normalization`` the statistics are computed from ``dataset``
    itself, which must then be the training split. Test splits are passed the
    training split's ``normalization``.
    """
    if length <= 0:
        raise ValueError(f"length must be greater than 0, got {length}")

    fitted = [fit_length(record.signal, length) for record in dataset.records]
    if normalization is None:
        values = np.stack(fitted) if fitted else np.zeros((0, length))
        std = float(values.std()) if values.size else 1.0
        normalization = Normalization(
            mean=float(values.mean()) if values.size else 0.0,
            std=max(std, STD_FLOOR),
        )
        logger().debug(
            f"Normalization from {len(fitted)} records: "
            f"mean={normalization.mean:.4g} std={normalization.std:.4g}"
        )

    records = tuple(
        Record(
            record.id,
            (signal - normalization.mean) / normalization.std,
            record.label,
        )
        for record, signal in zip(dataset.records, fitted)
    )
    return replace(
        dataset, records=records, fixed_length=length, normalization=normalization
    )


def split(dataset: Dataset, train_fraction=0.9, seed=0):
    """Stratified, disjoint train/test split; a pure function of the seed.

    Both halves keep the dataset's record order.
    """
    if not 0 < train_fraction < 1:
        raise ValueError(f"train_fraction must lie in (0, 1), got {train_fraction}")

    rng = np.random.default_rng(seed)
    labels = dataset.labels()
    test_indices = []
    for label in range(dataset.num_classes):
        members = np.flatnonzero(labels == label)
        if members.size < 2:
            name = dataset.label_names[label]
            raise ValueError(
                f"class {name!r} has {members.size} record(s), at least 2 are needed"
            )
        n_test = int(round(members.size * (1 - train_fraction)))
        n_test = min(max(n_test, 1), members.size - 1)
        test_indices.extend(rng.permutation(members)[:n_test].tolist())

    test_set = set(test_indices)
    train = [i for i in range(len(dataset)) if i not in test_set]
    test = sorted(test_set)
    return dataset.subset(train), dataset.subset(test)


def split_by_ids(dataset: Dataset, train_ids, test_ids):
    position = {record_id: index for index, record_id in enumerate(dataset.ids)}
    unknown = [i for i in (*train_ids, *test_ids) if i not in position]
    if unknown:
        raise ValueError(f"split names unknown record(s): {', '.join(unknown[:5])}")
    train = sorted(position[i] for i in train_ids)
    test = sorted(position[i] for i in test_ids)
    return dataset.subset(train), dataset.subset(test)

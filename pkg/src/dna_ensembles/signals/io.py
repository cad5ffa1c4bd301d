"""Manifest CSV and float-per-line signal files."""

__docformat__ = "google"

import csv
from pathlib import Path

import numpy as np

from ..log import logger
from .records import Dataset, Record

MANIFEST_COLUMNS = ("record_id", "label", "path")


def read_signal(path):
    path = Path(path)
    values = []
    with path.open(encoding="utf-8") as handle:
        for line_number, line in enumerate(handle, start=1):
            text = line.strip()
            if not text:
                continue
            try:
                values.append(float(text))
            except ValueError as exc:
                raise ValueError(
                    f"{path}:{line_number}: cannot parse {text!r} as a float"
                ) from exc
    if not values:
        raise ValueError(f"{path} holds an empty signal")
    return np.array(values, dtype=np.float64)


def write_signal(path, signal):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    # repr gives the shortest string that round-trips the float exactly
    text = "".join(f"{float(value)!r}\n" for value in np.asarray(signal).reshape(-1))
    path.write_text(text, encoding="utf-8")


def load_dataset(manifest_path) -> Dataset:
    """Load a manifest CSV with header ``record_id,label,path``.

    Signal paths are resolved relative to the manifest. Labels are mapped to
    dense indices in order of first appearance.
    """
    manifest_path = Path(manifest_path)
    with manifest_path.open(newline="", encoding="utf-8") as handle:
        reader = csv.DictReader(handle)
        missing = [name for name in MANIFEST_COLUMNS if name not in (reader.fieldnames or ())]
        if missing:
            raise ValueError(
                f"{manifest_path} is missing column(s): {', '.join(missing)}"
            )
        rows = list(reader)

    if not rows:
        raise ValueError(f"{manifest_path}: no records")

    label_index = {}
    records = []
    for row in rows:
        label = row["label"]
        if label not in label_index:
            label_index[label] = len(label_index)
        signal_path = manifest_path.parent / row["path"]
        if not signal_path.exists():
            raise FileNotFoundError(f"signal file {signal_path} does not exist")
        records.append(Record(row["record_id"], read_signal(signal_path), label_index[label]))

    logger().info(
        f"Loaded {len(records)} records in {len(label_index)} classes from {manifest_path}"
    )
    return Dataset(
        records=tuple(records),
        num_classes=len(label_index),
        label_names=tuple(label_index),
    )


def write_dataset(dataset: Dataset, directory, signal_dir="signals"):
    """Write ``manifest.csv`` plus one signal file per record into ``directory``."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    manifest = directory / "manifest.csv"
    with manifest.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(MANIFEST_COLUMNS)
        for record in dataset.records:
            relative = f"{signal_dir}/{record.id}.txt"
            write_signal(directory / relative, record.signal)
            writer.writerow((record.id, dataset.label_names[record.label], relative))
    return manifest


def write_split(path, train_ids, test_ids):
    path = Path(path)
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(("record_id", "split"))
        for record_id in train_ids:
            writer.writerow((record_id, "train"))
        for record_id in test_ids:
            writer.writerow((record_id, "test"))


def read_split(path):
    """Return (train ids, test ids) from a split file."""
    path = Path(path)
    train, test = [], []
    with path.open(newline="", encoding="utf-8") as handle:
        for row in csv.DictReader(handle):
            if row["split"] == "train":
                train.append(row["record_id"])
            elif row["split"] == "test":
                test.append(row["record_id"])
            else:
                raise ValueError(f"{path}: unknown split {row['split']!r}")
    return tuple(train), tuple(test)

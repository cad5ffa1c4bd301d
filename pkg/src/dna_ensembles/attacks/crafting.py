__docformat__ = "google"

import csv
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Tuple

import numpy as np

from ..filters import band_fractions
from ..log import logger
from ..model import predict
from ..signals import read_signal, write_signal
from .gradient import perturb
from .spec import AttackSpec

INDEX_COLUMNS = ("record_id", "label", "masked", "linf_delta")


@dataclass(frozen=True, eq=False)
class AttackedSet:
    """Natural and perturbed test signals plus the scoring mask.

    ``mask[i]`` is true when the base model classifies natural sample ``i``
    correctly; only those samples are scored.
    """

    record_ids: Tuple[str, ...]
    natural: np.ndarray
    perturbed: np.ndarray
    labels: np.ndarray
    mask: np.ndarray
    target_model_id: str
    spec: AttackSpec

    def __post_init__(self):
        natural = np.array(self.natural, dtype=np.float64)
        perturbed = np.array(self.perturbed, dtype=np.float64)
        labels = np.asarray(self.labels, dtype=np.int64).reshape(-1)
        mask = np.asarray(self.mask, dtype=bool).reshape(-1)
        n = len(self.record_ids)
        if natural.shape != perturbed.shape or natural.ndim != 2 or natural.shape[0] != n:
            raise ValueError(
                f"natural {natural.shape} and perturbed {perturbed.shape} "
                f"do not match {n} records"
            )
        if labels.size != n or mask.size != n:
            raise ValueError(f"labels/mask sizes do not match {n} records")
        for array in (natural, perturbed, labels, mask):
            array.setflags(write=False)
        object.__setattr__(self, "record_ids", tuple(self.record_ids))
        object.__setattr__(self, "natural", natural)
        object.__setattr__(self, "perturbed", perturbed)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "mask", mask)

    def __len__(self):
        return len(self.record_ids)

    @property
    def n_masked(self):
        return int(self.mask.sum())

    @property
    def linf_delta(self):
        if len(self) == 0:
            return np.zeros(0)
        return np.max(np.abs(self.perturbed - self.natural), axis=1)


def craft_set(
    target,
    test_set,
    spec: AttackSpec,
    base=None,
    *,
    target_model_id="arm0",
    view=None,
    batch_size=64,
) -> AttackedSet:
    """Perturb every test sample against ``target``; mask by the base model.

    Args:
    - target (ClassifierParams): Model the gradients come from.
    - test_set (Dataset): Preprocessed test split.
    - spec (AttackSpec): Attack to run.
    - base (ClassifierParams, optional): Source of the mask, ``target`` by default.
    - target_model_id (str): Recorded with the set.
    - view (BandView, optional): Input filter of the target arm.
    - batch_size (int): Samples per attack batch; results do not depend on it.
    """
    base = target if base is None else base
    x = test_set.signals()
    y = test_set.labels()
    mask = predict(base, x) == y

    chunks = [
        perturb(target, x[start : start + batch_size], y[start : start + batch_size], spec, view)
        for start in range(0, len(x), batch_size)
    ]
    perturbed = np.concatenate(chunks) if chunks else x.copy()

    attacked = AttackedSet(test_set.ids, x, perturbed, y, mask, target_model_id, spec)
    if attacked.n_masked == 0:
        logger().warning(f"{spec.name}: the base model misclassifies every natural sample")
    return attacked


def summarize(attacked: AttackedSet, base, bank=None) -> dict:
    """Mask size, base accuracy under attack, perturbation size and band split."""
    summary = {
        "attack": attacked.spec.name,
        "target_model_id": attacked.target_model_id,
        "n_samples": len(attacked),
        "n_masked": attacked.n_masked,
        "base_attacked_accuracy": None,
        "mean_linf_delta": float(attacked.linf_delta.mean()) if len(attacked) else 0.0,
    }
    if attacked.n_masked:
        correct = predict(base, attacked.perturbed) == attacked.labels
        summary["base_attacked_accuracy"] = float(correct[attacked.mask].mean())
    if bank is not None and len(attacked):
        fractions = band_fractions(attacked.perturbed - attacked.natural, bank)
        summary["mean_band_fractions"] = [float(v) for v in fractions.mean(axis=0)]
    return summary


def save_attacked_set(attacked: AttackedSet, directory, summary: Optional[dict] = None):
    """Write ``natural/``, ``perturbed/``, ``index.csv``, ``spec.json`` [, ``summary.json``]."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    deltas = attacked.linf_delta
    with (directory / "index.csv").open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(INDEX_COLUMNS)
        for i, record_id in enumerate(attacked.record_ids):
            write_signal(directory / "natural" / f"{record_id}.txt", attacked.natural[i])
            write_signal(directory / "perturbed" / f"{record_id}.txt", attacked.perturbed[i])
            writer.writerow(
                (record_id, int(attacked.labels[i]), int(attacked.mask[i]), repr(float(deltas[i])))
            )

    header = {"target_model_id": attacked.target_model_id, "spec": attacked.spec.to_dict()}
    _write_json(directory / "spec.json", header)
    if summary is not None:
        _write_json(directory / "summary.json", summary)


def load_attacked_set(directory) -> AttackedSet:
    directory = Path(directory)
    for name in ("index.csv", "spec.json"):
        if not (directory / name).exists():
            raise FileNotFoundError(f"attacked set file {directory / name} does not exist")

    header = json.loads((directory / "spec.json").read_text(encoding="utf-8"))
    ids, labels, mask, natural, perturbed = [], [], [], [], []
    with (directory / "index.csv").open(newline="", encoding="utf-8") as handle:
        for row in csv.DictReader(handle):
            ids.append(row["record_id"])
            labels.append(int(row["label"]))
            mask.append(row["masked"] == "1")
            natural.append(read_signal(directory / "natural" / f"{row['record_id']}.txt"))
            perturbed.append(read_signal(directory / "perturbed" / f"{row['record_id']}.txt"))

    width = natural[0].size if natural else 0
    return AttackedSet(
        tuple(ids),
        np.array(natural).reshape(len(ids), width),
        np.array(perturbed).reshape(len(ids), width),
        np.array(labels, dtype=np.int64),
        np.array(mask, dtype=bool),
        header["target_model_id"],
        AttackSpec.from_dict(header["spec"]),
    )


def _write_json(path, payload):
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")

"""CSV and JSON report writers. Output is byte-stable for identical inputs."""

__docformat__ = "google"

import csv
import json
from pathlib import Path
from typing import NamedTuple

from .evaluation import Metrics

METRICS_COLUMNS = ("kind", "attack", "epsilon", "average", "p1", "p2", "p3", "n_masked")
ARM_ACCURACY_COLUMNS = ("kind", "attack", "epsilon", "arm", "accuracy")
NATURAL = "none"


class MetricsRow(NamedTuple):
    kind: str
    attack: str
    epsilon: float
    metrics: Metrics


def _number(value):
    return f"{value:.6f}"


def _open_csv(path):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    return path.open("w", newline="", encoding="utf-8")


def write_metrics_csv(rows, path):
    with _open_csv(path) as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(METRICS_COLUMNS)
        for row in rows:
            m = row.metrics
            writer.writerow(
                (
                    row.kind,
                    row.attack,
                    f"{row.epsilon:g}",
                    _number(m.average),
                    _number(m.p1),
                    _number(m.p2),
                    _number(m.p3),
                    m.n_samples,
                )
            )


def write_arm_accuracy_csv(rows, path):
    with _open_csv(path) as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(ARM_ACCURACY_COLUMNS)
        for row in rows:
            for arm, accuracy in enumerate(row.metrics.arm_accuracy):
                writer.writerow((row.kind, row.attack, f"{row.epsilon:g}", arm, _number(accuracy)))


def write_curve_csv(curve, path):
    """``epoch,ce[,cor],total`` per epoch; ``cor`` only for decorrelating arms."""
    columns = list(curve[0]) if curve else ["epoch", "ce", "total"]
    with _open_csv(path) as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(columns)
        for row in curve:
            writer.writerow([row[c] if c == "epoch" else repr(float(row[c])) for c in columns])


def read_csv_rows(path):
    with Path(path).open(newline="", encoding="utf-8") as handle:
        return list(csv.DictReader(handle))


def write_json(path, payload):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def write_correlation_json(reports, path):
    """``reports`` maps ensemble kind name to :class:`CorrelationReport`."""
    write_json(path, {kind: report.to_dict() for kind, report in reports.items()})

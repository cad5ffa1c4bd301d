__docformat__ = "google"

from dataclasses import dataclass
from typing import Dict, Sequence, Tuple

import numpy as np

from ..decor import correlation_r2
from ..log import logger
from ..model import infer, predict


@dataclass(frozen=True)
class Metrics:
    """Per-arm correctness summarized over the scored samples.

    ``p1``, ``p2`` and ``p3`` are the fractions of samples with at least one,
    two and three correct arms.
    """

    average: float
    p1: float
    p2: float
    p3: float
    n_samples: int
    arm_accuracy: Tuple[float, ...] = ()


def metrics_from_correctness(correct) -> Metrics:
    correct = np.asarray(correct, dtype=bool)
    if correct.ndim != 2:
        raise ValueError(f"correctness must be samples x arms, got shape {correct.shape}")
    if correct.shape[0] == 0:
        raise ValueError("cannot evaluate an empty mask")
    counts = correct.sum(axis=1)
    return Metrics(
        average=float(correct.mean()),
        p1=float(np.mean(counts >= 1)),
        p2=float(np.mean(counts >= 2)),
        p3=float(np.mean(counts >= 3)),
        n_samples=int(correct.shape[0]),
        arm_accuracy=tuple(float(v) for v in correct.mean(axis=0)),
    )


def _view_input(view, x):
    return x if view is None else view.apply(x)


def arm_correctness(arms, views, x, y) -> np.ndarray:
    """N x arms boolean matrix; each arm sees its own filtered view of ``x``."""
    y = np.asarray(y)
    return np.stack(
        [predict(params, _view_input(view, x)) == y for params, view in zip(arms, views)],
        axis=1,
    )


def evaluate(arms, views, x, y, mask=None) -> Metrics:
    """Metrics over all samples, or over ``mask`` for attacked sets."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y)
    if mask is not None:
        mask = np.asarray(mask, dtype=bool)
        x, y = x[mask], y[mask]
    return metrics_from_correctness(arm_correctness(arms, views, x, y))


def evaluate_attacked(arms, views, attacked) -> Metrics:
    return evaluate(arms, views, attacked.perturbed, attacked.labels, attacked.mask)


@dataclass(frozen=True, eq=False)
class CorrelationReport:
    """Ordered-pair R^2 between arm features over the training set.

    ``raw[i, j]`` is the R^2 of regressing arm ``j``'s features on arm
    ``i``'s. ``clamped`` restricts it to [0, 1]; ``headline[(i, j)]`` is the
    mean of both clamped directions.
    """

    raw: np.ndarray
    clamped: np.ndarray
    headline: Dict[Tuple[int, int], float]

    @property
    def mean_off_diagonal(self):
        return float(np.mean(list(self.headline.values())))

    def to_dict(self):
        return {
            "r2": self.clamped.tolist(),
            "r2_raw": self.raw.tolist(),
            "headline": {f"{i}-{j}": value for (i, j), value in sorted(self.headline.items())},
            "mean_off_diagonal": self.mean_off_diagonal,
        }


def correlation_report(arms: Sequence, views, train_set) -> CorrelationReport:
    """R^2 for every ordered pair of arms on full-width training-set features."""
    signals = train_set.signals()
    features = [infer(params, _view_input(view, signals))[1] for params, view in zip(arms, views)]
    count = len(features)
    for j, target in enumerate(features):
        if not np.any(target):
            logger().warning(f"Arm {j} has identically zero features; R^2 set to 1")
    raw = np.zeros((count, count))
    for i in range(count):
        for j in range(count):
            raw[i, j] = correlation_r2(features[i], features[j])
    clamped = np.clip(raw, 0.0, 1.0)
    headline = {
        (i, j): float((clamped[i, j] + clamped[j, i]) / 2)
        for i in range(count)
        for j in range(i + 1, count)
    }
    return CorrelationReport(raw, clamped, headline)

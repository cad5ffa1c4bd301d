"""Ensemble kinds, sequential arm training, evaluation and reports."""

__docformat__ = "google"

from .adam import AdamState, adam_step
from .evaluation import (
    CorrelationReport,
    Metrics,
    arm_correctness,
    correlation_report,
    evaluate,
    evaluate_attacked,
    metrics_from_correctness,
)
from .kinds import KIND_ORDER, NUM_ARMS, ArmRole, EnsembleKind
from .reports import (
    METRICS_COLUMNS,
    NATURAL,
    MetricsRow,
    write_arm_accuracy_csv,
    write_correlation_json,
    write_curve_csv,
    write_metrics_csv,
)
from .store import arm_paths, load_arm, load_arms, save_arm, trained_kinds
from .training import ArmResult, TrainConfig, arm_views, batch_indices, train_arm, train_ensemble

__all__ = [
    "KIND_ORDER",
    "METRICS_COLUMNS",
    "NATURAL",
    "NUM_ARMS",
    "AdamState",
    "ArmResult",
    "ArmRole",
    "CorrelationReport",
    "EnsembleKind",
    "Metrics",
    "MetricsRow",
    "TrainConfig",
    "adam_step",
    "arm_correctness",
    "arm_paths",
    "arm_views",
    "batch_indices",
    "correlation_report",
    "evaluate",
    "evaluate_attacked",
    "load_arm",
    "load_arms",
    "metrics_from_correctness",
    "save_arm",
    "train_arm",
    "train_ensemble",
    "trained_kinds",
    "write_arm_accuracy_csv",
    "write_correlation_json",
    "write_curve_csv",
    "write_metrics_csv",
]

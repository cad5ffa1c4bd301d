"""The four experiment stages wired to their on-disk artifacts.

Every stage reads what earlier stages wrote and is a pure function of its
inputs and the run config, so re-running a stage rewrites identical bytes.
"""

__docformat__ = "google"

from pathlib import Path
from typing import List, NamedTuple

from .attacks import craft_set, load_attacked_set, save_attacked_set, summarize
from .config import RunConfig
from .ensemble import (
    KIND_ORDER,
    NATURAL,
    EnsembleKind,
    MetricsRow,
    arm_paths,
    arm_views,
    correlation_report,
    evaluate,
    evaluate_attacked,
    load_arm,
    load_arms,
    save_arm,
    train_ensemble,
    trained_kinds,
    write_arm_accuracy_csv,
    write_correlation_json,
    write_metrics_csv,
)
from .ensemble.reports import write_json
from .ensemble.store import existing_arm_files, write_manifest
from .filters import bank_for_signal_length
from .log import logger
from .model import load_params
from .signals import (
    load_dataset,
    preprocess,
    read_split,
    split,
    split_by_ids,
    synthesize,
    write_dataset,
    write_split,
)

MANIFEST_FILE = "manifest.csv"
SPLIT_FILE = "split.csv"


class ArmTrainingError(RuntimeError):
    def __init__(self, kind, arm, cause):
        self.kind = kind
        self.arm = arm
        super().__init__(f"training {kind} arm {arm} failed: {cause}")


class AttackCellsError(RuntimeError):
    def __init__(self, failures):
        self.failures = dict(failures)
        cells = ", ".join(f"{name} ({error})" for name, error in self.failures.items())
        super().__init__(f"{len(self.failures)} attack cell(s) failed: {cells}")


class Splits(NamedTuple):
    train: object
    test: object


def source_dataset(cfg: RunConfig):
    """Raw records from the synthetic generator or the configured manifest."""
    if cfg.data.synthetic is not None:
        return synthesize(cfg.data.synthetic)
    return load_dataset(cfg.data.manifest)


def generate_data(cfg: RunConfig, out) -> Path:
    """Write ``manifest.csv``, ``signals/<id>.txt`` and ``split.csv`` into ``out``."""
    out = Path(out)
    dataset = source_dataset(cfg)
    train, test = split(dataset, cfg.data.train_fraction, cfg.data.split_seed)
    manifest = write_dataset(dataset, out)
    write_split(out / SPLIT_FILE, train.ids, test.ids)
    logger().info(f"Wrote {len(dataset)} records ({len(train)} train, {len(test)} test) to {out}")
    return manifest


def load_splits(cfg: RunConfig, data_dir) -> Splits:
    """Preprocessed train/test splits; the test split reuses train statistics."""
    data_dir = Path(data_dir)
    for name in (MANIFEST_FILE, SPLIT_FILE):
        if not (data_dir / name).exists():
            raise FileNotFoundError(f"data file {data_dir / name} does not exist")
    dataset = load_dataset(data_dir / MANIFEST_FILE)
    if dataset.num_classes != cfg.arch.num_classes:
        raise ValueError(
            f"{data_dir} holds {dataset.num_classes} classes, arch expects {cfg.arch.num_classes}"
        )
    train, test = split_by_ids(dataset, *read_split(data_dir / SPLIT_FILE))
    train = preprocess(train, cfg.data.length)
    test = preprocess(test, cfg.data.length, train.normalization)
    return Splits(train, test)


def _bank(cfg: RunConfig):
    return bank_for_signal_length(cfg.data.length, cfg.bank)


def train_kind(cfg: RunConfig, kind, data_dir, out, *, force=False, from_arm=0):
    """Train ``kind`` into ``out/<kind>``, keeping arms below ``from_arm``.

    Raises:
    FileExistsError: arm files at or above ``from_arm`` exist and ``force`` is off.
    ArmTrainingError: an arm failed; earlier arms stay on disk.
    """
    kind = EnsembleKind(kind)
    if not 0 <= from_arm < 3:
        raise ValueError(f"from_arm must be 0, 1 or 2, got {from_arm}")
    existing = existing_arm_files(out, kind, from_arm)
    if existing and not force:
        raise FileExistsError(
            f"{len(existing)} arm file(s) already exist, e.g. {existing[0]}; use --force"
        )

    splits = load_splits(cfg, data_dir)
    previous = [load_arm(out, kind, k) for k in range(from_arm)]
    progress = {"arm": from_arm}

    def persist(k, result):
        save_arm(out, kind, k, result)
        progress["arm"] = k + 1

    try:
        results = train_ensemble(kind, splits.train, cfg.train, cfg.arch, previous, persist)
    except Exception as exc:
        raise ArmTrainingError(kind.value, progress["arm"], exc) from exc

    write_manifest(
        out,
        kind,
        {
            "kind": kind.value,
            "roles": [role.to_dict() for role in kind.roles],
            "bank": _bank(cfg).to_dict(),
            "normalization": {
                "mean": splits.train.normalization.mean,
                "std": splits.train.normalization.std,
            },
            "train_ids": list(splits.train.ids),
            "config": cfg.to_dict(),
        },
    )
    return results


def base_kind(ensemble_dir):
    """First kind in canonical order with a trained base arm.

    Every kind trains its base arm from the same seeds, so any of them will
    do; a mismatch is logged.
    """
    present = [k for k in KIND_ORDER if arm_paths(ensemble_dir, k, 0).params.exists()]
    if not present:
        raise FileNotFoundError(f"no trained base arm under {ensemble_dir}")
    reference = load_params(arm_paths(ensemble_dir, present[0], 0).params)
    for other in present[1:]:
        if not load_params(arm_paths(ensemble_dir, other, 0).params).equals(reference):
            logger().warning(
                f"base arm of {other.value} differs from {present[0].value}; "
                f"attacking {present[0].value}"
            )
    return present[0]


def attack_grid(cfg: RunConfig, ensemble_dir, data_dir, out) -> List[Path]:
    """Craft and save one attacked test set per grid cell under ``out``."""
    out = Path(out)
    kind = base_kind(ensemble_dir)
    splits = load_splits(cfg, data_dir)
    bank = _bank(cfg)
    target_arm = cfg.attack.target_arm
    base = load_arm(ensemble_dir, kind, 0).params
    target = base if target_arm == 0 else load_arm(ensemble_dir, kind, target_arm).params
    view = arm_views(kind, bank)[target_arm]

    written, failures = [], {}
    for spec in cfg.attack.cells():
        try:
            attacked = craft_set(
                target, splits.test, spec, base, target_model_id=f"arm{target_arm}", view=view
            )
            summary = summarize(attacked, base, bank)
            save_attacked_set(attacked, out / spec.name, summary)
        except Exception as exc:
            logger().error(f"Attack cell {spec.name} failed: {exc}")
            failures[spec.name] = exc
            continue
        logger().info(
            f"{spec.name}: {summary['n_masked']}/{summary['n_samples']} masked, "
            f"base attacked accuracy {summary['base_attacked_accuracy']}"
        )
        written.append(out / spec.name)
    if failures:
        raise AttackCellsError(failures)
    return written


def evaluate_all(cfg: RunConfig, ensemble_dir, attacks_dir, data_dir, out_csv):
    """Metrics for every trained kind on natural and attacked test sets.

    Writes ``out_csv`` plus ``arm_accuracy.csv``, ``correlation.json`` and
    ``run_manifest.json`` next to it.
    """
    out_csv = Path(out_csv)
    kinds = trained_kinds(ensemble_dir)
    if not kinds:
        raise FileNotFoundError(f"no fully trained ensemble under {ensemble_dir}")
    splits = load_splits(cfg, data_dir)
    bank = _bank(cfg)

    attacked_sets = [
        load_attacked_set(Path(attacks_dir) / spec.name) for spec in cfg.attack.cells()
    ]

    rows, correlations = [], {}
    for kind in kinds:
        arms = [result.params for result in load_arms(ensemble_dir, kind)]
        views = arm_views(kind, bank)
        natural = evaluate(arms, views, splits.test.signals(), splits.test.labels())
        rows.append(MetricsRow(kind.value, NATURAL, 0.0, natural))
        for attacked in attacked_sets:
            metrics = evaluate_attacked(arms, views, attacked)
            rows.append(
                MetricsRow(kind.value, attacked.spec.family.value, attacked.spec.epsilon, metrics)
            )
        correlations[kind.value] = correlation_report(arms, views, splits.train)
        logger().info(
            f"{kind.value}: natural average {natural.average:.3f}, "
            f"mean pairwise R^2 {correlations[kind.value].mean_off_diagonal:.3f}"
        )

    write_metrics_csv(rows, out_csv)
    write_arm_accuracy_csv(rows, out_csv.parent / "arm_accuracy.csv")
    write_correlation_json(correlations, out_csv.parent / "correlation.json")
    write_json(out_csv.parent / "run_manifest.json", cfg.to_dict())
    return rows

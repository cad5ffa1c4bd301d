"""Sequential training of the three arms of an ensemble.

Arms train strictly in order. Once an arm is trained its features over the
whole training set are cached, and every later decorrelating arm regresses
its own batch features against those frozen rows.
"""

__docformat__ = "google"

import time
from dataclasses import dataclass, field
from typing import List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from ..decor import DecorConfig, FeatureBatch, FeatureCache, build_cache, loss_terms
from ..filters import BandView, BankConfig, RingFilterBank, bank_for_signal_length
from ..log import logger
from ..model import ArchConfig, ClassifierParams, forward_graph, init_params, weight_tensors
from .adam import AdamState, adam_step
from .kinds import NUM_ARMS, ArmRole, EnsembleKind


@dataclass(frozen=True)
class TrainConfig:
    """Optimizer, schedule and seeds shared by every arm.

    ``decor`` and ``bank`` hold the decorrelation and filter settings so a
    single object describes how an ensemble is trained.
    """

    epochs: int = 200
    batch_size: int = 80
    learning_rate: float = 1e-3
    beta1: float = 0.9
    beta2: float = 0.999
    adam_eps: float = 1e-8
    init_seed: int = 0
    shuffle_seed: int = 1
    decor: DecorConfig = field(default_factory=DecorConfig)
    bank: BankConfig = field(default_factory=BankConfig)

    def __post_init__(self):
        if self.epochs < 1:
            raise ValueError(f"epochs must be at least 1, got {self.epochs}")
        if self.batch_size < 1:
            raise ValueError(f"batch_size must be at least 1, got {self.batch_size}")
        if self.learning_rate <= 0:
            raise ValueError(f"learning_rate must be positive, got {self.learning_rate}")
        if not (0 <= self.beta1 < 1 and 0 <= self.beta2 < 1):
            raise ValueError(f"Adam betas must lie in [0, 1), got {self.beta1}, {self.beta2}")
        if self.adam_eps <= 0:
            raise ValueError(f"adam_eps must be positive, got {self.adam_eps}")
        object.__setattr__(self, "decor", _coerce(DecorConfig, self.decor))
        object.__setattr__(self, "bank", BankConfig.from_value(self.bank))

    def to_dict(self):
        return {
            "epochs": self.epochs,
            "batch_size": self.batch_size,
            "learning_rate": self.learning_rate,
            "beta1": self.beta1,
            "beta2": self.beta2,
            "adam_eps": self.adam_eps,
            "init_seed": self.init_seed,
            "shuffle_seed": self.shuffle_seed,
        }


def _coerce(cls, value):
    if value is None:
        return cls()
    if isinstance(value, dict):
        return cls(**value)
    return value


class ArmResult(NamedTuple):
    params: ClassifierParams
    cache: FeatureCache
    curve: Optional[List[dict]] = None


def arm_views(kind: EnsembleKind, bank: RingFilterBank) -> Tuple[Optional[BandView], ...]:
    return tuple(
        None if role.band is None else BandView(bank, role.band) for role in kind.roles
    )


def batch_indices(n: int, batch_size: int, rng) -> List[np.ndarray]:
    """Split one epoch's permutation into equally sized batches.

    A trailing partial batch is back-filled with the indices just before it,
    so every batch holds ``min(batch_size, n)`` unique samples.
    """
    order = rng.permutation(n)
    if batch_size >= n:
        return [order]
    batches = [order[start : start + batch_size] for start in range(0, n, batch_size)]
    if batches[-1].size < batch_size:
        batches[-1] = order[n - batch_size :]
    return batches


def _check_decor_batch(cfg: TrainConfig, arch: ArchConfig, n: int):
    r, dim = cfg.decor.r, arch.feature_dim
    if r > dim:
        raise ValueError(f"projection dimension r={r} exceeds feature width {dim}")
    batch = min(cfg.batch_size, n)
    if batch <= max(r, dim) + 1:
        raise ValueError(
            f"decorrelation needs batches larger than max(r, D) + 1 = {max(r, dim) + 1}, "
            f"got {batch}"
        )


def train_arm(
    k: int,
    kind: EnsembleKind,
    train_set,
    cfg: TrainConfig,
    caches: Sequence[FeatureCache] = (),
    arch: Optional[ArchConfig] = None,
) -> ArmResult:
    """Train arm ``k`` of ``kind`` and build its feature cache.

    Args:
    - k (int): Arm index, 0 for the base model.
    - kind (EnsembleKind): Decides the arm's band and whether it decorrelates.
    - train_set (Dataset): Preprocessed training split in canonical order.
    - cfg (TrainConfig): Optimizer, seeds, decorrelation and bank settings.
    - caches (Sequence[FeatureCache]): Caches of arms ``0 .. k-1``.
    - arch (ArchConfig, optional): Defaults to the standard architecture sized
      for ``train_set``.

    Returns:
    ArmResult: Trained parameters, their feature cache and the loss curve.
    """
    role: ArmRole = kind.roles[k]
    if arch is None:
        arch = ArchConfig(num_classes=train_set.num_classes, input_length=train_set.fixed_length)
    view = arm_views(kind, bank_for_signal_length(train_set.fixed_length, cfg.bank))[k]

    signals = train_set.signals()
    if view is not None:
        signals = view.apply(signals)
    labels = train_set.labels()
    n = len(labels)

    decorrelating = role.decorrelate and cfg.decor.lam > 0
    if decorrelating:
        if len(caches) < k:
            raise ValueError(f"arm {k} needs caches of arms 0..{k - 1}, got {len(caches)}")
        _check_decor_batch(cfg, arch, n)
    active_caches = list(caches[:k]) if role.decorrelate else []

    params = init_params(arch, [cfg.init_seed, k])
    shuffle_rng = np.random.default_rng([cfg.shuffle_seed, k])
    state = AdamState()
    curve = []
    started = time.perf_counter()
    logger().info(f"Training {kind.value} arm {k} (band={role.band}, decorrelate={role.decorrelate})")

    step = 0
    for epoch in range(1, cfg.epochs + 1):
        totals = {"ce": 0.0, "cor": 0.0, "total": 0.0}
        batches = batch_indices(n, cfg.batch_size, shuffle_rng)
        for indices in batches:
            weights = weight_tensors(params, requires_grad=True)
            logits, features = forward_graph(arch, weights, signals[indices])
            terms = loss_terms(
                logits,
                labels[indices],
                FeatureBatch(features, indices),
                active_caches,
                cfg.decor,
                (cfg.decor.projection_seed, k, step),
            )
            terms.total.backward()
            grads = {name: tensor.grad for name, tensor in weights.items()}
            values, state = adam_step(
                params.weights, grads, state, cfg.learning_rate, cfg.beta1, cfg.beta2, cfg.adam_eps
            )
            params = params.with_weights(values)

            totals["ce"] += terms.cross_entropy.item()
            totals["total"] += terms.total.item()
            if terms.correlation is not None:
                totals["cor"] += terms.correlation.item()
            step += 1

        row = {"epoch": epoch, "ce": totals["ce"] / len(batches)}
        if decorrelating:
            row["cor"] = totals["cor"] / len(batches)
        row["total"] = totals["total"] / len(batches)
        curve.append(row)
        logger().info(
            f"{kind.value} arm {k} epoch {epoch}/{cfg.epochs}: "
            + ", ".join(f"{key}={value:.4f}" for key, value in row.items() if key != "epoch")
        )

    cache = build_cache(params, train_set, model_id=role.model_id, view=view)
    logger().info(f"Finished {kind.value} arm {k} in {time.perf_counter() - started:.1f}s")
    return ArmResult(params, cache, curve)


def train_ensemble(
    kind: EnsembleKind,
    train_set,
    cfg: TrainConfig,
    arch: Optional[ArchConfig] = None,
    previous: Sequence[ArmResult] = (),
    on_arm=None,
) -> List[ArmResult]:
    """Train the remaining arms of ``kind`` in order.

    ``previous`` holds already trained arms ``0 .. len(previous)-1``, which
    are reused as they are. ``on_arm(k, result)`` runs after each new arm, so
    callers can persist arms as soon as they exist.
    """
    kind = EnsembleKind(kind)
    results = list(previous)
    if len(results) > NUM_ARMS:
        raise ValueError(f"an ensemble has {NUM_ARMS} arms, got {len(results)} previous ones")
    for k in range(len(results), NUM_ARMS):
        result = train_arm(k, kind, train_set, cfg, [r.cache for r in results], arch)
        results.append(result)
        if on_arm is not None:
            on_arm(k, result)
    return results

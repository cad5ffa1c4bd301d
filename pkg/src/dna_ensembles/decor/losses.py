"""Feature decorrelation losses.

The regression of a target feature batch on a regressor batch (plus an
intercept) explains some fraction of the target's energy. The losses push
that fraction towards zero for the model being trained while features of
previously trained models stay frozen.
"""

__docformat__ = "google"

from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from ..core import Tensor, add, least_squares_residual, log, matmul, scale, softmax_cross_entropy
from ..core.ops.linalg import ols_fit
from .cache import FeatureBatch


@dataclass(frozen=True)
class DecorConfig:
    r: int = 50
    lam: float = 0.2
    eps_stab: float = 1e-5
    projection_seed: int = 0

    def __post_init__(self):
        if self.r < 1:
            raise ValueError(f"projection dimension r must be at least 1, got {self.r}")
        if self.lam < 0:
            raise ValueError(f"lam must be non-negative, got {self.lam}")
        if self.eps_stab <= 0:
            raise ValueError(f"eps_stab must be positive, got {self.eps_stab}")


def _values(batch):
    if isinstance(batch, FeatureBatch):
        return batch.values
    return batch if isinstance(batch, Tensor) else Tensor(batch)


def _array(batch):
    return _values(batch).data


def correlation_r2(regressor, target) -> float:
    """``1 - SS_res / SS_total`` of the OLS fit ``target ~ [regressor, 1]``.

    Not clamped: reports clamp to [0, 1], losses never do. An all-zero target
    has nothing left to explain and gives 1.
    """
    target = _array(target)
    ss_total = float(np.sum(target * target))
    if ss_total == 0.0:
        return 1.0
    residual, _coef, _rank = ols_fit(_array(regressor), target)
    return 1.0 - float(np.sum(residual * residual)) / ss_total


def decor_loss(regressor, target, eps_stab=1e-5) -> Tensor:
    """``log(SS_total + eps) - log(SS_res + eps)``; about zero when uncorrelated."""
    ss_res, ss_total = least_squares_residual(_values(regressor), _values(target))
    return add(log(add(ss_total, eps_stab)), scale(log(add(ss_res, eps_stab)), -1.0))


def draw_projection(dim: int, r: int, seed) -> np.ndarray:
    """Random ``dim x r`` projection with i.i.d. N(0, 1/sqrt(dim)) entries."""
    if not 0 < r <= dim:
        raise ValueError(f"projection dimension must satisfy 0 < r <= {dim}, got {r}")
    rng = np.random.default_rng(seed)
    return rng.normal(0.0, dim**-0.5, size=(dim, r))


def _stream(seed, stream):
    if isinstance(seed, (tuple, list)):
        return [*seed, stream]
    return [seed, stream]


def draw_branch(step_seed) -> int:
    """Fair coin from the step seed: 0 regresses on the trainable features."""
    return int(np.random.default_rng(_stream(step_seed, 0)).random() >= 0.5)


def pair_loss(
    trainable, frozen, cfg: DecorConfig, step_seed, *, projection=None, branch=None
) -> Tensor:
    """Randomly projected decorrelation loss between two feature batches.

    With probability 0.5 the trainable batch is the regressor and the frozen
    batch, projected by ``Z @ R``, is the target; otherwise the roles swap.
    ``projection`` and ``branch`` override the draws.
    """
    zk = _values(trainable)
    zi = Tensor(_array(frozen))
    if zk.shape[0] != zi.shape[0]:
        raise ValueError(f"feature batches differ in size: {zk.shape[0]} != {zi.shape[0]}")

    if projection is None:
        projection = draw_projection(zk.shape[1], cfg.r, _stream(step_seed, 1))
    if branch is None:
        branch = draw_branch(step_seed)

    if branch == 0:
        return decor_loss(zk, matmul(zi, projection), cfg.eps_stab)
    return decor_loss(zi, matmul(zk, projection), cfg.eps_stab)


def ensemble_decor_loss(trainable: FeatureBatch, caches, cfg: DecorConfig, step_seed) -> Tensor:
    """Mean pair loss against every previously trained model's cached features.

    All pairs of one step share ``step_seed``.
    """
    if not caches:
        raise ValueError("decorrelation needs at least one previously trained model")
    terms = [
        pair_loss(trainable, cache.rows(trainable.sample_indices), cfg, step_seed)
        for cache in caches
    ]
    total = terms[0]
    for term in terms[1:]:
        total = add(total, term)
    return scale(total, 1.0 / len(terms))


class LossTerms(NamedTuple):
    total: Tensor
    cross_entropy: Tensor
    correlation: Optional[Tensor]


def loss_terms(logits, labels, trainable: FeatureBatch, caches, cfg: DecorConfig, step_seed) -> LossTerms:
    ce = softmax_cross_entropy(logits, labels)
    if cfg.lam == 0 or not caches:
        return LossTerms(ce, ce, None)
    cor = ensemble_decor_loss(trainable, caches, cfg, step_seed)
    return LossTerms(add(ce, scale(cor, cfg.lam)), ce, cor)


def total_loss(logits, labels, trainable: FeatureBatch, caches, cfg: DecorConfig, step_seed) -> Tensor:
    """Cross entropy plus ``lam`` times the ensemble decorrelation loss."""
    return loss_terms(logits, labels, trainable, caches, cfg, step_seed).total

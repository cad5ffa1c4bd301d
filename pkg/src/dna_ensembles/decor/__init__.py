"""Decorrelation losses and the per-model feature cache."""

__docformat__ = "google"

from .cache import FeatureBatch, FeatureCache, build_cache, load_cache, save_cache
from .losses import (
    DecorConfig,
    LossTerms,
    correlation_r2,
    decor_loss,
    draw_branch,
    draw_projection,
    ensemble_decor_loss,
    loss_terms,
    pair_loss,
    total_loss,
)

__all__ = [
    "DecorConfig",
    "FeatureBatch",
    "FeatureCache",
    "LossTerms",
    "build_cache",
    "correlation_r2",
    "decor_loss",
    "draw_branch",
    "draw_projection",
    "ensemble_decor_loss",
    "load_cache",
    "loss_terms",
    "pair_loss",
    "save_cache",
    "total_loss",
]

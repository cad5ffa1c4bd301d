"""Frozen per-model features over the whole training set."""

__docformat__ = "google"

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from ..container import read_container, write_container
from ..core import Tensor
from ..log import logger
from ..model import infer

CACHE_KIND = "feature-cache"


@dataclass(frozen=True)
class FeatureBatch:
    """Feature rows of one training batch and their training-set positions."""

    values: Tensor
    sample_indices: np.ndarray

    def __post_init__(self):
        indices = np.asarray(self.sample_indices, dtype=np.int64).reshape(-1)
        if self.values.ndim != 2 or self.values.shape[0] != indices.size:
            raise ValueError(
                f"{indices.size} indices for feature values of shape {self.values.shape}"
            )
        if np.unique(indices).size != indices.size:
            raise ValueError("sample indices within a batch must be unique")
        object.__setattr__(self, "sample_indices", indices)


@dataclass(frozen=True, eq=False)
class FeatureCache:
    """Row ``i`` holds model features of training sample ``i``."""

    model_id: str
    features: np.ndarray
    record_ids: Tuple[str, ...]

    def __post_init__(self):
        features = np.array(self.features, dtype=np.float64)
        if features.ndim != 2 or features.shape[0] != len(self.record_ids):
            raise ValueError(
                f"cache of shape {features.shape} for {len(self.record_ids)} records"
            )
        features.setflags(write=False)
        object.__setattr__(self, "features", features)
        object.__setattr__(self, "record_ids", tuple(self.record_ids))

    def rows(self, indices) -> FeatureBatch:
        indices = np.asarray(indices, dtype=np.int64)
        if indices.size and (indices.min() < 0 or indices.max() >= self.features.shape[0]):
            raise ValueError(
                f"cache {self.model_id!r} is missing rows for the requested batch "
                f"(holds {self.features.shape[0]} rows)"
            )
        return FeatureBatch(Tensor(self.features[indices]), indices)

    def equals(self, other):
        return (
            self.model_id == other.model_id
            and self.record_ids == other.record_ids
            and np.array_equal(self.features, other.features)
        )


def build_cache(params, train_set, model_id="", view=None) -> FeatureCache:
    """One eval pass over ``train_set`` in its canonical order.

    Args:
    - params (ClassifierParams): Trained model.
    - train_set (Dataset): Preprocessed training split.
    - model_id (str): Key stored with the cache.
    - view (BandView, optional): Input filter the model was trained behind.
    """
    signals = train_set.signals()
    if view is not None:
        signals = view.apply(signals)
    _logits, features = infer(params, signals)
    logger().debug(f"Built feature cache {model_id!r} with shape {features.shape}")
    return FeatureCache(model_id, features, train_set.ids)


def save_cache(cache: FeatureCache, path):
    write_container(
        path,
        CACHE_KIND,
        {"model_id": cache.model_id, "record_ids": list(cache.record_ids)},
        {"features": cache.features},
    )


def load_cache(path, model_id: Optional[str] = None) -> FeatureCache:
    meta, arrays = read_container(path, CACHE_KIND)
    if model_id is not None and meta["model_id"] != model_id:
        raise ValueError(
            f"{path} caches model {meta['model_id']!r}, expected {model_id!r}"
        )
    return FeatureCache(meta["model_id"], arrays["features"], meta["record_ids"])

"""On-disk layout of a trained ensemble: ``<root>/<kind>/arm{k}.*``."""

__docformat__ = "google"

import json
from pathlib import Path
from typing import NamedTuple

from ..decor import load_cache, save_cache
from ..model import load_params, save_params
from .kinds import KIND_ORDER, NUM_ARMS, EnsembleKind
from .reports import write_curve_csv, write_json
from .training import ArmResult

MANIFEST = "manifest.json"


class ArmPaths(NamedTuple):
    params: Path
    cache: Path
    curve: Path


def kind_dir(root, kind) -> Path:
    return Path(root) / EnsembleKind(kind).value


def arm_paths(root, kind, k) -> ArmPaths:
    directory = kind_dir(root, kind)
    return ArmPaths(
        directory / f"arm{k}.params",
        directory / f"arm{k}.cache",
        directory / f"arm{k}_curve.csv",
    )


def existing_arm_files(root, kind, from_arm=0):
    """Arm files at or above ``from_arm`` that are already on disk."""
    return [
        path
        for k in range(from_arm, NUM_ARMS)
        for path in arm_paths(root, kind, k)
        if path.exists()
    ]


def save_arm(root, kind, k, result: ArmResult):
    paths = arm_paths(root, kind, k)
    model_id = f"arm{k}"
    save_params(result.params, paths.params, model_id=model_id)
    save_cache(result.cache, paths.cache)
    if result.curve is not None:
        write_curve_csv(result.curve, paths.curve)


def load_arm(root, kind, k) -> ArmResult:
    paths = arm_paths(root, kind, k)
    for path in (paths.params, paths.cache):
        if not path.exists():
            raise FileNotFoundError(f"arm {k} of {EnsembleKind(kind).value}: {path} does not exist")
    return ArmResult(load_params(paths.params), load_cache(paths.cache, model_id=f"arm{k}"))


def load_arms(root, kind, count=NUM_ARMS):
    return [load_arm(root, kind, k) for k in range(count)]


def write_manifest(root, kind, payload):
    write_json(kind_dir(root, kind) / MANIFEST, payload)


def read_manifest(root, kind):
    path = kind_dir(root, kind) / MANIFEST
    if not path.exists():
        raise FileNotFoundError(f"ensemble manifest {path} does not exist")
    return json.loads(path.read_text(encoding="utf-8"))


def trained_kinds(root):
    """Kinds with a complete set of arm parameters under ``root``, in canonical order."""
    return [
        kind
        for kind in KIND_ORDER
        if all(arm_paths(root, kind, k).params.exists() for k in range(NUM_ARMS))
    ]

"""JSON run configuration.

One file describes a whole experiment. Each section maps onto the frozen
config dataclass of the module that owns it; unknown keys and values of the
wrong type are rejected with their dotted key path before any work starts.
"""

__docformat__ = "google"

import dataclasses
import json
import os
import typing
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .attacks import AttackGrid
from .decor import DecorConfig
from .ensemble import TrainConfig
from .filters import BankConfig
from .model import ArchConfig
from .signals import SynthConfig

OUTPUT_ROOT_ENV = "DNA_ENSEMBLES_OUTPUT_ROOT"
SECTIONS = ("data", "arch", "train", "decor", "bank", "attack", "output_dir")


class ConfigError(ValueError):
    """Invalid run configuration; ``key`` is the dotted path of the culprit."""

    def __init__(self, key, message):
        self.key = key
        super().__init__(f"{key}: {message}" if key else message)


@dataclass(frozen=True)
class DataConfig:
    """Where records come from and how they are cut and split.

    Exactly one of ``synthetic`` and ``manifest`` is set.
    """

    synthetic: Optional[SynthConfig] = field(default_factory=SynthConfig)
    manifest: Optional[str] = None
    length: int = 512
    split_seed: int = 0
    train_fraction: float = 0.9

    def __post_init__(self):
        if (self.synthetic is None) == (self.manifest is None):
            raise ValueError("exactly one of synthetic and manifest must be given")
        if self.length < 16:
            raise ValueError(f"length must be at least 16, got {self.length}")
        if not 0 < self.train_fraction < 1:
            raise ValueError(f"train_fraction must lie in (0, 1), got {self.train_fraction}")

    def to_dict(self):
        return {
            "synthetic": None if self.synthetic is None else dataclasses.asdict(self.synthetic),
            "manifest": self.manifest,
            "length": self.length,
            "split_seed": self.split_seed,
            "train_fraction": self.train_fraction,
        }


@dataclass(frozen=True)
class RunConfig:
    data: DataConfig = field(default_factory=DataConfig)
    arch: ArchConfig = field(default_factory=ArchConfig)
    train: TrainConfig = field(default_factory=TrainConfig)
    attack: AttackGrid = field(default_factory=AttackGrid)
    output_dir: str = "runs/default"

    @property
    def decor(self) -> DecorConfig:
        return self.train.decor

    @property
    def bank(self) -> BankConfig:
        return self.train.bank

    def output_path(self, *parts) -> Path:
        return resolve_output(Path(self.output_dir, *parts))

    def to_dict(self):
        return {
            "data": self.data.to_dict(),
            "arch": self.arch.to_dict(),
            "train": self.train.to_dict(),
            "decor": dataclasses.asdict(self.decor),
            "bank": self.bank.to_dict(),
            "attack": self.attack.to_dict(),
            "output_dir": self.output_dir,
        }


def resolve_output(path) -> Path:
    """Re-root a relative output path under ``$DNA_ENSEMBLES_OUTPUT_ROOT`` if set."""
    path = Path(path)
    root = os.environ.get(OUTPUT_ROOT_ENV)
    if root and not path.is_absolute():
        return Path(root) / path
    return path


def default_config() -> RunConfig:
    return RunConfig()


def _matches(annotation, value):
    origin = typing.get_origin(annotation)
    if annotation is bool:
        return isinstance(value, bool)
    if annotation is int:
        return isinstance(value, int) and not isinstance(value, bool)
    if annotation is float:
        return isinstance(value, (int, float)) and not isinstance(value, bool)
    if annotation is str:
        return isinstance(value, str)
    if origin is typing.Union:
        return any(_matches(arg, value) for arg in typing.get_args(annotation))
    if annotation is type(None):
        return value is None
    if origin is tuple:
        if not isinstance(value, (list, tuple)):
            return False
        args = typing.get_args(annotation)
        if len(args) == 2 and args[1] is Ellipsis:
            return all(_matches(args[0], item) for item in value)
        if args:
            return len(args) == len(value) and all(map(_matches, args, value))
        return True
    if dataclasses.is_dataclass(annotation):
        return isinstance(value, dict)
    return True


def _offender(annotation, value):
    """The innermost value that breaks ``annotation``, for error messages."""
    if typing.get_origin(annotation) is tuple and isinstance(value, (list, tuple)):
        args = typing.get_args(annotation)
        item_types = [args[0]] * len(value) if len(args) == 2 and args[1] is Ellipsis else args
        for item_type, item in zip(item_types, value):
            if not _matches(item_type, item):
                return _offender(item_type, item)
    return value


def _build(cls, value, path, exclude=(), overrides=None):
    if value is None:
        value = {}
    if not isinstance(value, dict):
        raise ConfigError(path, "expected an object")
    known = {f.name: f for f in dataclasses.fields(cls) if f.name not in exclude}
    for key in sorted(value):
        if key not in known:
            raise ConfigError(f"{path}.{key}", "unknown key")
    hints = typing.get_type_hints(cls)
    kwargs = {}
    for key, raw in value.items():
        if not _matches(hints[key], raw):
            wrong = _offender(hints[key], raw)
            raise ConfigError(f"{path}.{key}", f"wrong type {type(wrong).__name__}")
        kwargs[key] = raw
    kwargs.update(overrides or {})
    try:
        return cls(**kwargs)
    except (TypeError, ValueError) as exc:
        raise ConfigError(path, str(exc)) from exc


def _build_data(value):
    value = {} if value is None else value
    if not isinstance(value, dict):
        raise ConfigError("data", "expected an object")
    overrides = {}
    synthetic = value.get("synthetic", {} if value.get("manifest") is None else None)
    if synthetic is not None:
        overrides["synthetic"] = _build(SynthConfig, synthetic, "data.synthetic")
        if "length" not in value:
            overrides["length"] = overrides["synthetic"].length
    else:
        overrides["synthetic"] = None
    rest = {key: raw for key, raw in value.items() if key != "synthetic"}
    return _build(DataConfig, rest, "data", overrides=overrides)


def config_from_dict(raw) -> RunConfig:
    """Validate a parsed JSON document and assemble the :class:`RunConfig`."""
    if not isinstance(raw, dict):
        raise ConfigError("", "the config must be a JSON object")
    for key in sorted(raw):
        if key not in SECTIONS:
            raise ConfigError(key, "unknown key")

    data = _build_data(raw.get("data"))
    arch_section = raw.get("arch") or {}
    arch_defaults = {}
    if isinstance(arch_section, dict):
        if "input_length" not in arch_section:
            arch_defaults["input_length"] = data.length
        if "num_classes" not in arch_section and data.synthetic is not None:
            arch_defaults["num_classes"] = data.synthetic.num_classes
    arch = _build(ArchConfig, arch_section, "arch", overrides=arch_defaults)
    if arch.input_length != data.length:
        raise ConfigError(
            "arch.input_length", f"{arch.input_length} does not match data.length {data.length}"
        )

    decor = _build(DecorConfig, raw.get("decor"), "decor")
    if decor.r > arch.feature_dim:
        raise ConfigError("decor.r", f"{decor.r} exceeds arch.feature_dim {arch.feature_dim}")
    bank = _build(BankConfig, raw.get("bank"), "bank")
    train = _build(
        TrainConfig,
        raw.get("train"),
        "train",
        exclude=("decor", "bank"),
        overrides={"decor": decor, "bank": bank},
    )
    attack = _build(AttackGrid, raw.get("attack"), "attack")

    output_dir = raw.get("output_dir", RunConfig.output_dir)
    if not isinstance(output_dir, str) or not output_dir:
        raise ConfigError("output_dir", "expected a non-empty string")
    return RunConfig(data, arch, train, attack, output_dir)


def load_config(path=None) -> RunConfig:
    """Read and validate a JSON run config; ``None`` gives the defaults.

    Raises:
    ConfigError: unreadable JSON, unknown keys, wrong types or invalid values.
    """
    if path is None:
        return default_config()
    path = Path(path)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError as exc:
        raise ConfigError("", f"config file {path} does not exist") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError("", f"{path} is not valid JSON: {exc}") from exc
    return config_from_dict(raw)

__docformat__ = "google"

from dataclasses import dataclass
from typing import Dict, Tuple

import numpy as np

from ..core.ops.conv import output_length

DEFAULT_CONV_BLOCKS = ((8, 7, 2), (16, 7, 2), (32, 5, 2))


@dataclass(frozen=True)
class ArchConfig:
    """Small 1-D CNN: conv blocks, global average pool, dense feature layer, head.

    Every conv block is ``(out_channels, kernel, stride)`` followed by ReLU and
    padded by ``kernel // 2``. The ReLU output of the dense layer is the
    feature layer that decorrelation works on.
    """

    conv_blocks: Tuple[Tuple[int, int, int], ...] = DEFAULT_CONV_BLOCKS
    feature_dim: int = 64
    num_classes: int = 3
    input_length: int = 512

    def __post_init__(self):
        blocks = tuple(tuple(int(v) for v in block) for block in self.conv_blocks)
        object.__setattr__(self, "conv_blocks", blocks)
        if not blocks:
            raise ValueError("at least one conv block is required")
        for index, block in enumerate(blocks):
            if len(block) != 3:
                raise ValueError(f"conv block {index} must be (channels, kernel, stride)")
            channels, kernel, stride = block
            if channels < 1 or kernel < 1 or stride < 1:
                raise ValueError(f"conv block {index} values must be at least 1, got {block}")
        if self.feature_dim < 1:
            raise ValueError("feature_dim must be at least 1")
        if self.num_classes < 2:
            raise ValueError("num_classes must be at least 2")
        if min(self.layer_lengths()) < 1:
            raise ValueError(
                f"input_length {self.input_length} is too short for the conv blocks"
            )

    @classmethod
    def from_value(cls, value):
        if value is None:
            return cls()
        if isinstance(value, cls):
            return value
        if isinstance(value, dict):
            return cls(**value)
        raise TypeError("arch must be an ArchConfig, dict, or None")

    def layer_lengths(self):
        lengths = []
        length = self.input_length
        for _channels, kernel, stride in self.conv_blocks:
            length = output_length(length, kernel, stride, kernel // 2)
            lengths.append(length)
        return lengths

    def parameter_shapes(self) -> Dict[str, Tuple[int, ...]]:
        shapes = {}
        in_channels = 1
        for index, (channels, kernel, _stride) in enumerate(self.conv_blocks):
            shapes[f"conv{index}.weight"] = (channels, in_channels, kernel)
            shapes[f"conv{index}.bias"] = (channels,)
            in_channels = channels
        shapes["dense.weight"] = (in_channels, self.feature_dim)
        shapes["dense.bias"] = (self.feature_dim,)
        shapes["head.weight"] = (self.feature_dim, self.num_classes)
        shapes["head.bias"] = (self.num_classes,)
        return shapes

    def to_dict(self):
        return {
            "conv_blocks": [list(block) for block in self.conv_blocks],
            "feature_dim": self.feature_dim,
            "num_classes": self.num_classes,
            "input_length": self.input_length,
        }


@dataclass(frozen=True, eq=False)
class ClassifierParams:
    arch: ArchConfig
    weights: Dict[str, np.ndarray]

    def __post_init__(self):
        expected = self.arch.parameter_shapes()
        if set(self.weights) != set(expected):
            raise ValueError(
                f"parameter names {sorted(self.weights)} do not match {sorted(expected)}"
            )
        frozen = {}
        for name, shape in expected.items():
            array = np.array(self.weights[name], dtype=np.float64)
            if array.shape != shape:
                raise ValueError(f"{name} has shape {array.shape}, expected {shape}")
            if not np.all(np.isfinite(array)):
                raise ValueError(f"{name} holds non-finite values")
            array.setflags(write=False)
            frozen[name] = array
        object.__setattr__(self, "weights", frozen)

    def with_weights(self, weights):
        return ClassifierParams(self.arch, weights)

    def equals(self, other):
        return self.arch == other.arch and all(
            np.array_equal(self.weights[name], other.weights[name])
            for name in self.weights
        )


def init_params(arch: ArchConfig, seed) -> ClassifierParams:
    """He-style fan-in scaled normal weights, zero biases, deterministic per seed."""
    rng = np.random.default_rng(seed)
    weights = {}
    for name, shape in arch.parameter_shapes().items():
        if name.endswith(".bias"):
            weights[name] = np.zeros(shape)
            continue
        fan_in = int(np.prod(shape[1:])) if name.startswith("conv") else shape[0]
        weights[name] = rng.normal(0.0, np.sqrt(2.0 / fan_in), size=shape)
    return ClassifierParams(arch, weights)

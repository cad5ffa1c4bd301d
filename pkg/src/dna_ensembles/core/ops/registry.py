__docformat__ = "google"

import numpy as np

from ...log import logger
from .base import Op


class NonFiniteError(FloatingPointError):
    """Raised when an operation or gradient produces NaN or Inf values."""


class OpRegistry:
    def __init__(self):
        self._ops = {}
        self._loaded = False

    def register(self, op: Op):
        if op.name in self._ops:
            raise ValueError(f"Op '{op.name}' is already registered")
        self._ops[op.name] = op
        return op

    def get(self, name: str) -> Op:
        self.ensure_loaded()
        try:
            return self._ops[name]
        except KeyError as exc:
            known = ", ".join(sorted(self._ops))
            raise KeyError(f"Unknown op '{name}'. Known ops: {known}") from exc

    def names(self, family=None):
        self.ensure_loaded()
        return tuple(
            name
            for name, op in self._ops.items()
            if family is None or op.family == family
        )

    def apply(self, name: str, *args, **kwargs):
        from ..tensor import Tensor, as_tensor

        op = self.get(name)
        inputs, params = op.bind(args, kwargs)
        inputs = tuple(as_tensor(value) for value in inputs)

        value, saved = op.forward(tuple(t.data for t in inputs), params)
        value = np.asarray(value, dtype=np.float64)
        check_finite(value, f"op '{name}'")

        return Tensor(
            value,
            requires_grad=any(t.requires_grad for t in inputs),
            op=op,
            inputs=inputs,
            params=params,
            saved=saved,
        )

    def ensure_loaded(self):
        if self._loaded:
            return
        self._loaded = True
        from .loader import load_ops

        load_ops(self)
        logger().debug(f"Loaded {len(self._ops)} ops")


def check_finite(value, what):
    bad = ~np.isfinite(value)
    if bad.any():
        message = f"{what} produced {int(bad.sum())} non-finite value(s)"
        logger().error(message)
        raise NonFiniteError(message)


registry = OpRegistry()

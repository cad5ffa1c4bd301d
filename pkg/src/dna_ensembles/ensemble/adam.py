"""Bias-corrected Adam as a pure function over named parameter arrays."""

__docformat__ = "google"

from dataclasses import dataclass, field
from typing import Dict

import numpy as np

from ..core import NonFiniteError
from ..log import logger


@dataclass(frozen=True)
class AdamState:
    """Step count and first/second moment estimates per parameter name."""

    step: int = 0
    m: Dict[str, np.ndarray] = field(default_factory=dict)
    v: Dict[str, np.ndarray] = field(default_factory=dict)


def adam_step(params, grads, state: AdamState, lr, beta1=0.9, beta2=0.999, eps=1e-8):
    """One Adam update.

    Args:
    - params (Mapping[str, ndarray]): Current values.
    - grads (Mapping[str, ndarray]): Gradients with matching names and shapes.
    - state (AdamState): Moments from the previous step.
    - lr (float): Learning rate.

    Returns:
    tuple: (new params dict, new AdamState). Inputs are not modified.

    Raises:
    NonFiniteError: a gradient holds NaN or Inf.
    """
    if set(params) != set(grads):
        raise ValueError(f"gradient names {sorted(grads)} do not match {sorted(params)}")

    step = state.step + 1
    bc1 = 1.0 - beta1**step
    bc2 = 1.0 - beta2**step
    new_params, m, v = {}, {}, {}
    for name, value in params.items():
        g = np.asarray(grads[name], dtype=np.float64)
        if g.shape != np.shape(value):
            raise ValueError(f"{name}: gradient shape {g.shape} != {np.shape(value)}")
        bad = np.count_nonzero(~np.isfinite(g))
        if bad:
            logger().error(f"Adam step {step}: {name} has {bad} non-finite gradient entries")
            raise NonFiniteError(f"{bad} non-finite gradient entries in {name}")

        m[name] = beta1 * state.m.get(name, 0.0) + (1.0 - beta1) * g
        v[name] = beta2 * state.v.get(name, 0.0) + (1.0 - beta2) * (g * g)
        denom = np.sqrt(v[name] / bc2) + eps
        new_params[name] = value - (lr / bc1) * m[name] / denom
    return new_params, AdamState(step, m, v)

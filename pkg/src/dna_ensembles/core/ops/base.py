__docformat__ = "google"

from dataclasses import dataclass
from typing import Callable, Optional


class OpFamily:
    ELEMENTWISE = "elementwise"
    REDUCTION = "reduction"
    SHAPE = "shape"
    LINALG = "linalg"
    CONV = "conv"
    SPECTRAL = "spectral"
    LOSS = "loss"


@dataclass(frozen=True)
class Op:
    """Metadata for one differentiable operation.

    ``forward(values, params)`` receives the input arrays and bound parameters
    and returns ``(value, saved)``. ``backward(grad, values, value, saved,
    params)`` returns one adjoint per input, or ``None`` for inputs that are
    not differentiable.
    """

    name: str
    family: str
    arity: int
    forward: Callable
    backward: Callable
    params: tuple = ()
    defaults: Optional[dict] = None

    def bind(self, args, kwargs):
        if len(args) < self.arity:
            raise TypeError(f"{self.name} expects {self.arity} tensor argument(s)")

        inputs = args[: self.arity]
        param_args = args[self.arity :]
        if len(param_args) > len(self.params):
            raise TypeError(f"{self.name} got too many positional arguments")

        params = dict(zip(self.params, param_args))
        for key, value in kwargs.items():
            if key not in self.params:
                raise TypeError(f"{self.name} got an unexpected parameter '{key}'")
            if key in params:
                raise TypeError(f"{self.name} got multiple values for '{key}'")
            params[key] = value

        params = {**(self.defaults or {}), **params}
        missing = tuple(param for param in self.params if param not in params)
        if missing:
            names = ", ".join(missing)
            raise TypeError(f"{self.name} missing required parameter(s): {names}")

        return inputs, params

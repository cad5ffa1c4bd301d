"""Graph nodes for reverse-mode differentiation."""

__docformat__ = "google"

from typing import Optional

import numpy as np


class Tensor:
    """A float64 array plus the operation that produced it.

    Leaves carry ``op=None``. Every other tensor remembers its op, its input
    tensors, the bound op parameters and whatever the forward pass saved for
    the backward pass. Values are read-only once created.

    Example:
    >>> w = Tensor(np.ones((2, 2)), requires_grad=True)
    >>> loss = (w @ w).sum()
    >>> loss.backward()
    >>> w.grad.shape
    (2, 2)
    """

    __array_ufunc__ = None

    def __init__(
        self,
        data,
        *,
        requires_grad=False,
        op=None,
        inputs=(),
        params=None,
        saved=None,
    ):
        value = np.array(data, dtype=np.float64)
        value.setflags(write=False)
        self.data = value
        self.requires_grad = bool(requires_grad)
        self.op = op
        self.inputs = tuple(inputs)
        self.params = params or {}
        self.saved = saved
        self.grad: Optional[np.ndarray] = None

    def __repr__(self):
        name = self.op.name if self.op is not None else "leaf"
        return f"Tensor(shape={self.shape}, op={name})"

    @property
    def shape(self):
        return self.data.shape

    @property
    def ndim(self):
        return self.data.ndim

    @property
    def T(self):
        return _apply("transpose", self)

    def numpy(self):
        return self.data

    def item(self):
        if self.data.size != 1:
            raise ValueError(f"item() needs a single value, got shape {self.shape}")
        return float(self.data.reshape(-1)[0])

    def detach(self):
        return Tensor(self.data)

    def __add__(self, other):
        return _apply("add", self, other)

    def __radd__(self, other):
        return _apply("add", other, self)

    def __sub__(self, other):
        return _apply("sub", self, other)

    def __rsub__(self, other):
        return _apply("sub", other, self)

    def __mul__(self, other):
        return _apply("mul", self, other)

    def __rmul__(self, other):
        return _apply("mul", other, self)

    def __neg__(self):
        return _apply("scale", self, factor=-1.0)

    def __matmul__(self, other):
        return _apply("matmul", self, other)

    def __rmatmul__(self, other):
        return _apply("matmul", other, self)

    def sum(self, axis=None):
        return _apply("sum", self, axis=axis)

    def mean(self, axis=None):
        return _apply("mean", self, axis=axis)

    def reshape(self, *shape):
        if len(shape) == 1 and isinstance(shape[0], (tuple, list)):
            shape = tuple(shape[0])
        return _apply("reshape", self, shape=tuple(shape))

    def backward(self, grad=None):
        """Propagate adjoints from this tensor to every node requiring grad.

        Each call resets the adjoints of the graph below this tensor, so the
        ``grad`` attributes always describe the most recent backward pass.
        """
        if grad is None:
            if self.data.size != 1:
                raise ValueError("backward without a seed needs a scalar output")
            grad = np.ones_like(self.data)
        grad = np.asarray(grad, dtype=np.float64)
        if grad.shape != self.shape:
            raise ValueError(f"seed shape {grad.shape} does not match {self.shape}")

        order = _topological_order(self)
        adjoints = {id(self): grad}
        for node in reversed(order):
            adjoint = adjoints.pop(id(node), None)
            if adjoint is None:
                adjoint = np.zeros_like(node.data)
            node.grad = adjoint
            if node.op is None:
                continue

            grads = node.op.backward(
                adjoint,
                tuple(t.data for t in node.inputs),
                node.data,
                node.saved,
                node.params,
            )
            for parent, parent_grad in zip(node.inputs, grads):
                if not parent.requires_grad or parent_grad is None:
                    continue
                key = id(parent)
                if key in adjoints:
                    adjoints[key] = adjoints[key] + parent_grad
                else:
                    adjoints[key] = np.asarray(parent_grad, dtype=np.float64)


def as_tensor(value):
    if isinstance(value, Tensor):
        return value
    return Tensor(value)


def gradients(output, inputs):
    """Return d(output)/d(input) for each tensor in ``inputs``."""
    output.backward()
    return [
        t.grad if t.grad is not None else np.zeros_like(t.data) for t in inputs
    ]


def _topological_order(root):
    """Nodes requiring grad, parents before children, each exactly once."""
    order = []
    visited = set()
    stack = [(root, False)]
    while stack:
        node, expanded = stack.pop()
        if expanded:
            order.append(node)
            continue
        if id(node) in visited:
            continue
        visited.add(id(node))
        stack.append((node, True))
        for parent in node.inputs:
            if parent.requires_grad and id(parent) not in visited:
                stack.append((parent, False))
    return order


def _apply(name, *args, **kwargs):
    from .ops.registry import registry

    return registry.apply(name, *args, **kwargs)

"""Differentiable operations, registered by name and loaded on first use."""

__docformat__ = "google"

from .base import Op, OpFamily
from .registry import NonFiniteError, OpRegistry, registry

__all__ = ["NonFiniteError", "Op", "OpFamily", "OpRegistry", "registry"]

"""Adversarial perturbations against a target arm and attacked test sets."""

__docformat__ = "google"

from .crafting import AttackedSet, craft_set, load_attacked_set, save_attacked_set, summarize
from .gradient import pgd, perturb, sap, smoothing
from .kernels import averaged_kernel, gaussian_kernel
from .spec import AttackFamily, AttackGrid, AttackSpec, default_sap_kernels

__all__ = [
    "AttackFamily",
    "AttackGrid",
    "AttackSpec",
    "AttackedSet",
    "averaged_kernel",
    "craft_set",
    "default_sap_kernels",
    "gaussian_kernel",
    "load_attacked_set",
    "perturb",
    "pgd",
    "sap",
    "save_attacked_set",
    "smoothing",
    "summarize",
]

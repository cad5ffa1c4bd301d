__docformat__ = "google"

from dataclasses import dataclass
from enum import Enum
from numbers import Integral
from typing import Optional, Tuple

DEFAULT_KERNEL_WIDTHS = (5, 9, 13, 17, 21)
DEFAULT_SIGMA_RATIO = 0.25
DEFAULT_STEPS = 20
DEFAULT_ALPHA_RATIO = 0.1


def _is_int(value):
    return isinstance(value, Integral) and not isinstance(value, bool)


class AttackFamily(str, Enum):
    PGD = "pgd"
    SAP = "sap"


def default_sap_kernels(widths=DEFAULT_KERNEL_WIDTHS, sigma_ratio=DEFAULT_SIGMA_RATIO):
    """``(width, sigma)`` pairs with ``sigma = width * sigma_ratio``."""
    return tuple((int(width), float(width) * sigma_ratio) for width in widths)


@dataclass(frozen=True)
class AttackSpec:
    """One attack: family, l-inf budget, step size, step count and SAP kernels.

    ``alpha`` defaults to ``epsilon / 10``. SAP without explicit kernels uses
    :func:`default_sap_kernels`; PGD carries no kernels.
    """

    family: AttackFamily
    epsilon: float
    alpha: Optional[float] = None
    steps: int = DEFAULT_STEPS
    kernels: Tuple[Tuple[int, float], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "family", AttackFamily(self.family))
        object.__setattr__(self, "epsilon", float(self.epsilon))
        if self.epsilon < 0:
            raise ValueError(f"epsilon must be non-negative, got {self.epsilon}")
        if self.steps < 1:
            raise ValueError(f"steps must be at least 1, got {self.steps}")
        alpha = self.epsilon * DEFAULT_ALPHA_RATIO if self.alpha is None else float(self.alpha)
        if alpha < 0:
            raise ValueError(f"alpha must be non-negative, got {alpha}")
        object.__setattr__(self, "alpha", alpha)

        kernels = tuple((s, float(sigma)) for s, sigma in self.kernels)
        if self.family is AttackFamily.PGD:
            if kernels:
                raise ValueError("PGD takes no smoothing kernels")
        elif not kernels:
            kernels = default_sap_kernels()
        for width, sigma in kernels:
            if not _is_int(width) or width < 1 or width % 2 == 0:
                raise ValueError(f"kernel width must be a positive odd number, got {width!r}")
            if sigma <= 0:
                raise ValueError(f"kernel sigma must be positive, got {sigma}")
        object.__setattr__(self, "kernels", tuple((int(s), sigma) for s, sigma in kernels))

    @property
    def name(self):
        """Directory name of the attacked set, e.g. ``pgd-eps0.5``."""
        return f"{self.family.value}-eps{self.epsilon:g}"

    def to_dict(self):
        return {
            "family": self.family.value,
            "epsilon": self.epsilon,
            "alpha": self.alpha,
            "steps": self.steps,
            "kernels": [list(kernel) for kernel in self.kernels],
        }

    @classmethod
    def from_dict(cls, value):
        return cls(
            family=value["family"],
            epsilon=value["epsilon"],
            alpha=value.get("alpha"),
            steps=value.get("steps", DEFAULT_STEPS),
            kernels=tuple(tuple(kernel) for kernel in value.get("kernels", ())),
        )


@dataclass(frozen=True)
class AttackGrid:
    """Families times budgets swept by the ``attack`` command.

    Budgets are in units of the training-set standard deviation, which is 1
    after z-scoring.
    """

    families: Tuple[str, ...] = (AttackFamily.PGD.value, AttackFamily.SAP.value)
    epsilons: Tuple[float, ...] = (0.1, 0.25, 0.5, 1.0, 1.5)
    steps: int = DEFAULT_STEPS
    alpha_ratio: float = DEFAULT_ALPHA_RATIO
    kernel_widths: Tuple[int, ...] = DEFAULT_KERNEL_WIDTHS
    sigma_ratio: float = DEFAULT_SIGMA_RATIO
    target_arm: int = 0

    def __post_init__(self):
        families = tuple(AttackFamily(family).value for family in self.families)
        if not families:
            raise ValueError("attack grid needs at least one family")
        if len(set(families)) != len(families):
            raise ValueError(f"duplicate attack families in {families}")
        epsilons = tuple(float(eps) for eps in self.epsilons)
        if any(eps < 0 for eps in epsilons):
            raise ValueError(f"epsilons must be non-negative, got {epsilons}")
        if len(set(epsilons)) != len(epsilons):
            raise ValueError(f"duplicate epsilons in {epsilons}")
        if self.alpha_ratio < 0:
            raise ValueError(f"alpha_ratio must be non-negative, got {self.alpha_ratio}")
        if self.sigma_ratio <= 0:
            raise ValueError(f"sigma_ratio must be positive, got {self.sigma_ratio}")
        if self.target_arm not in (0, 1, 2):
            raise ValueError(f"target_arm must be 0, 1 or 2, got {self.target_arm}")
        if not _is_int(self.steps) or self.steps < 1:
            raise ValueError(f"steps must be an integer of at least 1, got {self.steps!r}")
        widths = tuple(self.kernel_widths)
        if not widths:
            raise ValueError("SAP needs at least one kernel width")
        for width in widths:
            if not _is_int(width) or width < 1 or width % 2 == 0:
                raise ValueError(f"kernel widths must be positive odd integers, got {width!r}")
        object.__setattr__(self, "families", families)
        object.__setattr__(self, "epsilons", epsilons)
        object.__setattr__(self, "kernel_widths", tuple(int(w) for w in widths))

    @classmethod
    def from_value(cls, value):
        if value is None:
            return cls()
        if isinstance(value, cls):
            return value
        if isinstance(value, dict):
            return cls(**value)
        raise TypeError("attack grid must be an AttackGrid, dict, or None")

    def cells(self):
        """Every grid cell as an :class:`AttackSpec`, family-major."""
        specs = []
        for family in self.families:
            kernels = ()
            if family == AttackFamily.SAP.value:
                kernels = default_sap_kernels(self.kernel_widths, self.sigma_ratio)
            for eps in self.epsilons:
                specs.append(
                    AttackSpec(family, eps, eps * self.alpha_ratio, self.steps, kernels)
                )
        return specs

    def to_dict(self):
        return {
            "families": list(self.families),
            "epsilons": list(self.epsilons),
            "steps": self.steps,
            "alpha_ratio": self.alpha_ratio,
            "kernel_widths": list(self.kernel_widths),
            "sigma_ratio": self.sigma_ratio,
            "target_arm": self.target_arm,
        }

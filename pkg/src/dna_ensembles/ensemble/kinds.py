__docformat__ = "google"

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

NUM_ARMS = 3


@dataclass(frozen=True)
class ArmRole:
    """How one arm is trained: which band it sees and whether it decorrelates.

    ``band`` indexes the filter bank (0 = low band, 1 = high band); ``None``
    means the arm sees raw signals.
    """

    index: int
    band: Optional[int] = None
    decorrelate: bool = False

    @property
    def model_id(self):
        return f"arm{self.index}"

    def to_dict(self):
        return {"index": self.index, "band": self.band, "decorrelate": self.decorrelate}


class EnsembleKind(str, Enum):
    COR = "cor"
    DEC = "dec"
    FCOR = "fcor"
    FDEC = "fdec"

    @property
    def filtered(self):
        return self in (EnsembleKind.FCOR, EnsembleKind.FDEC)

    @property
    def decorrelated(self):
        return self in (EnsembleKind.DEC, EnsembleKind.FDEC)

    @property
    def roles(self) -> Tuple[ArmRole, ...]:
        """Arm 0 is the unfiltered cross-entropy base model for every kind."""
        roles = [ArmRole(0)]
        for index in range(1, NUM_ARMS):
            roles.append(
                ArmRole(
                    index,
                    band=index - 1 if self.filtered else None,
                    decorrelate=self.decorrelated,
                )
            )
        return tuple(roles)


KIND_ORDER = (EnsembleKind.COR, EnsembleKind.DEC, EnsembleKind.FCOR, EnsembleKind.FDEC)

from dataclasses import dataclass
from enum import Enum

from ckah.algebra.pomsets import HOLE
from ckah.algebra.pomsets.models import LabelledPoset, SpPomset
from ckah.core.exceptions import PreconditionViolated


@dataclass(frozen=True)
class SpContext:
    """Series-parallel pomset over the alphabet plus `*`, with exactly one `*` leaf."""

    body: SpPomset

    def __post_init__(self):
        holes = sum(1 for label in self.body.leaves() if label == HOLE)
        if holes != 1:
            raise PreconditionViolated(
                f"a context needs exactly one hole, {self.body.key} has {holes}"
            )

    @property
    def key(self) -> str:
        return self.body.key

    @property
    def size(self) -> int:
        return self.body.size - 1

    def __lt__(self, other: "SpContext") -> bool:
        return self.body < other.body

    def __str__(self) -> str:
        return self.body.key


@dataclass(frozen=True)
class GeneralContext:
    """Labelled poset with exactly one hole-labelled node."""

    poset: LabelledPoset

    def __post_init__(self):
        holes = self.poset.holes()
        if len(holes) != 1:
            raise PreconditionViolated(
                f"a context needs exactly one hole node, found {len(holes)}"
            )

    @property
    def hole(self) -> int:
        return self.poset.holes()[0]


class Side(str, Enum):
    LEFT = "left"
    RIGHT = "right"

"""Finite right module models."""

from dataclasses import dataclass, field
from typing import List, NamedTuple, Optional

import numpy as np

from atomspec.models.ring import FiniteRing
from atomspec.utils.bitset import full_bits, ids_of, is_subset, popcount


def _frozen(table: np.ndarray) -> np.ndarray:
    out = np.array(table, dtype=np.int64, copy=True)
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class RightModule:
    """A finite right module given by its addition and action tables.

    ``act[x, a]`` is the id of ``x·a``. Id 0 is the zero element.
    """

    ring: FiniteRing
    add: np.ndarray
    act: np.ndarray
    provenance: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "add", _frozen(self.add))
        object.__setattr__(self, "act", _frozen(self.act))

    @property
    def order(self) -> int:
        return int(self.add.shape[0])

    @property
    def full(self) -> int:
        """Bitset of all elements."""
        return full_bits(self.order)

    @property
    def is_zero(self) -> bool:
        return self.order == 1

    def __repr__(self) -> str:
        trace = f", {self.provenance}" if self.provenance else ""
        return f"RightModule(order={self.order}{trace})"


@dataclass(frozen=True)
class SubmoduleSet:
    """A submodule stored as a bitset over its parent's element ids.

    Over the regular module this is a right ideal.
    """

    parent: RightModule
    members: int
    generator: Optional[int] = field(default=None, compare=False)

    @property
    def ids(self) -> List[int]:
        return ids_of(self.members)

    @property
    def size(self) -> int:
        return popcount(self.members)

    @property
    def is_zero(self) -> bool:
        return self.members == 1

    @property
    def is_full(self) -> bool:
        return self.members == self.parent.full

    def __contains__(self, x: int) -> bool:
        return bool(self.members >> x & 1)

    def issubset(self, other: "SubmoduleSet") -> bool:
        return is_subset(self.members, other.members)

    def __repr__(self) -> str:
        return f"SubmoduleSet({self.ids})"


class Quotient(NamedTuple):
    """A quotient module together with its projection map."""

    module: RightModule
    projection: np.ndarray
    representatives: np.ndarray


class Inclusion(NamedTuple):
    """A submodule turned into a module, with parent ids of its elements."""

    module: RightModule
    inclusion: np.ndarray


@dataclass(frozen=True)
class Filtration:
    """A chain 0 = L_0 ⊂ L_1 ⊂ ... ⊂ L_n = M with labelled factors.

    ``labels[i]`` is the right ideal (bitset over ring ids) p with
    ``chain[i+1] / chain[i] ≅ R/p``.
    """

    module: RightModule
    chain: List[SubmoduleSet]
    labels: List[int]

    @property
    def length(self) -> int:
        return len(self.labels)

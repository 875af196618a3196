"""Finite ring model."""

import hashlib
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np


def _frozen(table: np.ndarray) -> np.ndarray:
    out = np.array(table, dtype=np.int64, copy=True)
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class FiniteRing:
    """A finite associative unital ring given by full tables.

    Element ids are ``0..order-1`` and id 0 is the additive zero. Instances are
    only produced by ``ring_service.validate_ring``, so every axiom holds.
    Equality and hashing are by identity; compare tables with ``same_tables``.
    """

    add: np.ndarray
    mul: np.ndarray
    one: int
    label: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "add", _frozen(self.add))
        object.__setattr__(self, "mul", _frozen(self.mul))
        object.__setattr__(self, "one", int(self.one))

    @property
    def order(self) -> int:
        return int(self.add.shape[0])

    @property
    def zero(self) -> int:
        return 0

    @cached_property
    def neg(self) -> np.ndarray:
        """Additive inverse of every element."""
        return np.argmin(self.add, axis=1)

    @cached_property
    def is_commutative(self) -> bool:
        return bool(np.array_equal(self.mul, self.mul.T))

    @cached_property
    def fingerprint(self) -> str:
        """Content hash over order, unit and both tables."""
        digest = hashlib.sha256()
        digest.update(f"{self.order}:{self.one}:".encode())
        digest.update(self.add.tobytes())
        digest.update(self.mul.tobytes())
        return digest.hexdigest()

    def same_tables(self, other: "FiniteRing") -> bool:
        return (
            self.one == other.one
            and np.array_equal(self.add, other.add)
            and np.array_equal(self.mul, other.mul)
        )

    def __repr__(self) -> str:
        name = self.label or "ring"
        return f"FiniteRing({name}, order={self.order}, one={self.one})"

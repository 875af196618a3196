"""Subsets of element ids stored as Python ints.

Bit ``i`` is set when element ``i`` belongs to the subset. Ordering helpers
follow the canonical conventions used in reports: ``lex_key`` compares sorted
id tuples, ``lattice_key`` compares cardinality first.
"""

from functools import reduce
from typing import Iterable, List, Tuple

import numpy as np


def bits_of(ids: Iterable[int]) -> int:
    """Build a bitset from element ids."""
    return reduce(lambda acc, i: acc | (1 << int(i)), ids, 0)


def ids_of(bits: int) -> List[int]:
    """Sorted element ids of a bitset."""
    out = []
    i = 0
    while bits:
        if bits & 1:
            out.append(i)
        bits >>= 1
        i += 1
    return out


def popcount(bits: int) -> int:
    """Count the elements."""
    return bits.bit_count()


def full_bits(n: int) -> int:
    """Get the bitset of all n elements."""
    return (1 << n) - 1


def mask_to_bits(mask: np.ndarray) -> int:
    """Convert a boolean vector to a bitset."""
    packed = np.packbits(np.asarray(mask, dtype=bool), bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


def bits_to_mask(bits: int, n: int) -> np.ndarray:
    """Convert a bitset to a boolean vector of length ``n``."""
    raw = bits.to_bytes((n + 7) // 8 or 1, "little")
    unpacked = np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")
    return unpacked[:n].astype(bool)


def rows_to_bits(matrix: np.ndarray) -> List[int]:
    """Convert each row of a boolean matrix to a bitset."""
    if matrix.shape[0] == 0:
        return []
    packed = np.packbits(np.asarray(matrix, dtype=bool), axis=1, bitorder="little")
    return [int.from_bytes(row.tobytes(), "little") for row in packed]


def lex_key(bits: int) -> Tuple[int, ...]:
    """Sort key comparing sorted id tuples."""
    return tuple(ids_of(bits))


def lattice_key(bits: int) -> Tuple[int, Tuple[int, ...]]:
    """Sort key comparing cardinality, then ids."""
    return popcount(bits), lex_key(bits)


def is_subset(small: int, big: int) -> bool:
    """Check inclusion."""
    return small & ~big == 0

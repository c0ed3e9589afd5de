"""Subset masks over element indices.

A mask is a plain Python ``int`` whose bit ``x`` is set when element index
``x`` belongs to the subset. Ints are hashable, canonical and cheap to
union/intersect, which is all the lattice and cover code needs.
"""

from __future__ import annotations

from typing import Iterable

import numpy as np


def from_indices(indices: Iterable[int]) -> int:
    mask = 0
    for x in indices:
        mask |= 1 << int(x)
    return mask


def from_bool(flags: np.ndarray) -> int:
    packed = np.packbits(np.asarray(flags, dtype=bool), bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


def to_bool(mask: int, n: int) -> np.ndarray:
    nbytes = (n + 7) // 8
    raw = np.frombuffer(mask.to_bytes(nbytes, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:n].astype(bool)


def to_indices(mask: int, n: int) -> np.ndarray:
    return np.flatnonzero(to_bool(mask, n))


def full(n: int) -> int:
    return (1 << n) - 1


def size(mask: int) -> int:
    return mask.bit_count()


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0

"""Additive subgroups of a finite ring and their ideal classification."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from . import masks
from .errors import NotASubgroup, TooLarge
from .ring import DEFAULT_MAX_ORDER, FiniteRing


class MemberClass(enum.Enum):
    SUBGROUP = "subgroup"
    SUBRING = "subring"
    LEFT_IDEAL = "left_ideal"
    RIGHT_IDEAL = "right_ideal"
    TWO_SIDED_IDEAL = "ideal"


@dataclass(frozen=True)
class MemberFlags:
    subgroup: bool = True
    subring: bool = False
    left_ideal: bool = False
    right_ideal: bool = False
    two_sided_ideal: bool = False

    def __getitem__(self, cls: MemberClass) -> bool:
        return getattr(self, _ATTR[cls])


_ATTR = {
    MemberClass.SUBGROUP: "subgroup",
    MemberClass.SUBRING: "subring",
    MemberClass.LEFT_IDEAL: "left_ideal",
    MemberClass.RIGHT_IDEAL: "right_ideal",
    MemberClass.TWO_SIDED_IDEAL: "two_sided_ideal",
}


@dataclass
class SubgroupRecord:
    mask: int
    size: int
    flags: MemberFlags
    maximal: dict[MemberClass, bool] = field(default_factory=dict)


def _cyclic(R: FiniteRing, x: int) -> np.ndarray:
    out = [0]
    cur = x
    while cur != 0:
        out.append(cur)
        cur = R.add(cur, x)
    return np.array(out, dtype=np.int64)


def _sumset(R: FiniteRing, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    flags = np.zeros(R.n, dtype=bool)
    flags[R.add_many(a[:, None], b[None, :]).ravel()] = True
    return flags


def additive_closure(R: FiniteRing, seed: Iterable[int]) -> int:
    """Smallest additive subgroup containing ``seed``."""
    members = np.zeros(1, dtype=np.int64)
    flags = np.zeros(R.n, dtype=bool)
    flags[0] = True
    for x in seed:
        if not flags[x]:
            flags = _sumset(R, members, _cyclic(R, int(x)))
            members = np.flatnonzero(flags)
    return masks.from_bool(flags)


def enumerate_subgroups(R: FiniteRing, max_order: int = DEFAULT_MAX_ORDER) -> list[int]:
    """Every additive subgroup of ``R``, sorted by size then mask value.

    Starts from the cyclic subgroups and joins each newly found subgroup with
    every cyclic subgroup it does not contain, until nothing new appears.
    """
    if R.n > max_order:
        raise TooLarge(f"ring has {R.n} elements, limit is {max_order}")
    cyclic: dict[int, np.ndarray] = {}
    for x in range(R.n):
        elems = _cyclic(R, x)
        cyclic.setdefault(masks.from_indices(elems.tolist()), elems)
    seen = set(cyclic)
    frontier = [(m, masks.to_indices(m, R.n)) for m in cyclic]
    while frontier:
        fresh = []
        for mask, elems in frontier:
            for cmask, celems in cyclic.items():
                if cmask & ~mask == 0:
                    continue
                flags = _sumset(R, elems, celems)
                joined = masks.from_bool(flags)
                if joined not in seen:
                    seen.add(joined)
                    fresh.append((joined, np.flatnonzero(flags)))
        frontier = fresh
    return sorted(seen, key=lambda m: (masks.size(m), m))


def _closed(flags: np.ndarray, products: np.ndarray) -> bool:
    return bool(flags[products].all())


def is_subgroup(R: FiniteRing, mask: int) -> bool:
    flags = masks.to_bool(mask, R.n)
    if not flags[0]:
        return False
    members = np.flatnonzero(flags)
    return _closed(flags, R.add_many(members[:, None], members[None, :]))


def classify_subset(R: FiniteRing, mask: int) -> MemberFlags:
    """Which classes the additive subgroup ``mask`` belongs to.

    Left ideal means ``R*S`` lies in ``S``; right ideal means ``S*R`` does.
    """
    if not is_subgroup(R, mask):
        raise NotASubgroup("mask is not an additive subgroup")
    flags = masks.to_bool(mask, R.n)
    members = np.flatnonzero(flags)
    everything = np.arange(R.n)
    left = _closed(flags, R.mul_many(everything[:, None], members[None, :]))
    right = _closed(flags, R.mul_many(members[:, None], everything[None, :]))
    subring = left or right or _closed(flags, R.mul_many(members[:, None], members[None, :]))
    return MemberFlags(True, subring, left, right, left and right)


def generated_member(R: FiniteRing, seed: Iterable[int], cls: MemberClass) -> int:
    """Smallest member of ``cls`` containing ``seed``."""
    mask = additive_closure(R, seed)
    if cls is MemberClass.SUBGROUP:
        return mask
    everything = np.arange(R.n)
    while True:
        members = masks.to_indices(mask, R.n)
        if cls is MemberClass.SUBRING:
            products = [R.mul_many(members[:, None], members[None, :])]
        else:
            products = []
            if cls in (MemberClass.LEFT_IDEAL, MemberClass.TWO_SIDED_IDEAL):
                products.append(R.mul_many(everything[:, None], members[None, :]))
            if cls in (MemberClass.RIGHT_IDEAL, MemberClass.TWO_SIDED_IDEAL):
                products.append(R.mul_many(members[:, None], everything[None, :]))
        extra = np.unique(np.concatenate([p.ravel() for p in products]))
        grown = additive_closure(R, np.concatenate([members, extra]).tolist())
        if grown == mask:
            return mask
        mask = grown


def subgroup_records(R: FiniteRing, max_order: int = DEFAULT_MAX_ORDER) -> list[SubgroupRecord]:
    """Enumerate, classify and flag maximal proper members for every class."""
    records = [
        SubgroupRecord(m, masks.size(m), classify_subset(R, m)) for m in enumerate_subgroups(R, max_order)
    ]
    full = masks.full(R.n)
    for cls in MemberClass:
        top = set(maximal_members(records, cls, full))
        for rec in records:
            rec.maximal[cls] = rec.mask in top
    return records


def maximal_members(records: list[SubgroupRecord], cls: MemberClass, full: int | None = None) -> list[int]:
    """Proper members of ``cls`` that no other proper member strictly contains."""
    if full is None:
        full = max(rec.mask for rec in records)
    proper = [rec.mask for rec in records if rec.flags[cls] and rec.mask != full]
    return [
        m for m in proper if not any(o != m and m & ~o == 0 for o in proper)
    ]


def proper_members(records: list[SubgroupRecord], cls: MemberClass, full: int) -> list[int]:
    return [rec.mask for rec in records if rec.flags[cls] and rec.mask != full]

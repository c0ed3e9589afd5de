"""Minimal covers of a finite ring by proper subgroups, subrings or ideals."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

from . import masks
from .lattice import MemberClass, SubgroupRecord, maximal_members, subgroup_records
from .ring import DEFAULT_MAX_ORDER, FiniteRing, has_identity

INF = math.inf

# a group is never the union of two proper subgroups
CHAIN_FLOOR = 3


def fmt_ext(value: float) -> int | str:
    """Extended natural for JSON: an int, or the token ``"inf"``."""
    return "inf" if value == INF else int(value)


def parse_ext(value: Any) -> float:
    if value == "inf":
        return INF
    if isinstance(value, int) and not isinstance(value, bool):
        return value
    raise ValueError(f"expected an integer or 'inf', got {value!r}")


@dataclass(frozen=True)
class CoverProblem:
    universe: int
    candidates: tuple[int, ...]


@dataclass(frozen=True)
class CoverResult:
    value: float
    witness: tuple[int, ...] = ()

    @property
    def finite(self) -> bool:
        return self.value != INF


def _greedy(universe: int, candidates: list[int]) -> int:
    left, used = universe, 0
    while left:
        best = max(candidates, key=lambda c: (c & left).bit_count())
        left &= ~best
        used += 1
    return used


def _cover_size(universe: int, candidates: list[int], upper: int, floor: int) -> int:
    """Exact minimum by branch and bound; ``upper`` is a known achievable size."""
    best = upper
    by_elem: dict[int, list[int]] = {}

    def lowest(bits: int) -> int:
        return (bits & -bits).bit_length() - 1

    def options(elem: int) -> list[int]:
        if elem not in by_elem:
            bit = 1 << elem
            by_elem[elem] = [c for c in candidates if c & bit]
        return by_elem[elem]

    def search(left: int, used: int) -> None:
        nonlocal best
        if best <= floor:
            return
        if not left:
            best = min(best, used)
            return
        widest = max((c & left).bit_count() for c in candidates)
        if used + -(-left.bit_count() // widest) >= best:
            return
        # branch on the uncovered element with fewest covering candidates
        opts = options(lowest(left))
        for c in sorted(opts, key=lambda c: -(c & left).bit_count()):
            search(left & ~c, used + 1)

    search(universe, 0)
    return best


def _lex_first(universe: int, candidates: list[int], size: int) -> tuple[int, ...] | None:
    """Lexicographically smallest ascending tuple of ``size`` candidates covering ``universe``."""
    ordered = sorted(candidates)
    picked: list[int] = []

    def search(start: int, left: int) -> bool:
        if not left:
            return True
        if len(picked) == size:
            return False
        remaining = size - len(picked)
        widest = max((c & left).bit_count() for c in ordered[start:]) if start < len(ordered) else 0
        if widest * remaining < left.bit_count():
            return False
        bit = left & -left
        last = max((i for i in range(start, len(ordered)) if ordered[i] & bit), default=-1)
        for i in range(start, last + 1):
            picked.append(ordered[i])
            if search(i + 1, left & ~ordered[i]):
                return True
            picked.pop()
        return False

    return tuple(picked) if search(0, universe) else None


def min_cover(problem: CoverProblem, floor: int = 1) -> CoverResult:
    """Exact minimum set cover of ``problem.universe`` by its candidates.

    ``floor`` is a known lower bound on the answer; search stops as soon as a
    cover of that size is found. The witness is the lexicographically smallest
    ascending tuple of masks among all minimum covers.
    """
    universe = problem.universe
    candidates = sorted(set(problem.candidates))
    union = 0
    for c in candidates:
        union |= c
    if universe & ~union:
        return CoverResult(INF)
    if not universe:
        return CoverResult(0)
    useful = [c for c in candidates if c & universe]
    size = _cover_size(universe, useful, _greedy(universe, useful), floor)
    witness = _lex_first(universe, useful, size)
    assert witness is not None and len(witness) == size
    return CoverResult(size, witness)


def brute_force_cover(universe: int, candidates: list[int], limit: int) -> float:
    """Smallest number of candidates covering ``universe`` by plain enumeration up to ``limit`` members."""
    from itertools import combinations

    for size in range(limit + 1):
        for combo in combinations(candidates, size):
            union = 0
            for c in combo:
                union |= c
            if universe & ~union == 0:
                return size
    return INF


def covering_number(
    R: FiniteRing,
    cls: MemberClass,
    records: list[SubgroupRecord] | None = None,
    max_order: int = DEFAULT_MAX_ORDER,
) -> CoverResult:
    """Minimum number of proper members of ``cls`` whose union is ``R``.

    Only maximal proper members are offered to the set cover: any cover can
    swap each member for a maximal one containing it without growing.
    """
    if records is None:
        records = subgroup_records(R, max_order)
    full = masks.full(R.n)
    candidates = maximal_members(records, cls, full)
    return min_cover(CoverProblem(full & ~1, tuple(candidates)), floor=CHAIN_FLOOR)


_FIELDS = ("sigma_add", "sigma", "eta_left", "eta_right", "eta")
_CLASSES = (
    MemberClass.SUBGROUP,
    MemberClass.SUBRING,
    MemberClass.LEFT_IDEAL,
    MemberClass.RIGHT_IDEAL,
    MemberClass.TWO_SIDED_IDEAL,
)


@dataclass(frozen=True)
class CoveringProfile:
    """``(sigma(R+), sigma(R), eta_left, eta_right, eta)`` with optional witnesses."""

    sigma_add: float
    sigma: float
    eta_left: float
    eta_right: float
    eta: float
    witnesses: dict[str, tuple[int, ...]] = field(default_factory=dict, compare=False, hash=False)

    def as_tuple(self) -> tuple[float, float, float, float, float]:
        return (self.sigma_add, self.sigma, self.eta_left, self.eta_right, self.eta)

    @property
    def coverable(self) -> bool:
        return self.sigma != INF

    def to_dict(self) -> dict[str, int | str]:
        return {name: fmt_ext(v) for name, v in zip(_FIELDS, self.as_tuple())}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> CoveringProfile:
        return cls(*(parse_ext(data[name]) for name in _FIELDS))


def profile(
    R: FiniteRing,
    records: list[SubgroupRecord] | None = None,
    max_order: int = DEFAULT_MAX_ORDER,
) -> CoveringProfile:
    """All five covering numbers from a single subgroup enumeration.

    A cyclic additive group has no cover at all; a ring with identity has no
    proper ideal cover, so those searches are skipped.
    """
    orders = R.element_orders()
    if R.n == 1 or int(orders.max()) == R.n:
        return CoveringProfile(INF, INF, INF, INF, INF)
    if records is None:
        records = subgroup_records(R, max_order)
    unital = has_identity(R) is not None
    values: list[float] = []
    witnesses: dict[str, tuple[int, ...]] = {}
    for name, cls in zip(_FIELDS, _CLASSES):
        if unital and cls in (MemberClass.LEFT_IDEAL, MemberClass.RIGHT_IDEAL, MemberClass.TWO_SIDED_IDEAL):
            values.append(INF)
            continue
        result = covering_number(R, cls, records)
        values.append(result.value)
        if result.finite:
            witnesses[name] = result.witness
    return CoveringProfile(*values, witnesses=witnesses)


def witness_elements(R: FiniteRing, witness: tuple[int, ...]) -> list[list[int]]:
    """Cover members as sorted element-index lists."""
    return [masks.to_indices(m, R.n).tolist() for m in witness]


def chain_holds(p: CoveringProfile) -> bool:
    return (
        p.sigma_add <= p.sigma <= p.eta_left <= p.eta
        and p.sigma <= p.eta_right <= p.eta
    )


__all__ = [
    "INF",
    "CoverProblem",
    "CoverResult",
    "CoveringProfile",
    "brute_force_cover",
    "chain_holds",
    "covering_number",
    "min_cover",
    "profile",
    "witness_elements",
]

"""Exhaustive census of ring structures on small abelian groups.

Every structure-constant assignment on a fixed shape is enumerated by the
active kernel (see :mod:`ringcover.kernels`), deduplicated up to isomorphism
by a canonical form taken over all additive automorphisms, and profiled.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from . import kernels
from .covering import INF, CoveringProfile, fmt_ext, profile
from .errors import SpaceTooLarge, TooLarge
from .ring import FiniteRing, RingPresentation, validate_presentation, zero_ring

# 8**9 raw candidates on C2 x C2 x C2; anything beyond is refused by default
MAX_CANDIDATES = 8**9
MAX_CENSUS_ORDER = 16


def _factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _partitions(n: int, largest: int | None = None) -> Iterator[list[int]]:
    largest = n if largest is None else largest
    if n == 0:
        yield []
        return
    for part in range(min(n, largest), 0, -1):
        for rest in _partitions(n - part, part):
            yield [part] + rest


def shapes_of_order(n: int) -> list[tuple[int, ...]]:
    """Invariant-factor shapes ``d_1 | d_2 | ...`` of every abelian group of order ``n``.

    >>> shapes_of_order(8)
    [(8,), (2, 4), (2, 2, 2)]
    """
    if n == 1:
        return [()]
    per_prime = []
    for p, e in sorted(_factorize(n).items()):
        per_prime.append([[p**a for a in part] for part in _partitions(e)])
    shapes = []
    for combo in itertools.product(*per_prime):
        width = max(len(c) for c in combo)
        factors = [1] * width
        for powers in combo:
            # largest powers go to the largest invariant factors
            for slot, q in enumerate(sorted(powers, reverse=True)):
                factors[width - 1 - slot] *= q
        shapes.append(tuple(factors))
    return sorted(shapes, key=lambda s: (len(s), [-d for d in reversed(s)]))


@dataclass
class ShapeData:
    """Additive group on ``orders`` with the admissible value sets per product position."""

    orders: tuple[int, ...]
    group: FiniteRing
    allowed: list[np.ndarray]

    @classmethod
    def build(cls, orders: Sequence[int]) -> ShapeData:
        orders = tuple(int(m) for m in orders)
        group = zero_ring(orders)
        elem_orders = group.element_orders()
        allowed = []
        for i, j in itertools.product(range(len(orders)), repeat=2):
            g = math.gcd(orders[i], orders[j])
            allowed.append(np.flatnonzero(g % elem_orders == 0))
        return cls(orders, group, allowed)

    @property
    def candidate_count(self) -> int:
        return math.prod(a.size for a in self.allowed)

    def presentation(self, row: Sequence[int]) -> RingPresentation:
        k = len(self.orders)
        products = [[self.group.coords[row[i * k + j]] for j in range(k)] for i in range(k)]
        return RingPresentation.make(self.orders, products)


def candidate_count(orders: Sequence[int]) -> int:
    """Raw size of the structure-constant space after the order constraints."""
    return ShapeData.build(orders).candidate_count


def _check_space(data: ShapeData, max_candidates: int) -> None:
    count = data.candidate_count
    if count > max_candidates:
        raise SpaceTooLarge(
            f"shape {data.orders}: {count} raw candidates exceeds the exhaustive bound {max_candidates}",
            count,
        )


def associative_rows(
    orders: Sequence[int],
    prune: bool = True,
    python: bool = False,
    max_candidates: int = MAX_CANDIDATES,
    first: Sequence[int] | None = None,
) -> np.ndarray:
    """All associative structure tables on ``orders`` as rows of element indices.

    ``first`` restricts the value of ``g_1 g_1`` (used to split work).
    """
    data = ShapeData.build(orders)
    _check_space(data, max_candidates)
    if not data.orders:
        return np.zeros((1, 0), dtype=np.int64)
    allowed = list(data.allowed)
    if first is not None:
        allowed[0] = np.intersect1d(allowed[0], np.asarray(first, dtype=np.int64))
    fn = kernels.python_associative_tables if python else kernels.associative_tables
    return fn(data.group.coords, np.array(data.orders, dtype=np.int64), allowed, prune)


def enumerate_rings(
    orders: Sequence[int],
    prune: bool = True,
    max_candidates: int = MAX_CANDIDATES,
) -> Iterator[RingPresentation]:
    """Every well-defined associative presentation on ``orders`` (no isomorphism dedup)."""
    data = ShapeData.build(orders)
    _check_space(data, max_candidates)
    for row in associative_rows(orders, prune=prune, max_candidates=max_candidates):
        yield data.presentation(row)


# -- canonical forms


def automorphisms(orders: Sequence[int]) -> tuple[np.ndarray, np.ndarray]:
    """All additive automorphisms of the shape group as element permutations.

    Returns ``(forward, inverse)``, each of shape ``(count, n)``, in a fixed
    order (lexicographic in the generator images).
    """
    group = zero_ring(orders)
    if group.k == 0:
        ident = np.zeros((1, 1), dtype=np.int64)
        return ident, ident
    elem_orders = group.element_orders()
    choices = [np.flatnonzero(elem_orders == m).tolist() for m in group.orders]
    forward = []
    for images in itertools.product(*choices):
        perm = group._index(group.coords @ group.coords[list(images)])
        if np.unique(perm).size == group.n:
            forward.append(perm)
    fwd = np.array(forward, dtype=np.int64)
    inv = np.empty_like(fwd)
    rows = np.arange(fwd.shape[0])[:, None]
    inv[rows, fwd] = np.arange(group.n)[None, :]
    return fwd, inv


_AUT_CACHE: dict[tuple[int, ...], tuple[np.ndarray, np.ndarray]] = {}


def _automorphisms_cached(orders: tuple[int, ...]) -> tuple[np.ndarray, np.ndarray]:
    if orders not in _AUT_CACHE:
        _AUT_CACHE[orders] = automorphisms(orders)
    return _AUT_CACHE[orders]


def orbit_rows(R: FiniteRing) -> np.ndarray:
    """Structure rows of every transport of ``R`` along an additive automorphism."""
    fwd, inv = _automorphisms_cached(R.orders)
    gens = np.array(R.generators, dtype=np.int64)
    pre = inv[:, gens]
    table = R.mul_table
    prod = table[pre[:, :, None], pre[:, None, :]]
    rows = np.arange(fwd.shape[0])[:, None, None]
    return fwd[rows, prod].reshape(fwd.shape[0], -1)


def _key(row: np.ndarray) -> bytes:
    return np.asarray(row, dtype="<u2").tobytes()


def _lexmin(rows: np.ndarray) -> np.ndarray:
    return rows[np.lexsort(np.flipud(rows.T))[0]]


def canonical_form(R: FiniteRing) -> bytes:
    """Lexicographically least structure row over all additive automorphisms.

    Two rings on the same shape are isomorphic exactly when their keys agree.
    """
    if R.n > 4096:
        raise TooLarge(f"ring has {R.n} elements")
    if R.k == 0:
        return b""
    return _key(_lexmin(orbit_rows(R)))


def _class_keys(
    orders: tuple[int, ...], prune: bool, first: Sequence[int] | None, max_candidates: int = MAX_CANDIDATES
) -> tuple[list[bytes], int]:
    """Canonical keys of the classes met, plus the number of structures enumerated."""
    data = ShapeData.build(orders)
    rows = associative_rows(orders, prune=prune, first=first, max_candidates=max_candidates)
    seen: set[bytes] = set()
    keys = []
    for row in rows:
        if _key(row) in seen:
            continue
        orbit = orbit_rows(FiniteRing(data.presentation(row)))
        seen.update(_key(r) for r in orbit)
        keys.append(_key(_lexmin(orbit)))
    return keys, len(rows)


def _profile_job(args: tuple[tuple[int, ...], bytes]) -> CoveringProfile:
    orders, key = args
    data = ShapeData.build(orders)
    row = np.frombuffer(key, dtype="<u2").astype(np.int64)
    return profile(validate_presentation(data.presentation(row)))


@dataclass
class CensusClass:
    orders: tuple[int, ...]
    key: bytes
    presentation: RingPresentation
    profile: CoveringProfile


@dataclass
class CensusResult:
    shapes: list[tuple[int, ...]]
    classes: list[CensusClass] = field(default_factory=list)
    structures: dict[tuple[int, ...], int] = field(default_factory=dict)

    @property
    def total(self) -> int:
        return len(self.classes)

    @property
    def histogram(self) -> Counter:
        return Counter(c.profile.as_tuple() for c in self.classes)

    def coverable(self) -> list[CensusClass]:
        return [c for c in self.classes if c.profile.coverable]


def census(
    orders: Sequence[int],
    workers: int = 1,
    prune: bool = True,
    max_candidates: int = MAX_CANDIDATES,
) -> CensusResult:
    """Isomorphism classes of rings with additive group ``orders`` and their profiles.

    With ``workers > 1`` the enumeration is split by the value of ``g_1 g_1``
    and profiling is spread over a process pool; the result does not depend
    on the worker count.
    """
    orders = tuple(int(m) for m in orders)
    data = ShapeData.build(orders)
    _check_space(data, max_candidates)
    if not orders:
        classes = [CensusClass((), b"", zero_ring().presentation, profile(zero_ring()))]
        return CensusResult([()], classes, {(): 1})

    if workers > 1:
        parts = [[int(v)] for v in data.allowed[0]]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(
                pool.map(
                    _class_keys,
                    [orders] * len(parts),
                    [prune] * len(parts),
                    parts,
                    [max_candidates] * len(parts),
                )
            )
            keys = sorted(set().union(*(c[0] for c in chunks)))
            structures = sum(c[1] for c in chunks)
            profiles = list(pool.map(_profile_job, [(orders, k) for k in keys]))
    else:
        found, structures = _class_keys(orders, prune, None, max_candidates)
        keys = sorted(set(found))
        profiles = [_profile_job((orders, k)) for k in keys]

    classes = []
    for key, prof in zip(keys, profiles):
        row = np.frombuffer(key, dtype="<u2").astype(np.int64)
        classes.append(CensusClass(orders, key, data.presentation(row), prof))
    return CensusResult([orders], classes, {orders: structures})


def census_order(n: int, workers: int = 1, prune: bool = True, max_candidates: int = MAX_CANDIDATES) -> CensusResult:
    """Merge the censuses of every shape of order ``n``."""
    if n > MAX_CENSUS_ORDER:
        raise SpaceTooLarge(f"order {n} exceeds the census bound {MAX_CENSUS_ORDER}", n)
    shapes = shapes_of_order(n)
    for s in shapes:
        _check_space(ShapeData.build(s), max_candidates)
    merged = CensusResult(shapes)
    for s in shapes:
        part = census(s, workers=workers, prune=prune, max_candidates=max_candidates)
        merged.classes.extend(part.classes)
        merged.structures.update(part.structures)
    return merged


def estimate(n: int) -> int:
    """Largest raw candidate count over the shapes of order ``n``."""
    return max(candidate_count(s) for s in shapes_of_order(n))


# -- tables


_COLUMNS = ("sigma", "eta_left", "eta_right", "eta")


@dataclass(frozen=True)
class ProfileRow:
    sigma: float
    eta_left: float
    eta_right: float
    eta: float
    count: int

    def values(self) -> tuple[float, float, float, float]:
        return (self.sigma, self.eta_left, self.eta_right, self.eta)

    def to_dict(self) -> dict[str, int | str]:
        out = {name: fmt_ext(v) for name, v in zip(_COLUMNS, self.values())}
        out["count"] = self.count
        return out


def profile_table(result: CensusResult, include_all: bool = False) -> list[ProfileRow]:
    """Classes grouped by ``(sigma, eta_left, eta_right, eta)``; most populous rows first."""
    counts: Counter = Counter()
    for c in result.classes:
        p = c.profile
        if include_all or p.coverable:
            counts[(p.sigma, p.eta_left, p.eta_right, p.eta)] += 1
    rows = [ProfileRow(*values, count=n) for values, n in counts.items()]
    return sorted(rows, key=lambda r: (-r.count, r.values()))


def result_to_dict(result: CensusResult, include_all: bool = False) -> dict:
    return {
        "shapes": [list(s) for s in result.shapes],
        "total_classes": result.total,
        "coverable_classes": len(result.coverable()),
        "structures": {"x".join(map(str, s)) or "1": n for s, n in result.structures.items()},
        "classes": [
            {"orders": list(c.orders), **c.presentation.to_dict(), "profile": c.profile.to_dict()}
            for c in result.classes
        ],
        "histogram": [
            {"profile": CoveringProfile(*values).to_dict(), "count": n}
            for values, n in sorted(result.histogram.items(), key=lambda kv: (-kv[1], kv[0]))
        ],
        "table": [row.to_dict() for row in profile_table(result, include_all)],
    }


def _cell(v: float) -> str:
    return "inf" if v == INF else str(int(v))


def table_csv(rows: list[ProfileRow]) -> str:
    lines = [",".join(_COLUMNS + ("count",))]
    lines += [",".join([_cell(v) for v in r.values()] + [str(r.count)]) for r in rows]
    return "\n".join(lines) + "\n"


def table_markdown(rows: list[ProfileRow]) -> str:
    header = "| sigma | eta_left | eta_right | eta | count |"
    lines = [header, "|---|---|---|---|---|"]
    lines += ["| " + " | ".join([_cell(v) for v in r.values()] + [str(r.count)]) + " |" for r in rows]
    return "\n".join(lines) + "\n"

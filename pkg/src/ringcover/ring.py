"""Finite rings given by structure constants.

A ring is presented by the orders ``m_1, ..., m_k`` of generators of its
additive group together with the ``k*k`` products ``g_i g_j`` written as
coefficient vectors. Elements are addressed by their mixed-radix index
(row-major over coordinates, first coordinate most significant), so index 0
is always the zero element and index order agrees with lexicographic order
of coordinate tuples.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from typing import Any, Callable, Iterable, Sequence

import numpy as np

from . import masks
from .errors import (
    IllDefined,
    MalformedPresentation,
    NonAssociative,
    NotAnIdeal,
    NotPrime,
    TooLarge,
)

DEFAULT_MAX_ORDER = 4096
TABLE_LIMIT = 512

FAMILIES = ("R1", "R2", "R3", "R4")
NAMED = ("X", "Y", "Z", "V", "W", "M2Z2", "M2Z4")


@dataclass(frozen=True)
class RingPresentation:
    """Generator orders plus the products ``g_i g_j`` as coefficient vectors."""

    orders: tuple[int, ...]
    products: tuple[tuple[tuple[int, ...], ...], ...]

    @classmethod
    def make(cls, orders: Sequence[int], products: Sequence[Sequence[Sequence[int]]]) -> RingPresentation:
        return cls(
            tuple(int(m) for m in orders),
            tuple(tuple(tuple(int(c) for c in vec) for vec in row) for row in products),
        )

    @classmethod
    def zero(cls, orders: Sequence[int]) -> RingPresentation:
        k = len(orders)
        return cls.make(orders, [[[0] * k for _ in range(k)] for _ in range(k)])

    @property
    def k(self) -> int:
        return len(self.orders)

    @property
    def order(self) -> int:
        return math.prod(self.orders)

    def constants(self) -> np.ndarray:
        """Structure constants as an int64 array ``c[i, j, t]``."""
        k = self.k
        c = np.zeros((k, k, k), dtype=np.int64)
        for i, row in enumerate(self.products):
            for j, vec in enumerate(row):
                c[i, j, :] = vec
        return c

    def to_dict(self) -> dict[str, Any]:
        return {
            "orders": list(self.orders),
            "products": [[list(vec) for vec in row] for row in self.products],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: Any) -> RingPresentation:
        """Parse the presentation document, naming the offending field on failure."""
        if not isinstance(data, dict):
            raise MalformedPresentation("presentation must be a JSON object with 'orders' and 'products'")
        unknown = set(data) - {"orders", "products"}
        if unknown:
            raise MalformedPresentation(f"unknown field(s): {', '.join(sorted(unknown))}")
        if "orders" not in data:
            raise MalformedPresentation("missing field 'orders'")
        if "products" not in data:
            raise MalformedPresentation("missing field 'products'")
        orders = data["orders"]
        if not isinstance(orders, list) or not all(_is_int(m) for m in orders):
            raise MalformedPresentation("'orders' must be a list of integers")
        k = len(orders)
        products = data["products"]
        if not isinstance(products, list) or len(products) != k:
            raise MalformedPresentation(f"'products' must be a {k}x{k} array of coefficient vectors")
        for i, row in enumerate(products):
            if not isinstance(row, list) or len(row) != k:
                raise MalformedPresentation(f"'products[{i}]' must have {k} entries")
            for j, vec in enumerate(row):
                if not isinstance(vec, list) or len(vec) != k or not all(_is_int(c) for c in vec):
                    raise MalformedPresentation(f"'products[{i}][{j}]' must be a list of {k} integers")
        return cls.make(orders, products)

    @classmethod
    def from_json(cls, text: str) -> RingPresentation:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise MalformedPresentation(f"not valid JSON: {exc}") from exc
        return cls.from_dict(data)


def _is_int(value: Any) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


@dataclass(frozen=True)
class IsoWitness:
    """Element-index bijection ``mapping[x]`` preserving + and *."""

    mapping: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.mapping[x]


class FiniteRing:
    """A validated finite ring with index-based arithmetic.

    Build instances with :func:`validate_presentation` or the builders below;
    the constructor trusts its presentation. ``labels`` optionally names each
    element (matrix rings keep their matrices there).
    """

    def __init__(self, presentation: RingPresentation, labels: Sequence[Any] | None = None):
        self.presentation = presentation
        self.orders = presentation.orders
        self.k = len(self.orders)
        self.n = presentation.order
        self.labels = tuple(labels) if labels is not None else None
        self._orders = np.array(self.orders, dtype=np.int64)
        strides = [1] * self.k
        for i in range(self.k - 2, -1, -1):
            strides[i] = strides[i + 1] * self.orders[i + 1]
        self._strides = np.array(strides, dtype=np.int64)
        self.constants = presentation.constants()
        if self.k:
            grids = np.indices(self.orders).reshape(self.k, -1).T
        else:
            grids = np.zeros((1, 0), dtype=np.int64)
        self.coords = np.ascontiguousarray(grids, dtype=np.int64)
        self._mul_table: np.ndarray | None = None
        self._orders_cache: np.ndarray | None = None

    def __repr__(self) -> str:
        return f"FiniteRing(orders={self.orders}, n={self.n})"

    # -- element addressing

    def element(self, coords: Sequence[int]) -> int:
        if len(coords) != self.k:
            raise ValueError(f"expected {self.k} coordinates, got {len(coords)}")
        return int(sum((int(c) % m) * s for c, m, s in zip(coords, self.orders, self._strides)))

    def coords_of(self, x: int) -> tuple[int, ...]:
        return tuple(int(c) for c in self.coords[x])

    def generator(self, i: int) -> int:
        return int(self._strides[i])

    @property
    def generators(self) -> list[int]:
        return [self.generator(i) for i in range(self.k)]

    def _index(self, coords: np.ndarray) -> np.ndarray:
        return (coords % self._orders) @ self._strides

    # -- arithmetic

    def add_many(self, xs, ys) -> np.ndarray:
        xs, ys = np.broadcast_arrays(np.asarray(xs, dtype=np.int64), np.asarray(ys, dtype=np.int64))
        return self._index(self.coords[xs] + self.coords[ys])

    def neg_many(self, xs) -> np.ndarray:
        return self._index(-self.coords[np.asarray(xs, dtype=np.int64)])

    def scale_many(self, c: int, xs) -> np.ndarray:
        return self._index(c * self.coords[np.asarray(xs, dtype=np.int64)])

    def mul_many(self, xs, ys) -> np.ndarray:
        xs, ys = np.broadcast_arrays(np.asarray(xs, dtype=np.int64), np.asarray(ys, dtype=np.int64))
        if self._mul_table is not None or self.n <= TABLE_LIMIT:
            return self.mul_table[xs, ys]
        return self._bilinear(xs, ys)

    def _bilinear(self, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
        if self.k == 0:
            return np.zeros(xs.shape, dtype=np.int64)
        cx = self.coords[xs.ravel()]
        cy = self.coords[ys.ravel()]
        out = np.einsum("bi,bj,ijt->bt", cx, cy, self.constants, optimize=True)
        return self._index(out).reshape(xs.shape)

    def add(self, x: int, y: int) -> int:
        return int(self._index(self.coords[x] + self.coords[y]))

    def neg(self, x: int) -> int:
        return int(self._index(-self.coords[x]))

    def mul(self, x: int, y: int) -> int:
        if self._mul_table is not None:
            return int(self._mul_table[x, y])
        return int(self.mul_many(x, y))

    @property
    def mul_table(self) -> np.ndarray:
        """Full ``n*n`` multiplication table (computed once on first access)."""
        if self._mul_table is None:
            xs, ys = np.divmod(np.arange(self.n * self.n, dtype=np.int64), self.n)
            table = self._bilinear(xs, ys).reshape(self.n, self.n)
            table.setflags(write=False)
            self._mul_table = table
        return self._mul_table

    @property
    def add_table(self) -> np.ndarray:
        xs, ys = np.divmod(np.arange(self.n * self.n, dtype=np.int64), self.n)
        return self.add_many(xs, ys).reshape(self.n, self.n)

    def element_orders(self) -> np.ndarray:
        """Additive order of every element."""
        if self._orders_cache is None:
            if self.k == 0:
                out = np.ones(1, dtype=np.int64)
            else:
                # order of a coordinate c in Z_m is m / gcd(c, m); element order is the lcm
                per = self._orders // np.gcd(self.coords, self._orders)
                out = np.lcm.reduce(per, axis=1)
            out.setflags(write=False)
            self._orders_cache = out
        return self._orders_cache

    def is_zero_ring(self) -> bool:
        return not self.constants.any()


# -- validation


def validate_presentation(pres: RingPresentation, max_order: int = DEFAULT_MAX_ORDER) -> FiniteRing:
    """Check a presentation and return the ring it defines.

    Raises :class:`MalformedPresentation`, :class:`TooLarge`,
    :class:`IllDefined` or :class:`NonAssociative` naming the failing indices.
    """
    k = pres.k
    for i, m in enumerate(pres.orders):
        if m < 2:
            raise MalformedPresentation(f"orders[{i}] = {m}: every generator order must be >= 2")
    n = pres.order
    if n > max_order:
        raise TooLarge(f"ring has {n} elements, limit is {max_order}")
    if len(pres.products) != k or any(len(row) != k for row in pres.products):
        raise MalformedPresentation(f"products must be a {k}x{k} array")
    for i, row in enumerate(pres.products):
        for j, vec in enumerate(row):
            if len(vec) != k:
                raise MalformedPresentation(f"products[{i}][{j}] must have {k} coefficients")
            for t, c in enumerate(vec):
                if not 0 <= c < pres.orders[t]:
                    raise MalformedPresentation(
                        f"products[{i}][{j}][{t}] = {c} is not a residue mod {pres.orders[t]}"
                    )
    orders = pres.orders
    for i, j, t in itertools.product(range(k), repeat=3):
        c = pres.products[i][j][t]
        for side in (i, j):
            if (orders[side] * c) % orders[t]:
                raise IllDefined(
                    i, j, t,
                    f"ill-defined product g{i + 1}*g{j + 1}: {orders[side]} * c[{i}][{j}][{t}] = "
                    f"{orders[side] * c} is not 0 mod {orders[t]} (order of g{side + 1} must kill the product)",
                )
    bad = associativity_failure(pres)
    if bad is not None:
        i, j, t = bad
        raise NonAssociative(
            i, j, t,
            f"non-associative on generators (g{i + 1}*g{j + 1})*g{t + 1} != g{i + 1}*(g{j + 1}*g{t + 1})",
        )
    return FiniteRing(pres)


def associativity_failure(pres: RingPresentation) -> tuple[int, int, int] | None:
    """First generator triple (lexicographic) on which associativity fails, if any."""
    c = pres.constants()
    m = np.array(pres.orders, dtype=np.int64)
    k = pres.k
    for i, j, t in itertools.product(range(k), repeat=3):
        left = (c[i, j, :] @ c[:, t, :]) % m
        right = (c[j, t, :] @ c[i, :, :]) % m
        if not np.array_equal(left, right):
            return i, j, t
    return None


# -- builders


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, math.isqrt(p) + 1))


def build_family(name: str, p: int, max_order: int = DEFAULT_MAX_ORDER) -> FiniteRing:
    """One of the four families ``R1``..``R4`` over the prime ``p``."""
    if not is_prime(p):
        raise NotPrime(f"p = {p} is not prime")
    a2, b2 = (1, 0), (0, 1)
    z2 = (0, 0)
    if name == "R1":
        products = [[z2, z2], [z2, z2]]
    elif name == "R2":
        # a^2 = a, b^2 = b, ab = b, ba = a
        products = [[a2, b2], [a2, b2]]
    elif name == "R3":
        # a^2 = a, b^2 = b, ab = a, ba = b
        products = [[a2, a2], [b2, b2]]
    elif name == "R4":
        a, b, c, z = (1, 0, 0), (0, 1, 0), (0, 0, 1), (0, 0, 0)
        # a^2 = a, ba = b, ac = c; every other generator product is zero
        products = [[a, z, c], [b, z, z], [z, z, z]]
    else:
        raise ValueError(f"unknown family {name!r}; expected one of {', '.join(FAMILIES)}")
    k = len(products)
    if p**k > max_order:
        raise TooLarge(f"{name} over p={p} has {p**k} elements, limit is {max_order}")
    return validate_presentation(RingPresentation.make([p] * k, products), max_order)


def zero_ring(orders: Sequence[int] = ()) -> FiniteRing:
    """Ring with all products zero; ``zero_ring()`` is the ring of order 1."""
    return validate_presentation(RingPresentation.zero(orders))


Matrix = tuple[tuple[int, ...], ...]


def _matmul(a: Matrix, b: Matrix, mod: int) -> Matrix:
    size = len(a)
    return tuple(
        tuple(sum(a[r][s] * b[s][c] for s in range(size)) % mod for c in range(size)) for r in range(size)
    )


def _matadd(a: Matrix, b: Matrix, mod: int) -> Matrix:
    return tuple(tuple((x + y) % mod for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def _mat(rows: Iterable[Iterable[int]]) -> Matrix:
    return tuple(tuple(r) for r in rows)


def matrix_ring(matrices: Iterable[Matrix], mod: int) -> FiniteRing:
    """Subring of square matrices mod ``mod`` generated by ``matrices``.

    The closure is sorted lexicographically by entries before presenting, so
    the result does not depend on the order of the input.
    """
    gens = [_mat(m) for m in matrices]
    size = len(gens[0])
    zero = tuple((0,) * size for _ in range(size))
    elems = {zero, *gens}
    frontier = list(elems)
    while frontier:
        fresh = []
        current = list(elems)
        for a in frontier:
            for b in current:
                for c in (_matadd(a, b, mod), _matmul(a, b, mod), _matmul(b, a, mod)):
                    if c not in elems:
                        elems.add(c)
                        fresh.append(c)
        frontier = fresh
    ordered = sorted(elems)
    index = {m: i for i, m in enumerate(ordered)}
    n = len(ordered)
    add_t = np.empty((n, n), dtype=np.int64)
    mul_t = np.empty((n, n), dtype=np.int64)
    for i, a in enumerate(ordered):
        for j, b in enumerate(ordered):
            add_t[i, j] = index[_matadd(a, b, mod)]
            mul_t[i, j] = index[_matmul(a, b, mod)]
    kernel = np.zeros(n, dtype=bool)
    kernel[0] = True
    pres, proj = _present(n, lambda x, y: add_t[x, y], lambda x, y: mul_t[x, y], kernel)
    labels: list[Any] = [None] * n
    for old, new in enumerate(proj):
        labels[new] = ordered[old]
    return FiniteRing(validate_presentation(pres).presentation, labels=labels)


def build_named(name: str) -> FiniteRing:
    """Matrix rings ``X, Y, Z, V, W`` and the full rings ``M2Z2``, ``M2Z4``."""
    if name == "X":
        return matrix_ring([((2, 0), (0, 0)), ((0, 0), (0, 2))], 4)
    if name == "Y":
        return matrix_ring([((1, 0), (0, 0)), ((0, 1), (0, 0))], 2)
    if name == "Z":
        return matrix_ring([((0, 1), (0, 0)), ((0, 0), (0, 1))], 2)
    if name == "V":
        return matrix_ring([((1, 0), (0, 0)), ((0, 0), (0, 1))], 2)
    if name == "W":
        mats = [
            ((a, 0, 0), (b, a, 0), (c, 0, a))
            for a, b, c in itertools.product(range(2), repeat=3)
        ]
        return matrix_ring(mats, 2)
    if name in ("M2Z2", "M2Z4"):
        mod = 2 if name == "M2Z2" else 4
        units = [((1, 0), (0, 0)), ((0, 1), (0, 0)), ((0, 0), (1, 0)), ((0, 0), (0, 1))]
        return matrix_ring(units, mod)
    raise ValueError(f"unknown named ring {name!r}; expected one of {', '.join(NAMED)}")


# -- transformations


def opposite(R: FiniteRing) -> FiniteRing:
    """Same additive group, multiplication ``x*y -> y*x``."""
    pres = R.presentation
    k = pres.k
    products = [[pres.products[j][i] for j in range(k)] for i in range(k)]
    return FiniteRing(RingPresentation.make(pres.orders, products), labels=R.labels)


def direct_product(R: FiniteRing, S: FiniteRing, max_order: int = DEFAULT_MAX_ORDER) -> FiniteRing:
    """``R x S`` on the concatenated shape with componentwise operations."""
    if R.n * S.n > max_order:
        raise TooLarge(f"product has {R.n * S.n} elements, limit is {max_order}")
    kr, ks = R.k, S.k
    k = kr + ks
    products = [[[0] * k for _ in range(k)] for _ in range(k)]
    for i, j in itertools.product(range(kr), repeat=2):
        products[i][j][:kr] = R.presentation.products[i][j]
    for i, j in itertools.product(range(ks), repeat=2):
        products[kr + i][kr + j][kr:] = S.presentation.products[i][j]
    return FiniteRing(RingPresentation.make(R.orders + S.orders, products))


def _is_two_sided_ideal(R: FiniteRing, members: np.ndarray, flags: np.ndarray) -> bool:
    if not flags[0]:
        return False
    if not flags[R.add_many(members[:, None], members[None, :]).ravel()].all():
        return False
    everything = np.arange(R.n)
    left = R.mul_many(everything[:, None], members[None, :])
    right = R.mul_many(members[:, None], everything[None, :])
    return bool(flags[left].all() and flags[right].all())


def factor_ring(R: FiniteRing, ideal: int) -> tuple[FiniteRing, np.ndarray]:
    """Quotient ``R/I`` and the projection from element indices of ``R``.

    ``ideal`` is a subset mask that must be a two-sided ideal. The quotient is
    presented on a cyclic decomposition of ``R+/I+`` found greedily.
    """
    flags = masks.to_bool(ideal, R.n)
    members = np.flatnonzero(flags)
    if not _is_two_sided_ideal(R, members, flags):
        raise NotAnIdeal("subset is not a two-sided ideal")
    pres, proj = _present(R.n, R.add_many, R.mul_many, flags)
    return FiniteRing(pres), proj


def _multiple(add: Callable, xs: np.ndarray, c: int) -> np.ndarray:
    out = np.zeros_like(xs)
    for _ in range(c):
        out = add(out, xs)
    return out


def _present(
    n: int,
    add: Callable[[np.ndarray, np.ndarray], np.ndarray],
    mul: Callable[[np.ndarray, np.ndarray], np.ndarray],
    kernel: np.ndarray,
) -> tuple[RingPresentation, np.ndarray]:
    """Present the ring on elements ``0..n-1`` modulo the ideal ``kernel``.

    Element 0 must be the zero. Generators are chosen greedily: take an
    element of largest order modulo the span so far (smallest index on ties),
    then replace it by the smallest-index lift in its coset whose order
    modulo ``kernel`` is the same, so it splits off as a direct summand.
    """
    everything = np.arange(n, dtype=np.int64)
    span = kernel.copy()
    gens: list[int] = []
    orders: list[int] = []
    while not span.all():
        rel = np.zeros(n, dtype=np.int64)
        cur = np.zeros(n, dtype=np.int64)
        step = 0
        while (rel == 0).any():
            cur = add(cur, everything)
            step += 1
            rel[(rel == 0) & span[cur]] = step
        top = int(rel.max())
        x = int(np.argmax(rel == top))
        span_elems = np.flatnonzero(span)
        coset = add(np.full(span_elems.shape, x), span_elems)
        lifts = coset[kernel[_multiple(add, coset, top)]]
        y = int(lifts.min())
        gens.append(y)
        orders.append(top)
        mults = _multiple_table(add, y, top)
        span[add(np.repeat(span_elems, top), np.tile(mults, span_elems.size))] = True

    reps = np.zeros(1, dtype=np.int64)
    for y, m in zip(gens, orders):
        mults = _multiple_table(add, y, m)
        reps = add(np.repeat(reps, m), np.tile(mults, reps.size))
    kern = np.flatnonzero(kernel)
    q = reps.size
    proj = np.full(n, -1, dtype=np.int64)
    proj[add(np.repeat(reps, kern.size), np.tile(kern, q))] = np.repeat(np.arange(q), kern.size)
    assert (proj >= 0).all()

    k = len(gens)
    products = []
    for i in range(k):
        row = []
        for j in range(k):
            image = int(proj[int(mul(np.array(gens[i]), np.array(gens[j])))])
            row.append(np.unravel_index(image, orders) if k else ())
        products.append(row)
    return RingPresentation.make(orders, products), proj


def _multiple_table(add: Callable, y: int, m: int) -> np.ndarray:
    """``[0, y, 2y, ..., (m-1)y]``."""
    out = np.zeros(m, dtype=np.int64)
    for c in range(1, m):
        out[c] = add(out[c - 1 : c], np.array([y]))[0]
    return out


# -- identity and isomorphism


def has_identity(R: FiniteRing) -> int | None:
    """Index of the two-sided multiplicative identity, or ``None``."""
    everything = np.arange(R.n)
    table = R.mul_table if R.n <= TABLE_LIMIT else None
    for e in range(R.n):
        if table is not None:
            row, col = table[e], table[:, e]
        else:
            row = R.mul_many(e, everything)
            col = R.mul_many(everything, e)
        if np.array_equal(row, everything) and np.array_equal(col, everything):
            return e
    return None


def _invariant(R: FiniteRing) -> list[tuple[int, int, bool]]:
    everything = np.arange(R.n)
    squares = R.mul_many(everything, everything)
    orders = R.element_orders()
    return sorted(zip(orders.tolist(), orders[squares].tolist(), (squares == everything).tolist()))


def linear_map(R: FiniteRing, S: FiniteRing, images: Sequence[int]) -> np.ndarray:
    """Additive map ``R -> S`` sending generator ``g_i`` of ``R`` to ``images[i]``."""
    if R.k == 0:
        return np.zeros(R.n, dtype=np.int64)
    img = S.coords[np.asarray(images, dtype=np.int64)]
    return S._index(R.coords @ img)


def is_homomorphism(R: FiniteRing, S: FiniteRing, mapping: np.ndarray) -> bool:
    """Check ``mapping`` against the full addition and multiplication tables."""
    mapping = np.asarray(mapping, dtype=np.int64)
    xs, ys = np.divmod(np.arange(R.n * R.n, dtype=np.int64), R.n)
    if not np.array_equal(mapping[R.add_many(xs, ys)], S.add_many(mapping[xs], mapping[ys])):
        return False
    return np.array_equal(mapping[R.mul_many(xs, ys)], S.mul_many(mapping[xs], mapping[ys]))


def is_isomorphic(R: FiniteRing, S: FiniteRing) -> IsoWitness | None:
    """Find a ring isomorphism ``R -> S`` by backtracking over generator images.

    Generator ``g_i`` may only go to elements of ``S`` of additive order
    ``m_i``; products among already-placed generators are checked as soon as
    their images are determined.
    """
    if R.n != S.n or _invariant(R) != _invariant(S):
        return None
    if R.k == 0:
        return IsoWitness((0,))
    s_orders = S.element_orders()
    candidates = [np.flatnonzero(s_orders == m).tolist() for m in R.orders]
    consts = R.constants
    k = R.k
    img: list[int] = []

    def image_of(coeffs: np.ndarray) -> int | None:
        # image of sum coeffs[s] g_s when all generators in the support are placed
        support = np.flatnonzero(coeffs)
        if support.size and support.max() >= len(img):
            return None
        acc = np.zeros(S.k, dtype=np.int64)
        for s in support:
            acc += coeffs[s] * S.coords[img[s]]
        return int(S._index(acc))

    def consistent(r: int) -> bool:
        for a in range(r + 1):
            for b in range(r + 1):
                if a < r and b < r and not consts[a, b, r]:
                    continue  # already settled at an earlier depth
                target = image_of(consts[a, b])
                if target is not None and target != S.mul(img[a], img[b]):
                    return False
        return True

    def spans_freely(r: int) -> bool:
        partial = linear_map_prefix(r + 1)
        return np.unique(partial).size == partial.size

    def linear_map_prefix(r: int) -> np.ndarray:
        sub = np.indices(R.orders[:r]).reshape(r, -1).T
        return S._index(sub @ S.coords[np.asarray(img[:r])])

    def search(r: int) -> IsoWitness | None:
        if r == k:
            mapping = linear_map(R, S, img)
            if np.unique(mapping).size == R.n and is_homomorphism(R, S, mapping):
                return IsoWitness(tuple(int(v) for v in mapping))
            return None
        for y in candidates[r]:
            img.append(y)
            if spans_freely(r) and consistent(r):
                found = search(r + 1)
                if found is not None:
                    return found
            img.pop()
        return None

    return search(0)

import functools
import itertools

import numpy as np
import pytest

from ringcover.census import census_order
from ringcover.ring import FiniteRing, build_family, validate_presentation


@functools.lru_cache(maxsize=None)
def census_rings(order: int) -> tuple[FiniteRing, ...]:
    result = census_order(order)
    return tuple(validate_presentation(c.presentation) for c in result.classes)


@functools.lru_cache(maxsize=None)
def small_rings() -> tuple[FiniteRing, ...]:
    """One representative of every ring of order 2..9."""
    return tuple(R for n in range(2, 10) for R in census_rings(n))


@pytest.fixture(scope="session")
def all_small_rings():
    return small_rings()


@pytest.fixture(params=[(name, p) for p in (2, 3) for name in ("R1", "R2", "R3", "R4")], ids=lambda x: f"{x[0]}p{x[1]}")
def family_ring(request):
    name, p = request.param
    return build_family(name, p)


def tuple_mul(R: FiniteRing, x, y):
    """Independent bilinear product on coordinate tuples."""
    k = R.k
    out = [0] * k
    for i, j in itertools.product(range(k), repeat=2):
        if x[i] and y[j]:
            for t in range(k):
                out[t] += x[i] * y[j] * R.presentation.products[i][j][t]
    return tuple(o % m for o, m in zip(out, R.orders))


def subgroup_by_brute_force(R: FiniteRing) -> set[int]:
    """All subsets closed under +, by scanning every subset (tiny rings only)."""
    n = R.n
    add = R.add_table
    found = set()
    for bits in range(1 << n):
        if not bits & 1:
            continue
        members = [x for x in range(n) if bits >> x & 1]
        if all(bits >> int(add[x, y]) & 1 for x in members for y in members):
            found.add(bits)
    return found


def as_array(values):
    return np.asarray(list(values), dtype=np.int64)


ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for number in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[number])

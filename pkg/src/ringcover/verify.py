"""Reproduction checks behind ``ringcover verify``.

Each suite yields :class:`Check` records; a suite passes when every record does.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator

from . import masks
from .census import census_order, profile_table
from .covering import INF, profile
from .lattice import MemberClass, generated_member
from .ring import (
    build_family,
    build_named,
    direct_product,
    factor_ring,
    has_identity,
    is_isomorphic,
)

THEOREM_PRIMES = (2, 3, 5)
SUITES = ("theorem", "corollary", "tables", "remark")


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name}" + (f": {self.detail}" if self.detail and not self.passed else "")


def _fmt(values) -> str:
    return "(" + ", ".join("inf" if v == INF else str(int(v)) for v in values) + ")"


def _expect(name: str, got, want) -> Check:
    return Check(name, tuple(got) == tuple(want), f"got {_fmt(got)}, expected {_fmt(want)}")


def family_expectation(name: str, p: int) -> tuple:
    q = p + 1
    return {
        "R1": (q, q, q, q, q),
        "R2": (q, q, q, INF, INF),
        "R3": (q, q, INF, q, INF),
        "R4": (q, q, q, q, INF),
    }[name]


def theorem_checks(primes=THEOREM_PRIMES) -> Iterator[Check]:
    for p in primes:
        for name in ("R1", "R2", "R3", "R4"):
            got = profile(build_family(name, p)).as_tuple()
            yield _expect(f"theorem {name} p={p} profile", got, family_expectation(name, p))
        R4 = build_family("R4", p)
        a, b, c = R4.generators
        for gen, label, target in ((b, "b", "R2"), (c, "c", "R3")):
            ideal = generated_member(R4, [gen], MemberClass.TWO_SIDED_IDEAL)
            Q, _ = factor_ring(R4, ideal)
            ok = is_isomorphic(Q, build_family(target, p)) is not None
            yield Check(f"theorem R4/<{label}> ~ {target} p={p}", ok, "quotient not isomorphic")
        whole = generated_member(R4, [a], MemberClass.TWO_SIDED_IDEAL)
        yield Check(f"theorem ideal(a) = R4 p={p}", whole == masks.full(R4.n), "ideal generated by a is proper")


def corollary_checks() -> Iterator[Check]:
    expected = {
        "X": (3, 3, 3, 3, 3),
        "Y": (3, 3, 3, INF, INF),
        "Z": (3, 3, INF, 3, INF),
    }
    for name, want in expected.items():
        yield _expect(f"corollary {name} profile", profile(build_named(name)).as_tuple(), want)
    for name in ("V", "W"):
        R = build_named(name)
        e = has_identity(R)
        yield Check(f"corollary {name} has identity", e is not None, "no identity found")
        got = profile(R).as_tuple()[2:]
        yield _expect(f"corollary {name} not ideal coverable", got, (INF, INF, INF))
    for named, family in (("X", "R1"), ("Y", "R2"), ("Z", "R3")):
        ok = is_isomorphic(build_named(named), build_family(family, 2)) is not None
        yield Check(f"corollary {named} ~ {family}(2)", ok, "no isomorphism found")


TABLE_ROWS = {
    4: {(3, 3, 3, 3): 1, (3, 3, INF, INF): 1, (3, INF, 3, INF): 1, (3, INF, INF, INF): 1},
    9: {(4, 4, 4, 4): 1, (4, 4, INF, INF): 1, (4, INF, 4, INF): 1},
    8: {
        (3, 3, 3, 3): 17,
        (3, INF, INF, INF): 6,
        (3, 3, INF, INF): 5,
        (3, INF, 3, INF): 5,
        (3, 3, 3, INF): 1,
    },
}


def table_checks(orders=(4, 9, 8), workers: int = 1) -> Iterator[Check]:
    for n in orders:
        if n not in TABLE_ROWS:
            yield Check(f"tables order {n}", False, "no reference table for this order")
            continue
        result = census_order(n, workers=workers)
        got = {row.values(): row.count for row in profile_table(result)}
        want = TABLE_ROWS[n]
        yield Check(f"tables order {n} coverable profiles", got == want, f"got {got}")


def remark_checks() -> Iterator[Check]:
    for left in ("R1", "R2", "R3"):
        for right in ("R1", "R2", "R3"):
            A, B = build_family(left, 2), build_family(right, 3)
            got = profile(direct_product(A, B)).as_tuple()
            want = tuple(min(x, y) for x, y in zip(profile(A).as_tuple(), profile(B).as_tuple()))
            yield _expect(f"remark {left}(2) x {right}(3) = min", got, want)


def run_suite(suite: str, orders=None, workers: int = 1) -> list[Check]:
    runners: dict[str, Callable[[], Iterator[Check]]] = {
        "theorem": theorem_checks,
        "corollary": corollary_checks,
        "tables": lambda: table_checks(orders or (4, 9, 8), workers),
        "remark": remark_checks,
    }
    if suite == "all":
        return [check for name in SUITES for check in runners[name]()]
    if suite not in runners:
        raise ValueError(f"unknown suite {suite!r}")
    return list(runners[suite]())

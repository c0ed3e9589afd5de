import itertools

import numpy as np
import pytest

from ringcover.census import (
    CensusResult,
    ShapeData,
    associative_rows,
    automorphisms,
    candidate_count,
    canonical_form,
    census,
    census_order,
    enumerate_rings,
    profile_table,
    shapes_of_order,
    table_csv,
    table_markdown,
)
from ringcover.covering import INF, profile
from ringcover.errors import SpaceTooLarge
from ringcover.ring import build_family, is_homomorphism, is_isomorphic, validate_presentation, zero_ring

from conftest import census_rings


def _tables_by_brute_force(orders):
    """Every associative table on C_m1 x ... found by looping over raw products."""
    k = len(orders)
    elems = list(itertools.product(*(range(m) for m in orders)))
    found = []
    for vals in itertools.product(elems, repeat=k * k):
        g = [[vals[i * k + j] for j in range(k)] for i in range(k)]
        ok = all(
            (m * g[i][j][t]) % orders[t] == 0
            for i, j, t in itertools.product(range(k), repeat=3)
            for m in (orders[i], orders[j])
        )
        if not ok:
            continue

        def mul(x, y):
            out = [0] * k
            for i in range(k):
                for j in range(k):
                    for t in range(k):
                        out[t] += x[i] * y[j] * g[i][j][t]
            return tuple(o % m for o, m in zip(out, orders))

        if all(mul(mul(x, y), z) == mul(x, mul(y, z)) for x in elems for y in elems for z in elems):
            found.append(tuple(vals))
    return found


def test_shapes_of_order():
    assert shapes_of_order(8) == [(8,), (2, 4), (2, 2, 2)]
    assert shapes_of_order(9) == [(9,), (3, 3)]
    assert shapes_of_order(12) == [(12,), (2, 6)]


@pytest.mark.parametrize("orders, expected", [((2, 2), 28), ((4,), 4), ((3,), 3)])
def test_structure_counts_match_brute_force(orders, expected):
    brute = _tables_by_brute_force(orders)
    assert len(brute) == expected
    data = ShapeData.build(orders)
    ours = {tuple(tuple(int(c) for c in data.group.coords[v]) for v in row) for row in associative_rows(orders)}
    assert ours == set(brute)


def test_family_presentations_are_enumerated():
    data = ShapeData.build((2, 2))
    rows = {tuple(r) for r in associative_rows((2, 2)).tolist()}
    for name in ("R1", "R2", "R3"):
        pres = build_family(name, 2).presentation
        row = tuple(data.group.element(pres.products[i][j]) for i in range(2) for j in range(2))
        assert row in rows


@pytest.mark.parametrize(
    "orders, raw, associative",
    [((8,), 8, 8), ((2, 4), 512, 60), ((9,), 9, 9), ((3, 3), 9**4, 121), ((2, 2, 2), 8**8 * 8, 1688)],
)
def test_structure_counts(orders, raw, associative):
    assert candidate_count(orders) == raw
    assert len(associative_rows(orders)) == associative


def test_pruned_and_full_enumeration_agree():
    for orders in [(2, 2), (2, 4), (3, 3), (8,)]:
        assert np.array_equal(associative_rows(orders, prune=True), associative_rows(orders, prune=False))


def test_space_too_large():
    with pytest.raises(SpaceTooLarge) as err:
        associative_rows((2, 2, 2), max_candidates=1000)
    assert err.value.candidates == 8**9
    with pytest.raises(SpaceTooLarge):
        census_order(32)


@pytest.mark.parametrize("orders, count", [((2, 2), 6), ((3, 3), 48), ((2, 4), 8), ((2, 2, 2), 168), ((8,), 4)])
def test_automorphism_group_orders(orders, count):
    fwd, inv = automorphisms(orders)
    assert fwd.shape[0] == count
    ident = np.arange(fwd.shape[1])
    assert all(np.array_equal(f[i], ident) for f, i in zip(fwd, inv))


def test_canonical_form_examples():
    R2, R3 = build_family("R2", 2), build_family("R3", 2)
    assert canonical_form(R2) != canonical_form(R3)
    assert canonical_form(R2) == canonical_form(R2)
    assert canonical_form(zero_ring((2, 2))) == bytes(8)


def test_canonical_form_agrees_with_isomorphism_test():
    rng = np.random.default_rng(7)
    for orders in [(2, 2, 2), (3, 3), (2, 4)]:
        rings = [validate_presentation(p) for p in enumerate_rings(orders)]
        for _ in range(70):
            i, j = rng.integers(0, len(rings), size=2)
            R, S = rings[i], rings[j]
            same = canonical_form(R) == canonical_form(S)
            assert same == (is_isomorphic(R, S) is not None)


@pytest.mark.parametrize("n, total", [(4, 11), (9, 11), (8, 52)])
def test_census_totals(n, total):
    assert census_order(n).total == total


@pytest.mark.parametrize("orders", [(2, 2), (3, 3), (2, 4), (2, 2, 2)])
def test_orbit_stabilizer(orders):
    """Summing |Aut(group)| / |Aut(ring)| over the classes recovers every structure."""
    result = census(orders)
    fwd, _ = automorphisms(orders)
    total = 0
    for c in result.classes:
        R = validate_presentation(c.presentation)
        stab = sum(is_homomorphism(R, R, f) for f in fwd)
        assert fwd.shape[0] % stab == 0
        total += fwd.shape[0] // stab
    assert total == result.structures[orders]


@pytest.mark.parametrize("n", [4, 8, 9])
def test_representatives_pairwise_non_isomorphic(n):
    rings = census_rings(n)
    for R, S in itertools.combinations(rings, 2):
        if R.orders == S.orders:
            assert is_isomorphic(R, S) is None


@pytest.mark.parametrize("p", [2, 3])
def test_prime_square_classes_have_p_plus_one_subgroup_cover(p):
    for R in census_rings(p * p):
        expected = INF if R.orders == (p * p,) else p + 1
        assert profile(R).sigma_add == expected


def test_worker_count_does_not_change_result():
    a = census((2, 4), workers=1)
    b = census((2, 4), workers=2)
    assert [c.key for c in a.classes] == [c.key for c in b.classes]
    assert [c.profile for c in a.classes] == [c.profile for c in b.classes]
    assert a.structures == b.structures


def test_class_keys_do_not_depend_on_enumeration_order():
    rows = associative_rows((3, 3))
    data = ShapeData.build((3, 3))
    forward = {canonical_form(validate_presentation(data.presentation(r))) for r in rows}
    backward = {canonical_form(validate_presentation(data.presentation(r))) for r in rows[::-1]}
    assert forward == backward == {c.key for c in census((3, 3)).classes}


def test_profile_table_order_four():
    rows = profile_table(census_order(4))
    assert [(r.values(), r.count) for r in rows] == [
        ((3, 3, 3, 3), 1),
        ((3, 3, INF, INF), 1),
        ((3, INF, 3, INF), 1),
        ((3, INF, INF, INF), 1),
    ]


def test_empty_and_trivial_tables():
    empty = CensusResult([(4,)])
    assert profile_table(empty) == []
    assert table_csv([]) == "sigma,eta_left,eta_right,eta,count\n"
    assert table_markdown([]).count("\n") == 2
    trivial = census(())
    assert trivial.total == 1 and profile_table(trivial) == []

import numpy as np
import pytest

from ringcover import masks
from ringcover.errors import NotASubgroup, TooLarge
from ringcover.lattice import (
    MemberClass,
    additive_closure,
    classify_subset,
    enumerate_subgroups,
    generated_member,
    maximal_members,
    subgroup_records,
)
from ringcover.ring import build_family, opposite, validate_presentation, zero_ring, RingPresentation

from conftest import small_rings, subgroup_by_brute_force


def test_additive_closure_examples():
    R1 = build_family("R1", 2)
    a, b = R1.generators
    assert additive_closure(R1, [a]) == masks.from_indices([0, a])
    assert additive_closure(R1, []) == 1
    R = build_family("R1", 3)
    ab = R.element((1, 1))
    assert masks.to_indices(additive_closure(R, [ab]), R.n).tolist() == sorted([0, ab, R.element((2, 2))])


@pytest.mark.parametrize(
    "orders, expected",
    [((3, 3), 6), ((4,), 3), ((2, 2, 2), 16), ((2, 2), 5), ((5, 5), 8), ((5, 5, 5), 2 + 2 * 31)],
)
def test_subgroup_counts(orders, expected):
    assert len(enumerate_subgroups(zero_ring(orders))) == expected


@pytest.mark.parametrize("orders", [(2, 2, 2), (2, 4), (3, 3), (8,), (2, 2)])
def test_subgroups_match_brute_force(orders):
    R = zero_ring(orders)
    assert set(enumerate_subgroups(R)) == subgroup_by_brute_force(R)


def test_cyclic_z4_subgroups():
    R = zero_ring((4,))
    assert enumerate_subgroups(R) == [1, masks.from_indices([0, 2]), masks.full(4)]


def test_enumeration_order_and_lagrange():
    R = build_family("R4", 3)
    subs = enumerate_subgroups(R)
    keys = [(masks.size(m), m) for m in subs]
    assert keys == sorted(keys)
    assert all(R.n % masks.size(m) == 0 for m in subs)
    assert all(m & 1 for m in subs)


def test_enumerate_refuses_oversize():
    with pytest.raises(TooLarge):
        enumerate_subgroups(build_family("R1", 3), max_order=8)


def test_classify_left_ideal_in_r2():
    R = build_family("R2", 2)
    a, _ = R.generators
    flags = classify_subset(R, additive_closure(R, [a]))
    assert flags.left_ideal and not flags.right_ideal and flags.subring


@pytest.mark.parametrize("p", [2, 3])
def test_zero_ring_subgroups_are_ideals(p):
    R = build_family("R1", p)
    assert all(classify_subset(R, m).two_sided_ideal for m in enumerate_subgroups(R))


@pytest.mark.parametrize("p", [2, 3, 5])
def test_b_and_c_generate_ideals_in_r4(p):
    R = build_family("R4", p)
    _, b, c = R.generators
    assert classify_subset(R, additive_closure(R, [b])).two_sided_ideal
    assert classify_subset(R, additive_closure(R, [c])).two_sided_ideal


def test_classify_rejects_non_subgroup():
    R = build_family("R1", 3)
    with pytest.raises(NotASubgroup):
        classify_subset(R, masks.from_indices([0, 1]))


def test_class_lattice_and_duality_on_small_rings():
    for R in small_rings():
        op = opposite(R)
        for m in enumerate_subgroups(R):
            f = classify_subset(R, m)
            if f.two_sided_ideal:
                assert f.left_ideal and f.right_ideal
            if f.left_ideal or f.right_ideal:
                assert f.subring
            g = classify_subset(op, m)
            assert f.left_ideal == g.right_ideal and f.right_ideal == g.left_ideal
            assert f.subring == g.subring and f.two_sided_ideal == g.two_sided_ideal


def test_generated_member_examples():
    R4 = build_family("R4", 3)
    a = R4.generators[0]
    assert generated_member(R4, [a], MemberClass.TWO_SIDED_IDEAL) == masks.full(R4.n)
    for cls in MemberClass:
        assert generated_member(R4, [0], cls) == 1
    R2 = build_family("R2", 2)
    a = R2.generators[0]
    assert generated_member(R2, [a], MemberClass.LEFT_IDEAL) == masks.from_indices([0, a])


def test_generated_member_is_least_member():
    for R in small_rings():
        records = subgroup_records(R)
        for cls in MemberClass:
            members = [r.mask for r in records if r.flags[cls]]
            for x in range(R.n):
                gen = generated_member(R, [x], cls)
                assert classify_subset(R, gen)[cls]
                containing = [m for m in members if m >> x & 1]
                assert gen in containing
                assert all(gen & ~m == 0 for m in containing)


def test_maximal_members_examples():
    R = zero_ring((2, 2))
    tops = maximal_members(subgroup_records(R), MemberClass.TWO_SIDED_IDEAL)
    assert len(tops) == 3 and all(masks.size(m) == 2 for m in tops)
    R4 = build_family("R4", 2)
    a = R4.generators[0]
    union = 0
    for m in maximal_members(subgroup_records(R4), MemberClass.TWO_SIDED_IDEAL):
        union |= m
    assert not union >> a & 1
    assert len(maximal_members(subgroup_records(zero_ring((3, 3))), MemberClass.SUBGROUP)) == 4


def test_every_proper_member_under_a_maximal_one():
    for R in small_rings():
        records = subgroup_records(R)
        full = masks.full(R.n)
        for cls in MemberClass:
            tops = maximal_members(records, cls)
            for rec in records:
                if rec.flags[cls] and rec.mask != full:
                    assert any(rec.mask & ~t == 0 for t in tops)
                    assert rec.maximal[cls] == (rec.mask in tops)

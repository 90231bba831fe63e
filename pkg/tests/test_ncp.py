from collections import Counter
from itertools import combinations_with_replacement, permutations, product

import pytest

from backend.ncp import (
    BPartition,
    DPartition,
    SetPartition,
    catalan,
    covers,
    crossing_pair,
    element_join,
    element_meet,
    hasse_graph,
    is_noncrossing,
    join,
    kreweras,
    meet,
    narayana,
    nc_count,
    nc_elements,
    nc_enumerate,
    nc_member,
    partition_to_perm,
    perm_to_partition,
    rank1_type,
    rank2_class,
)
from backend.perm import Permutation, SignedPermutation, absolute_le, coxeter_element, format_element, identity
from utils.errors import CrossingPartition, DomainError
from utils.notation import parse_element, parse_partition


@pytest.mark.parametrize("n", range(1, 7))
def test_type_a_counts_are_catalan(n):
    assert len(nc_elements("A", n)) == catalan(n) == nc_count("A", n)


@pytest.mark.parametrize("cox_type,n,count", [("B", 2, 6), ("B", 3, 20), ("D", 4, 50)])
def test_signed_counts(cox_type, n, count):
    assert nc_count(cox_type, n) == count
    assert len(nc_elements(cox_type, n)) == count


def test_rank_profile_is_narayana():
    levels = nc_enumerate("A", 5)
    assert [len(levels[r]) for r in range(5)] == [narayana(5, 5 - r) for r in range(5)] == [1, 10, 20, 10, 1]


def test_membership_by_cycle_structure():
    assert nc_member("A", parse_element("A", "(1 3 4)(5 6)"))
    assert not nc_member("A", parse_element("A", "(1 3 2)"))
    assert not nc_member("A", parse_element("A", "(1 3)(2 4)"))


@pytest.mark.parametrize("cox_type,n", [("A", 5), ("B", 3), ("D", 4)])
def test_membership_agrees_with_enumeration(cox_type, n):
    members = set(nc_elements(cox_type, n))
    assert all(nc_member(cox_type, w) for w in members)
    assert coxeter_element(cox_type, n) in members


def test_partition_of_an_element():
    w = parse_element("A", "(1 3 4)(5 6)")
    partition = perm_to_partition("A", w)
    assert partition == parse_partition("{1,3,4|2|5,6}")
    assert partition_to_perm("A", partition) == w


@pytest.mark.parametrize("cox_type,n", [("B", 3), ("D", 4)])
def test_signed_partitions_give_back_the_element(cox_type, n):
    for w in nc_elements(cox_type, n):
        assert partition_to_perm(cox_type, perm_to_partition(cox_type, w)) == w


def test_crossing_partition_is_refused():
    partition = parse_partition("{1,3|2,4}")
    assert crossing_pair("A", partition) == ((1, 3), (2, 4))
    with pytest.raises(CrossingPartition):
        partition_to_perm("A", partition)


def test_non_member_has_no_partition():
    with pytest.raises(DomainError, match="not in NC"):
        perm_to_partition("A", parse_element("A", "(1 3 2)"))


def test_d_partition_zero_block_rules():
    DPartition(3, ((1, 2, 3, -1, -2, -3),))
    with pytest.raises(DomainError, match="zero block"):
        DPartition(3, ((1, -1), (2,), (-2,), (3,), (-3,)))
    with pytest.raises(DomainError, match="negative partner"):
        BPartition(2, ((1, 2), (-1,), (-2,)))


def test_partition_basics():
    partition = SetPartition(4, ((3, 1), (2,), (4,)))
    assert partition.blocks == ((1, 3), (2,), (4,))
    assert partition.rank == 1
    assert SetPartition.singletons(4).refines(partition)
    assert is_noncrossing("A", partition)


def test_kreweras_swaps_bottom_and_top():
    c = coxeter_element("A", 5)
    e = identity("A", 5)
    assert kreweras("A", e) == c
    assert kreweras("A", c) == e


def test_covers_of_the_identity_are_the_atoms():
    up, down = covers("A", identity("A", 4))
    assert len(up) == 6
    assert down == ()


def test_join_merges_crossing_blocks():
    first = parse_partition("{1,3}", n=4)
    second = parse_partition("{2,4}", n=4)
    assert join("A", first, second) == parse_partition("{1,2,3,4}")


def test_meet_intersects_blocks():
    first = parse_partition("{1,2,3}", n=4)
    second = parse_partition("{1,2|3,4}")
    assert meet("A", first, second) == parse_partition("{1,2}", n=4)


def test_element_join_in_type_d_stays_in_nc():
    atoms = nc_enumerate("D", 4)[1]
    joined = element_join("D", atoms[0], atoms[1])
    assert joined in nc_elements("D", 4)


def test_hasse_graph_of_nc4():
    graph = hasse_graph("A", 4)
    assert graph.number_of_nodes() == 14
    assert sorted({data["rank"] for _, data in graph.nodes(data=True)}) == [0, 1, 2, 3]
    assert all(graph.nodes[b]["rank"] == graph.nodes[a]["rank"] + 1 for a, b in graph.edges)


@pytest.mark.parametrize(
    "cox_type,n,text,expected",
    [("B", 3, "((1 2))", 2), ("B", 3, "((1 -3))", 2), ("B", 3, "((1 -2))", 3), ("B", 3, "[2]", -1), ("D", 4, "((1 4))", 4), ("D", 4, "((1 -3))", 2)],
)
def test_rank1_types(cox_type, n, text, expected):
    assert rank1_type(cox_type, n, parse_element(cox_type, text, n)) == expected


@pytest.mark.parametrize("n", [3, 4])
def test_type_b_up_sets_by_class(n):
    for t in nc_enumerate("B", n)[1]:
        k = rank1_type("B", n, t)
        if k == -1:
            expected = Counter({1: n - 1, 3: (n - 1) * (n - 2) // 2})
        else:
            expected = Counter({1: 1, 2: 2 * n - k - 2, 3: n - k, 4: (k - 2) * (k - 3) // 2 + (n - k) * (n - k - 1)})
        up, _ = covers("B", t)
        assert Counter(rank2_class("B", n, x) for x in up) == +expected


def test_type_d_rank2_elements_cover_two_or_three_atoms():
    for x in nc_enumerate("D", 4)[2]:
        _, down = covers("D", x)
        assert len(down) == (3 if rank2_class("D", 4, x) in (1, 2) else 2)


def _whole_group(cox_type, n):
    for images in permutations(range(1, n + 1)):
        if cox_type == "A":
            yield Permutation(images)
            continue
        for signs in product((1, -1), repeat=n):
            if cox_type == "D" and signs.count(-1) % 2:
                continue
            yield SignedPermutation(tuple(s * x for s, x in zip(signs, images)))


@pytest.mark.parametrize("cox_type,n", [("A", 5), ("B", 3), ("D", 4)])
def test_membership_matches_absolute_order_on_the_whole_group(cox_type, n):
    c = coxeter_element(cox_type, n)
    members = set(nc_elements(cox_type, n))
    for w in _whole_group(cox_type, n):
        below = absolute_le(cox_type, w, c)
        assert nc_member(cox_type, w) == below, format_element(w)
        assert (w in members) == below


def test_type_d_orientation_through_the_centre():
    c = coxeter_element("D", 4)
    assert c == parse_element("D", "[1 2 3][4]")
    inconsistent = parse_element("D", "((-1 2 4))", 4)
    consistent = parse_element("D", "((2 -1 4))", 4)
    assert not nc_member("D", inconsistent)
    assert not absolute_le("D", inconsistent, c)
    assert nc_member("D", consistent)
    assert absolute_le("D", consistent, c)


@pytest.mark.parametrize("cox_type,n", [("A", 5), ("B", 3), ("D", 4)])
def test_join_and_meet_are_the_lattice_bounds(cox_type, n):
    elements = nc_elements(cox_type, n)
    above = {v: {u for u in elements if absolute_le(cox_type, v, u)} for v in elements}
    for v, w in combinations_with_replacement(elements, 2):
        upper = above[v] & above[w]
        lower = {u for u in elements if v in above[u] and w in above[u]}
        joined = element_join(cox_type, v, w)
        met = element_meet(cox_type, v, w)
        assert joined in upper and upper <= above[joined]
        assert met in lower and all(met in above[u] for u in lower)


def test_type_d_elements_fixing_n_round_trip():
    for w in (identity("D", 4), parse_element("D", "((1 -3))", 4), parse_element("D", "((1 2 3))", 4)):
        partition = perm_to_partition("D", w)
        assert (4,) in partition.blocks
        assert partition_to_perm("D", partition) == w
    assert element_join("D", identity("D", 4), identity("D", 4)) == identity("D", 4)
    assert element_meet("D", identity("D", 4), coxeter_element("D", 4)) == identity("D", 4)


def test_zero_block_through_the_centre():
    partition = DPartition(4, ((1, -1, 4, -4), (2,), (-2,), (3,), (-3,)))
    w = partition_to_perm("D", partition)
    assert w == parse_element("D", "[1][4]")
    assert perm_to_partition("D", w) == partition


@pytest.mark.parametrize("cox_type,n", [("A", 5), ("B", 3), ("D", 4)])
def test_kreweras_twice_is_conjugation_by_c(cox_type, n):
    c = coxeter_element(cox_type, n)
    for w in nc_elements(cox_type, n):
        assert kreweras(cox_type, kreweras(cox_type, w)) == c.inverse() * w * c


def test_join_and_meet_of_two_six_point_partitions():
    first = parse_partition("{1,3,4}", n=6)
    second = parse_partition("{2,6|3,4}", n=6)
    assert join("A", first, second) == parse_partition("{1,2,3,4,6|5}")
    assert meet("A", first, second) == parse_partition("{3,4}", n=6)


def test_balanced_atoms_of_b3_join_to_a_balanced_cycle():
    joined = element_join("B", parse_element("B", "[1]", 3), parse_element("B", "[2]", 3))
    assert joined == parse_element("B", "[1 2]", 3)

import pytest

from backend.ncp import BPartition, DPartition, SetPartition
from backend.perm import coxeter_element, identity
from backend.trees import Edge, Forest
from utils.errors import DomainError, ParseError
from utils.notation import (
    format_forest,
    format_labeled_tree,
    format_partition,
    format_subspace,
    format_word,
    parse_chamber,
    parse_cycles,
    parse_element,
    parse_forest,
    parse_labeled_tree,
    parse_object,
    parse_partition,
    parse_subspace,
    parse_vector,
    parse_word,
)


def test_elements():
    assert parse_element("A", "(1 2)(2 3)") == coxeter_element("A", 3)
    assert parse_element("B", "[1 2 3]") == coxeter_element("B", 3)
    assert parse_element("D", "[1 2 3][4]") == coxeter_element("D", 4)
    assert parse_element("A", "()", 4) == identity("A", 4)


def test_words_keep_one_letter_per_cycle():
    letters = parse_word("A", "(1 3)(4 5)(1 2)(3 5)")
    assert len(letters) == 4
    assert all(w.n == 5 for w in letters)
    assert format_word(letters) == "(1 3)(4 5)(1 2)(3 5)"


def test_paired_cycles():
    (cycle,) = parse_cycles("((2 -1))")
    assert str(cycle) == "((1 -2))"


def test_parse_errors_carry_positions():
    with pytest.raises(ParseError) as info:
        parse_element("A", "(1 2)x")
    assert info.value.position == 5
    with pytest.raises(ParseError, match="unclosed"):
        parse_element("A", "(1 2")
    with pytest.raises(ParseError, match="expects"):
        parse_element("B", "(1 2)")
    with pytest.raises(ParseError, match="empty"):
        parse_element("A", "   ")


def test_type_d_rejects_odd_sign_changes():
    with pytest.raises(DomainError, match="odd number of sign changes"):
        parse_element("D", "[1]", 4)


def test_partitions():
    partition = parse_partition("{1,3,4|2|5,6}")
    assert isinstance(partition, SetPartition)
    assert partition.blocks == ((1, 3, 4), (2,), (5, 6))
    assert format_partition(partition) == "{1,3,4|2|5,6}"
    assert parse_partition("{1,2}", n=4).blocks == ((1, 2), (3,), (4,))


def test_signed_partitions():
    partition = parse_partition("{1,-2|-1,2}", "B")
    assert isinstance(partition, BPartition)
    assert partition.n == 2
    assert isinstance(parse_partition("{1,2,-1,-2}", "D", n=2), DPartition)


def test_bad_partitions():
    with pytest.raises(ParseError, match="bad partition entry"):
        parse_partition("{1,x}")
    with pytest.raises(ParseError, match="positive"):
        parse_partition("{1,-2}")
    with pytest.raises(ParseError):
        parse_partition("{1,2|2,3}")


def test_forests():
    forest = parse_forest("[(1,3),(3,4),(5,6)]")
    assert forest == Forest(6, frozenset({Edge(1, 3), Edge(3, 4), Edge(5, 6)}))
    assert format_forest(forest) == "[(1,3),(3,4),(5,6)]"
    with pytest.raises(ParseError, match="labels are only allowed"):
        parse_forest("[(1,2)@1]")


def test_labeled_trees():
    tree = parse_labeled_tree("[(1,2)@2,(2,3)@1]")
    assert tree.labeling == (Edge(2, 3), Edge(1, 2))
    assert format_labeled_tree(tree) == "[(1,2)@2,(2,3)@1]"
    with pytest.raises(ParseError, match="needs @k"):
        parse_labeled_tree("[(1,2)@1,(2,3)]")
    with pytest.raises(ParseError, match="are not 1..2"):
        parse_labeled_tree("[(1,2)@1,(2,3)@3]")


def test_vectors_and_subspaces():
    assert parse_vector("01100").bits == 12
    with pytest.raises(ParseError) as info:
        parse_vector("012")
    assert info.value.position == 2
    assert parse_vector("012", p=3).coords == (0, 1, 2)
    U = parse_subspace("110; 011")
    assert U.dim == 2
    assert format_subspace(U) == "101; 011"
    assert parse_subspace("0", m=3).dim == 0
    with pytest.raises(ParseError, match="ambient dimension"):
        parse_subspace("0")


def test_chambers_from_both_literals():
    by_word = parse_chamber("(1 2)(2 3)(3 4)")
    by_flag = parse_chamber("flag: 110; 011")
    assert by_word == by_flag
    with pytest.raises(ParseError, match="different lengths"):
        parse_chamber("flag: 110; 01")
    with pytest.raises(ParseError):
        parse_chamber("flag: 110; 110")


def test_parse_object_dispatches_on_the_bracket():
    assert isinstance(parse_object("{1,2|3}"), SetPartition)
    assert isinstance(parse_object("[(1,2)]"), Forest)
    assert parse_object("(1 2 3)") == coxeter_element("A", 3)

import pytest

from backend.perm import (
    Cycle,
    CycleKind,
    Permutation,
    SignedPermutation,
    absolute_le,
    absolute_length,
    check_element,
    coxeter_element,
    coxeter_number,
    disjoint_cycles,
    element_order,
    format_element,
    hurwitz_shift,
    identity,
    inversion_number,
    reduced_words,
    reflections,
    simple_reflections,
    word_product,
)
from utils.errors import DomainError


def transposition(i, j, n):
    return Cycle.make(CycleKind.UNSIGNED, (i, j)).element(n)


def test_multiplication_is_right_to_left():
    assert transposition(1, 2, 3) * transposition(2, 3, 3) == coxeter_element("A", 3)


def test_coxeter_elements_print_canonically():
    assert format_element(coxeter_element("A", 5)) == "(1 2 3 4 5)"
    assert format_element(coxeter_element("B", 3)) == "[1 2 3]"
    assert format_element(coxeter_element("D", 4)) == "[1 2 3][4]"


@pytest.mark.parametrize("cox_type,n", [("A", 5), ("B", 3), ("B", 4), ("D", 4), ("D", 5)])
def test_coxeter_element_order_and_length(cox_type, n):
    c = coxeter_element(cox_type, n)
    assert element_order(c) == coxeter_number(cox_type, n)
    assert absolute_length(cox_type, c) == (n - 1 if cox_type == "A" else n)


def test_coxeter_element_is_product_of_simple_reflections():
    for cox_type, n in [("A", 4), ("B", 3)]:
        assert word_product(cox_type, n, simple_reflections(cox_type, n)) == coxeter_element(cox_type, n)


@pytest.mark.parametrize("cox_type,n,count", [("A", 4, 6), ("B", 3, 9), ("D", 4, 12)])
def test_reflection_counts(cox_type, n, count):
    assert len(reflections(cox_type, n)) == count
    assert all(absolute_length(cox_type, t) == 1 for t in reflections(cox_type, n))


def test_canonical_cycle_forms():
    assert Cycle.make(CycleKind.UNSIGNED, (3, 1, 2)).entries == (1, 2, 3)
    assert Cycle.make(CycleKind.PAIRED, (-2, 1)).entries == (1, -2)
    assert Cycle.make(CycleKind.BALANCED, (2, 1)) == Cycle.make(CycleKind.BALANCED, (1, -2))


def test_identity_has_no_cycles():
    assert disjoint_cycles(identity("B", 3)) == ()
    assert format_element(identity("A", 4)) == "()"


def test_bad_images_are_rejected():
    with pytest.raises(DomainError):
        Permutation((1, 1, 3))
    with pytest.raises(DomainError):
        SignedPermutation((1, -1))


def test_type_d_needs_even_sign_changes():
    with pytest.raises(DomainError, match="odd number of sign changes"):
        check_element("D", SignedPermutation((-1, 2, 3, 4)))
    assert check_element("d", SignedPermutation((-1, -2, 3, 4))) == "D"


def test_unknown_type():
    with pytest.raises(DomainError, match="unknown Coxeter type"):
        coxeter_element("E", 6)


def test_absolute_order():
    c = coxeter_element("A", 4)
    assert absolute_le("A", identity("A", 4), c)
    assert absolute_le("A", transposition(1, 3, 4), c)
    assert not absolute_le("A", Cycle.make(CycleKind.UNSIGNED, (1, 3, 2)).element(4), c)


@pytest.mark.parametrize("cox_type,n,count", [("A", 3, 3), ("A", 4, 16), ("A", 5, 125), ("B", 3, 27)])
def test_reduced_words_of_coxeter_element(cox_type, n, count):
    words = reduced_words(cox_type, coxeter_element(cox_type, n))
    assert len(words) == count
    assert all(word.product == coxeter_element(cox_type, n) for word in words)


def test_hurwitz_shifts_keep_the_product():
    word = reduced_words("A", coxeter_element("A", 4))[0]
    right = hurwitz_shift(word, 1, "right")
    left = hurwitz_shift(right, 1, "left")
    assert right.product == word.product
    assert left == word
    with pytest.raises(DomainError):
        hurwitz_shift(word, 3, "right")


def test_inversion_number():
    assert inversion_number([3, 1, 2]) == 2
    assert inversion_number(Permutation((4, 3, 2, 1))) == 6

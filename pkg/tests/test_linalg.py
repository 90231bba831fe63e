import numpy as np
import pytest

from backend.linalg import (
    VecFp,
    edge_to_vector,
    embed_nc,
    embed_partition,
    f2_intersect,
    f2_span,
    gaussian_binomial,
    intersect,
    is_compatible_prime,
    left_complement,
    nullspace,
    positive_roots,
    reflection_root,
    right_complement,
    rank_mod_p,
    rref_mod_p,
    span,
    subspace_lattice,
    subspace_sum,
    whole_space,
    zero_subspace,
)
from backend.ncp import nc_elements
from backend.perm import coxeter_element, identity
from utils.errors import DomainError, IncompatiblePrime
from utils.notation import parse_element, parse_partition


def test_bit_order_puts_the_first_coordinate_highest():
    v = VecFp(2, (0, 1, 1, 0, 0))
    assert v.bits == 0b01100
    assert VecFp.from_bits(5, 12) == v
    assert str(v) == "01100"


def test_edge_vectors():
    assert str(edge_to_vector((2, 3), 6)) == "01100"
    assert str(edge_to_vector((1, 6), 6)) == "10000"
    with pytest.raises(DomainError):
        edge_to_vector((3, 3), 6)


def test_f2_span_is_reduced():
    assert f2_span([0b110, 0b011, 0b101]) == (0b101, 0b011)
    assert f2_span([]) == ()


def test_f2_intersection():
    first = f2_span([0b100, 0b010])
    second = f2_span([0b110, 0b001])
    assert f2_intersect(3, first, second) == (0b110,)


def test_sum_and_intersection_dimensions():
    U = span(2, 4, [(1, 1, 0, 0), (0, 0, 1, 1)])
    W = span(2, 4, [(1, 0, 1, 0), (0, 1, 0, 1)])
    assert subspace_sum(U, W).dim + intersect(U, W).dim == U.dim + W.dim
    assert intersect(U, W) == span(2, 4, [(1, 1, 1, 1)])


def test_odd_prime_elimination():
    assert rank_mod_p(3, [[1, 2], [2, 1]]) == 1
    assert rank_mod_p(5, [[1, 2], [2, 1]]) == 2
    reduced, pivots = rref_mod_p(3, np.array([[2, 1, 0], [1, 1, 1]]))
    assert pivots == (0, 1)
    assert reduced.tolist() == [[1, 0, 2], [0, 1, 2]]


def test_odd_prime_intersection():
    U = span(3, 3, [(1, 0, 0), (0, 1, 0)])
    W = span(3, 3, [(1, 1, 1), (0, 0, 1)])
    assert intersect(U, W) == span(3, 3, [(1, 1, 0)])


def test_nullspace():
    assert nullspace(2, 3, [[1, 1, 0]]).dim == 2
    assert nullspace(3, 3, [[1, 1, 1], [1, 2, 0]]) == span(3, 3, [(1, 1, 1)])


def test_containment():
    U = span(2, 3, [(1, 1, 0)])
    assert U.contains((1, 1, 0))
    assert not U.contains(0b001)
    assert zero_subspace(2, 3).is_subspace_of(U)
    assert U.is_subspace_of(whole_space(2, 3))


@pytest.mark.parametrize("m,k,q,expected", [(3, 1, 2, 7), (4, 2, 2, 35), (3, 1, 3, 13)])
def test_gaussian_binomial(m, k, q, expected):
    assert gaussian_binomial(m, k, q) == expected


def test_subspace_lattice_size():
    assert len(subspace_lattice(2, 3)) == 16
    assert len(subspace_lattice(3, 2)) == 6


def test_compatible_primes():
    assert is_compatible_prime("A", 5, 2)
    assert not is_compatible_prime("B", 3, 2)
    assert is_compatible_prime("B", 3, 3)
    with pytest.raises(DomainError, match="not prime"):
        is_compatible_prime("A", 4, 4)


def test_embedding_of_the_coxeter_element_is_everything():
    assert embed_nc("A", coxeter_element("A", 5), 2) == whole_space(2, 4)
    assert embed_nc("B", identity("B", 3), 3) == zero_subspace(3, 3)


def test_embedding_needs_a_compatible_prime():
    with pytest.raises(IncompatiblePrime):
        embed_nc("B", coxeter_element("B", 3), 2)


def test_embedding_is_injective_on_nc():
    images = {embed_nc("A", w, 2) for w in nc_elements("A", 5)}
    assert len(images) == 42


def test_partition_embedding():
    U = embed_partition(parse_partition("{1,3,4|2|5,6}"))
    assert U.dim == 3
    assert U.contains(edge_to_vector((1, 4), 6))
    assert not U.contains(edge_to_vector((1, 2), 6))


@pytest.mark.parametrize("cox_type,n,count", [("A", 4, 6), ("B", 3, 9), ("D", 4, 12)])
def test_positive_roots(cox_type, n, count):
    assert len(positive_roots(cox_type, n)) == count


def test_reflection_roots():
    assert reflection_root("A", 4, parse_element("A", "(1 3)", 4)) == (1, 0, -1)
    assert reflection_root("A", 4, parse_element("A", "(1 4)", 4)) == (1, 0, 0)
    assert reflection_root("B", 3, parse_element("B", "[2]", 3)) == (0, 1, 0)
    assert reflection_root("B", 3, parse_element("B", "((1 -3))", 3)) == (1, 0, 1)
    with pytest.raises(DomainError, match="not a reflection"):
        reflection_root("A", 4, coxeter_element("A", 4))


def test_left_and_right_complements_invert_each_other():
    form = ((1, 1, 1), (0, 1, 1), (0, 0, 1))
    for U in subspace_lattice(2, 3):
        assert left_complement(right_complement(U, form), form) == U
        assert right_complement(left_complement(U, form), form) == U
        assert right_complement(U, form).dim == 3 - U.dim

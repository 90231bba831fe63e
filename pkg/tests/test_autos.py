import pytest

from backend import autos
from backend.linalg import embed_nc, span
from backend.ncp import nc_elements, nc_enumerate, rank1_type
from backend.perm import coxeter_element, identity, word_product
from utils.errors import DegenerateForm, DomainError
from utils.notation import parse_element


@pytest.mark.parametrize("cox_type,n", [("A", 4), ("A", 5), ("B", 3), ("D", 4), ("D", 5)])
def test_standard_bipartition(cox_type, n):
    bipartition = autos.standard_bipartition(cox_type, n)
    assert bipartition.l * bipartition.r == coxeter_element(cox_type, n)
    assert (bipartition.l * bipartition.l).is_identity()
    assert (bipartition.r * bipartition.r).is_identity()


@pytest.mark.parametrize(
    "cox_type,n,l,r",
    [
        ("A", 5, "(1 2)(3 5)", "(2 5)(3 4)"),
        ("B", 4, "((1 4))((2 3))", "((1 3))[4]"),
        ("D", 4, "((2 3))[1][4]", "((1 3))"),
    ],
)
def test_standard_bipartition_parts(cox_type, n, l, r):
    bipartition = autos.standard_bipartition(cox_type, n)
    assert bipartition.l == parse_element(cox_type, l, n)
    assert bipartition.r == parse_element(cox_type, r, n)


def test_cyclic_bipartitions():
    assert len(autos.all_bipartitions_cyclic("A", 5)) == 5


def test_rank_one_has_no_bipartition():
    with pytest.raises(DomainError, match="rank"):
        autos.standard_bipartition("A", 2)


@pytest.mark.parametrize(
    "cox_type,n,star,order",
    [("A", 4, False, 8), ("A", 5, False, 10), ("B", 3, False, 6), ("D", 4, False, 6), ("D", 4, True, 12), ("D", 5, True, 16)],
)
def test_dihedral_group_orders(cox_type, n, star, order):
    assert autos.dihedral_order(cox_type, n, star) == order
    assert len(autos.dihedral_group(cox_type, n, star=star)) == order


def test_star_group_is_type_d_only():
    with pytest.raises(DomainError, match="type D"):
        autos.dihedral_group("A", 4, star=True)


def test_skew_group_has_twice_the_order():
    assert len(autos.skew_group("A", 4)) == 16
    assert len(autos.skew_group("B", 3)) == 12


def test_dihedral_elements_are_rotations_or_reflections():
    elements = autos.classify_dihedral("A", 5)
    kinds = [e.kind for e in elements]
    assert kinds.count("rotation") == 5
    assert kinds.count("reflection") == 5


def test_lattice_maps_compose():
    phi = autos.phi_l("A", 4)
    assert (phi * phi).is_identity()
    assert phi.inverse() == phi
    assert autos.conjugation_map("A", 4).order() == 4
    K = autos.kreweras_map("A", 4)
    assert K(identity("A", 4)) == coxeter_element("A", 4)
    assert (K * K).orientation is autos.Orientation.PRESERVING


def test_non_automorphism_is_rejected():
    elements = nc_elements("A", 4)
    swapped = (elements[1], elements[0]) + elements[2:]
    with pytest.raises(DomainError, match="not a lattice automorphism"):
        autos.LatticeMap("A", 4, swapped)


def test_full_group_in_type_a():
    assert len(autos.full_aut_group("A", 4)) == 8


@pytest.mark.slow
def test_exotic_automorphism_of_d4():
    zeta = autos.exotic_zeta()
    assert (zeta * zeta).is_identity()
    full = autos.full_aut_group("D", 4)
    assert zeta in full
    assert len(full) > len(autos.dihedral_group("D", 4, star=True))


@pytest.mark.parametrize("cox_type,n,p", [("A", 4, 2), ("B", 3, 3)])
def test_dihedral_maps_extend_linearly(cox_type, n, p):
    phi = autos.phi_l(cox_type, n)
    extension = autos.extend_to_lambda(phi, p)
    for w in nc_elements(cox_type, n):
        assert extension.apply(embed_nc(cox_type, w, p)) == embed_nc(cox_type, phi(w), p)


def test_only_order_preserving_maps_extend():
    with pytest.raises(DomainError):
        autos.extend_to_lambda(autos.kreweras_map("A", 4), 2)


@pytest.mark.parametrize("cox_type,n,p", [("A", 4, 2), ("A", 5, 2), ("B", 3, 3), ("D", 4, 3)])
def test_complement_is_kreweras(cox_type, n, p):
    assert autos.verify_antiauto_extension(cox_type, n, p)


@pytest.mark.parametrize("cox_type,n", [("A", 4), ("B", 3), ("D", 4)])
def test_subordinate_roots_are_orthogonal(cox_type, n):
    assert autos.verify_form_vanishing(cox_type, n)


def test_degenerate_form_is_reported():
    form = autos.bilinear_form("B", 3)
    with pytest.raises(DegenerateForm):
        autos.complement(span(2, 3, [(1, 0, 0)]), form)


def test_type_a_form_is_upper_unitriangular():
    assert autos.bilinear_form("A", 4).coefficients == ((1, 1, 1), (0, 1, 1), (0, 0, 1))


@pytest.mark.parametrize("cox_type,n", [("B", 3), ("B", 4), ("D", 4)])
def test_rank2_tables_match_enumeration(cox_type, n):
    assert autos.rank2_table_mismatches(cox_type, n) == ()


@pytest.mark.parametrize("cox_type,n", [("B", 3), ("B", 4), ("D", 4)])
def test_rank2_table_words_multiply_to_their_element(cox_type, n):
    for row in autos.instantiate_rank2_table(cox_type, n):
        for word in row.words:
            assert word_product(cox_type, n, word) == row.element, row.pattern


def test_mixed_sign_three_cycle_row():
    words = ("((a b))((b -c))", "((b -c))((a -c))", "((a -c))((a b))")
    assert dict(autos.RANK2_TABLE_B)["((a b -c))"] == words
    assert dict(autos.RANK2_TABLE_D)["((a b -c))"] == words


def test_rank2_tables_exist_for_b_and_d():
    with pytest.raises(DomainError):
        autos.rank2_table("A")


def test_rank2_words_grouped_by_class():
    table = autos.rank2_word_table("B", 3)
    assert sorted(table) == [1, 2, 3]
    assert all(len(elements) == 3 for elements in table.values())
    assert all(words for elements in table.values() for words in elements.values())


def test_every_automorphism_of_nc_b3_preserves_rank1_types():
    atoms = nc_enumerate("B", 3)[1]
    for lmap in autos.full_aut_group("B", 3):
        assert all(rank1_type("B", 3, lmap(t)) == rank1_type("B", 3, t) for t in atoms)


@pytest.mark.slow
def test_zeta_extension_is_reported():
    attempt = autos.zeta_extension_attempt(3)
    assert attempt.p == 3
    assert attempt.success == (attempt.extension is not None)
    assert attempt.success or attempt.reason

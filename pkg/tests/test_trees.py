import pytest

from backend.perm import coxeter_element, reduced_words, word_product
from backend.trees import (
    Edge,
    Forest,
    count_nc_spanning_trees,
    count_spanning_trees,
    enumerate_spanning_trees,
    forest_to_word,
    good_labelings,
    is_good_labeling,
    make_forest,
    product_is_coxeter,
    spanning_forest,
    word_to_tree,
)
from utils.errors import DomainError, GuardExceeded
from utils.notation import parse_partition


def path_tree(n):
    return make_forest(n, [(k, k + 1) for k in range(1, n)])


def test_edges_need_increasing_ends():
    with pytest.raises(DomainError):
        Edge(3, 1)
    assert Edge(1, 3).crosses(Edge(2, 4))
    assert not Edge(1, 4).crosses(Edge(2, 3))


def test_forest_rejects_cycles():
    with pytest.raises(DomainError, match="cycle"):
        make_forest(3, [(1, 2), (2, 3), (1, 3)])


def test_forest_partition_is_its_components():
    forest = make_forest(6, [(1, 3), (3, 4), (5, 6)])
    assert forest.partition() == parse_partition("{1,3,4|2|5,6}")
    assert not forest.is_spanning
    assert forest.is_noncrossing


def test_spanning_forest_of_a_partition():
    forest = spanning_forest(parse_partition("{1,3,4|2|5,6}"))
    assert forest.sorted_edges() == (Edge(1, 3), Edge(3, 4), Edge(5, 6))


@pytest.mark.parametrize("n,expected", [(3, 3), (4, 12), (5, 55), (6, 273)])
def test_nc_spanning_tree_counts(n, expected):
    assert count_nc_spanning_trees(n) == expected


@pytest.mark.parametrize("n", [3, 4, 5])
def test_enumeration_matches_closed_forms(n):
    assert len(enumerate_spanning_trees(n)) == count_spanning_trees(n)
    assert len(enumerate_spanning_trees(n, noncrossing=True)) == count_nc_spanning_trees(n)


def test_spanning_tree_guard():
    with pytest.raises(GuardExceeded):
        enumerate_spanning_trees(9)


def test_path_tree_has_one_good_labeling():
    tree = path_tree(4)
    (labeling,) = good_labelings(tree)
    assert labeling == tree.sorted_edges()
    assert product_is_coxeter(tree, labeling)


def test_star_tree_labels_run_counterclockwise():
    tree = make_forest(4, [(1, 2), (1, 3), (1, 4)])
    assert is_good_labeling(tree, (Edge(1, 4), Edge(1, 3), Edge(1, 2)))
    assert not is_good_labeling(tree, (Edge(1, 2), Edge(1, 3), Edge(1, 4)))


def test_good_labelings_are_the_reduced_words():
    n = 4
    words = set()
    for tree in enumerate_spanning_trees(n, noncrossing=True):
        for labeling in good_labelings(tree):
            word = forest_to_word(tree, labeling)
            assert word.reduced_for_coxeter
            words.add(word.letters)
    assert words == {w.letters for w in reduced_words("A", coxeter_element("A", n))}


def test_bad_labeling_is_not_reduced():
    tree = path_tree(4)
    word = forest_to_word(tree, tuple(reversed(tree.sorted_edges())))
    assert not word.reduced_for_coxeter
    assert word_product("A", 4, word.letters) != coxeter_element("A", 4)


def test_word_to_tree_inverts_forest_to_word():
    word = reduced_words("A", coxeter_element("A", 5))[7]
    tree = word_to_tree(word.letters)
    assert forest_to_word(tree.tree, tree.labeling).letters == word.letters


def test_good_labelings_need_a_noncrossing_spanning_tree():
    with pytest.raises(DomainError, match="crossing"):
        good_labelings(make_forest(4, [(1, 3), (2, 4), (1, 2)]))
    with pytest.raises(DomainError, match="spanning"):
        good_labelings(Forest(4, frozenset({Edge(1, 2)})))

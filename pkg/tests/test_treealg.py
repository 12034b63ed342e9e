"""Tests for colored trees, tree pairs and the P Pi Q^-1 factorization."""

import itertools

import pytest

from app.core.errors import BudgetExceeded, MalformedWord, ParseError
from app.models.cantor import DyadicRect, Pattern
from app.models.element import identity
from app.models.gridform import equals
from app.models.treealg import (
    LEAF,
    TreePair,
    caret,
    decompose_PPiQ,
    element_to_tree_pair,
    extract_C_prefix,
    format_tree,
    iter_trees,
    minimal_pair,
    parse_tree,
    pattern_to_tree,
    permutation_word,
    right_vine,
    tree_pair_to_element,
    tree_to_pattern,
    vine_word,
)
from app.models.word import GroupWord
from app.services.genset import GeneratorTable
from app.services.metric import MetricService


def test_tree_to_pattern() -> None:
    """Leaves of a colored tree give a pattern."""
    assert tree_to_pattern(LEAF) == Pattern.trivial()
    assert tree_to_pattern(caret("a")) == Pattern.of([DyadicRect("0", ""), DyadicRect("1", "")])


def test_two_trees_for_the_quarters() -> None:
    """Cutting vertically then horizontally gives the same pattern as the reverse."""
    ab = caret("a", caret("b"), caret("b"))
    ba = caret("b", caret("a"), caret("a"))
    assert tree_to_pattern(ab) == tree_to_pattern(ba)


def test_pattern_to_tree_prefers_vertical_cuts() -> None:
    p = Pattern.of([DyadicRect("0", "0"), DyadicRect("0", "1"), DyadicRect("1", "")])
    assert pattern_to_tree(p) == caret("a", caret("b"), LEAF)
    assert pattern_to_tree(Pattern.trivial()) == LEAF


def test_tree_text_format() -> None:
    t = caret("a", caret("b"), LEAF)
    assert format_tree(t) == "a(b(..).)"
    assert parse_tree("a( b(..) . )") == t
    with pytest.raises(ParseError):
        parse_tree("a(..")
    with pytest.raises(ParseError):
        parse_tree("c(..)")


def test_iter_trees_counts() -> None:
    """Two colors on every Catalan shape."""
    assert sum(1 for _ in iter_trees(2)) == 2 * 4
    assert all(t.carets == 3 for t in iter_trees(3))


def test_tree_pair_round_trip(table: GeneratorTable) -> None:
    for symbol in ("x_0", "y_0", "C_1", "alpha_1"):
        g = table.resolve(symbol)
        assert equals(tree_pair_to_element(element_to_tree_pair(g)), g)


def test_tree_pair_validation() -> None:
    with pytest.raises(ParseError):
        TreePair(caret("a"), LEAF, (0,))


def test_minimal_pair_of_small_elements(table: GeneratorTable) -> None:
    """The identity needs no caret, a leaf swap needs one."""
    assert minimal_pair(identity(), 3) == TreePair(LEAF, LEAF, (0,))
    tp = minimal_pair(table.resolve("pib_0"), 3)
    assert tp.target.depth == 1
    assert tp.permutation == (1, 0)
    with pytest.raises(BudgetExceeded):
        minimal_pair(table.resolve("x_0"), 1)


def test_transposition_factorization(table: GeneratorTable) -> None:
    """A swapped single caret factors as a pure permutation."""
    p, pi, q = decompose_PPiQ(minimal_pair(table.resolve("pib_0"), 3))
    assert not p
    assert not q
    assert pi == GroupWord.parse("pib_0")


def test_x0_factorization(table: GeneratorTable) -> None:
    p, pi, q = decompose_PPiQ(minimal_pair(table.resolve("x_0"), 4))
    assert p == GroupWord.parse("A_0")
    assert not pi
    assert not q


def test_vine_word_reads_spine_colors_first() -> None:
    """Horizontal spine carets become C letters before any rotation."""
    assert vine_word(right_vine(4)) == GroupWord()
    assert vine_word(caret("b")) == GroupWord.parse("C_0")
    source = caret("b", caret("b"), LEAF)
    assert vine_word(source) == GroupWord.parse("C_0 B_0")


@pytest.mark.parametrize("leaves", [3, 4])
def test_permutation_word_matches_the_tree_pair(table: GeneratorTable, leaves: int) -> None:
    """Every leaf permutation of the vine is spelled by pi and pib letters."""
    vine = right_vine(leaves)
    for perm in itertools.permutations(range(leaves)):
        expected = tree_pair_to_element(TreePair(vine, vine, perm))
        assert equals(table.word_to_element(permutation_word(perm)), expected), perm


@pytest.mark.parametrize("symbol", ["x_0", "x_1", "y_0", "B_0", "B_1", "C_0", "C_1", "pi_0", "pib_0"])
def test_factorization_reproduces_the_element(table: GeneratorTable, symbol: str) -> None:
    """``P Pi Q^-1`` evaluates back to the element."""
    g = table.resolve(symbol)
    p, pi, q = decompose_PPiQ(minimal_pair(g, 6))
    assert equals(table.word_to_element(p + pi + q.inverse()), g)


def test_extract_c_prefix() -> None:
    """Indices of the leading C run."""
    assert extract_C_prefix(GroupWord.parse("C0 C2 A1")) == [0, 2]
    assert extract_C_prefix(GroupWord()) == []
    assert extract_C_prefix(GroupWord.parse("A1 B2")) == []
    assert extract_C_prefix(GroupWord.parse("A1")) == []


@pytest.mark.parametrize("text", ["A1 C0", "C2 C1", "C0^-1", "C0 C0"])
def test_extract_c_prefix_rejects_malformed_words(text: str) -> None:
    with pytest.raises(MalformedWord):
        extract_C_prefix(GroupWord.parse(text))


def test_unit_ball_factors_within_the_grid_depth(table: GeneratorTable) -> None:
    """Ball elements have shallow minimal pairs, and ``P Pi Q^-1`` spells them back."""
    for entry in MetricService(table).ball(1).entries.values():
        g = entry.element
        tp = minimal_pair(g, 8)
        # the grid on the longest side of any range rectangle refines every pair
        side = max(max(len(r.w1), len(r.w2)) for _, r in g.pairs)
        assert tp.target.depth <= 2 * side, entry.word
        p, pi, q = decompose_PPiQ(tp)
        assert equals(table.word_to_element(p + pi + q.inverse()), g), entry.word

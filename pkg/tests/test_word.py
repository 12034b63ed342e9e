"""Tests for group words."""

import pytest

from app.core.errors import MalformedWord, UnknownSymbol
from app.models.word import GroupWord, Letter, canonical_symbol, mirror_pairs, mirror_word, split_symbol


def test_symbol_normalization() -> None:
    """Underscores are optional on input and always present on output."""
    assert canonical_symbol("x0") == "x_0"
    assert canonical_symbol("gamma_0") == "gamma_0"
    assert canonical_symbol("pib12") == "pib_12"
    assert split_symbol("xh_2") == ("xh", 2)
    with pytest.raises(MalformedWord):
        canonical_symbol("x")


def test_parse_exponents() -> None:
    """Exponents expand into single letters."""
    w = GroupWord.parse("x0 y1^-1 C_0^3")
    assert len(w) == 5
    assert w.letters[0] == Letter("x_0", 1)
    assert w.letters[1] == Letter("y_1", -1)
    assert w.letters[2:] == (Letter("C_0", 1),) * 3
    assert GroupWord.parse("x0*x1.x2") == GroupWord.parse("x_0 x_1 x_2")
    assert not GroupWord.parse("")
    assert not GroupWord.parse("e")


def test_parse_rejects_bad_tokens() -> None:
    with pytest.raises(MalformedWord):
        GroupWord.parse("x0^")
    with pytest.raises(MalformedWord):
        GroupWord.parse("x0 ^2")


def test_printing_compresses_runs() -> None:
    """Runs of one letter print as powers."""
    assert str(GroupWord.parse("x0^-1 x0^-1 x0^-1 x1")) == "x_0^-3 x_1"
    assert str(GroupWord.power("x_1", 2) + GroupWord.letter("x_1", -1)) == "x_1^2 x_1^-1"


def test_inverse_and_free_reduction() -> None:
    """Inversion reverses the word; free reduction cancels neighbours."""
    w = GroupWord.parse("x0 y1^-1")
    assert w.inverse() == GroupWord.parse("y1 x0^-1")
    assert (w + w.inverse()).free_reduce() == GroupWord()
    assert GroupWord.parse("x0 x1 x1^-1 x0").free_reduce() == GroupWord.parse("x0^2")
    assert GroupWord.parse("x0^2 x1^-1 x0").runs() == [("x_0", 2), ("x_1", -1), ("x_0", 1)]


def test_mirror_word() -> None:
    """The coordinate swap exchanges the x and y families and inverts C_0."""
    mirrored = mirror_word(GroupWord.parse("x0^-1 Bh_0 C_0 x1 alpha_1"))
    assert mirrored == GroupWord.parse("y0^-1 gamma_0 C_0^-1 y1 beta_1")
    assert mirror_word(mirrored) == GroupWord.parse("x0^-1 Bh_0 C_0 x1 alpha_1")
    with pytest.raises(UnknownSymbol):
        mirror_word(GroupWord.parse("pi_1"))


def test_mirror_pairs_listed_once() -> None:
    pairs = mirror_pairs()
    firsts = [a for a, _, _ in pairs]
    assert len(firsts) == len(set(firsts))
    assert ("C_0", "C_0", -1) in pairs

"""Tests for elements as numbered pattern pairs."""

import pytest

from app.core.errors import InvalidElement, ParseError, PrefixTooShort, RectNotInRange
from app.models.cantor import DyadicRect
from app.models.element import (
    Element,
    PrefixPoint,
    compose,
    evaluate,
    format_element,
    identity,
    image_of,
    inverse,
    is_identity,
    is_identity_on,
    parse_element,
    power,
    preimage_of,
    reduce_pair,
    support_disjoint,
    transpose,
    with_range_rect,
)
from app.models.gridform import equals
from app.services.genset import GeneratorTable

X0_TEXT = """n=2 m=3
00,- -> 0,-
01,- -> 10,-
1,- -> 11,-
"""


@pytest.fixture(scope="module")
def x0() -> Element:
    return parse_element(X0_TEXT)


def test_evaluate_follows_the_pair_list(x0: Element) -> None:
    """Points move by the prefix swap of the rectangle holding them."""
    assert evaluate(x0, PrefixPoint("00", "")) == PrefixPoint("0", "")
    assert evaluate(x0, PrefixPoint("0110", "01")) == PrefixPoint("1010", "01")
    assert evaluate(x0, PrefixPoint("1", "1")) == PrefixPoint("11", "1")
    with pytest.raises(PrefixTooShort):
        evaluate(x0, PrefixPoint("0", ""))


def test_compose_applies_left_first(table: GeneratorTable, x0: Element) -> None:
    """``compose(f, g)`` evaluates ``f`` and then ``g``."""
    x1 = table.resolve("x_1")
    fg = compose(x0, x1)
    p = PrefixPoint("0111", "0")
    assert evaluate(fg, p) == evaluate(x1, evaluate(x0, p))


def test_inverse_law(x0: Element) -> None:
    assert is_identity(compose(x0, inverse(x0)))
    assert is_identity(reduce_pair(compose(inverse(x0), x0)))


def test_power_matches_repeated_products(x0: Element) -> None:
    cubed = reduce_pair(compose(reduce_pair(compose(x0, x0)), x0))
    assert equals(power(x0, 3), cubed)
    assert equals(power(x0, -2), power(inverse(x0), 2))
    assert is_identity(power(x0, 0))


def test_reduce_pair_merges_subdivided_pairs() -> None:
    """A subdivided identity reduces back to one pair."""
    split = parse_element("n=2 m=2\n0,- -> 0,-\n1,- -> 1,-")
    assert reduce_pair(split) == identity()


def test_image_and_preimage(x0: Element) -> None:
    """Only uniformly transported rectangles have an image."""
    assert image_of(x0, DyadicRect("00", "1")) == DyadicRect("0", "1")
    assert image_of(x0, DyadicRect("0", "")) is None
    assert preimage_of(x0, DyadicRect("0", "")) == DyadicRect("00", "")
    assert is_identity_on(identity(), DyadicRect("01", "1"))
    assert not is_identity_on(x0, DyadicRect("1", ""))


def test_with_range_rect_keeps_the_element(x0: Element) -> None:
    """Carving a range rectangle changes the pair, not the element."""
    g = with_range_rect(x0, DyadicRect("00", ""))
    assert (DyadicRect("000", ""), DyadicRect("00", "")) in g.pairs
    assert len(g) == 4
    assert equals(g, x0)
    with pytest.raises(RectNotInRange):
        with_range_rect(x0, DyadicRect("", "0"))


def test_transpose_swaps_coordinates(table: GeneratorTable, x0: Element) -> None:
    assert equals(transpose(x0), table.resolve("y_0"))
    assert equals(transpose(table.resolve("C_0")), inverse(table.resolve("C_0")))


def test_support_disjoint(table: GeneratorTable, x0: Element) -> None:
    """Generators acting on different halves have disjoint supports."""
    assert support_disjoint(table.resolve("x_1"), table.resolve("xh_1"))
    assert not support_disjoint(x0, table.resolve("x_1"))


def test_serialization(x0: Element) -> None:
    assert format_element(x0) == X0_TEXT.strip()
    assert str(identity()) == "n=2 m=1\n-,- -> -,-"


@pytest.mark.parametrize(
    ("text", "error"),
    [
        ("", ParseError),
        ("n=2 m=2\n-,- -> -,-", ParseError),
        ("n=3 m=1\n-,- -> -,-", ParseError),
        ("n=2 m=1\n-,- => -,-", ParseError),
        ("n=2 m=2\n0,- -> 0,-\n0,1 -> 1,-", InvalidElement),
    ],
)
def test_parse_errors(text: str, error: type) -> None:
    with pytest.raises(error):
        parse_element(text)

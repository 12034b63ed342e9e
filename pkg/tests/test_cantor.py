"""Tests for dyadic rectangles and patterns."""

from fractions import Fraction

import pytest

from app.core.errors import ParseError, RectNotInPattern
from app.models.cantor import (
    TRIVIAL_RECT,
    Axis,
    DyadicRect,
    Pattern,
    RectIndex,
    children,
    common_refinement,
    contains,
    fineness,
    format_pattern,
    intersection,
    is_origin_rect,
    measure,
    overlaps,
    parent,
    parse_pattern,
    parse_rect,
    rect_at_origin,
    rect_size,
    refines,
    sibling,
    subdivide,
    suffix_below,
    validate_partition,
)

HALVES_V = Pattern.of([DyadicRect("0", ""), DyadicRect("1", "")])
HALVES_H = Pattern.of([DyadicRect("", "0"), DyadicRect("", "1")])
QUARTERS = Pattern.of(DyadicRect(a, b) for a in "01" for b in "01")


def test_rect_size_and_measure() -> None:
    """Size counts both words; area halves with every letter."""
    r = DyadicRect("00", "0")
    assert rect_size(r) == 3
    assert measure(r) == Fraction(1, 8)
    assert rect_size(TRIVIAL_RECT) == 0


def test_overlap_and_containment() -> None:
    """Rectangles overlap exactly when both coordinates are comparable."""
    a = DyadicRect("0", "")
    b = DyadicRect("01", "1")
    assert overlaps(a, b)
    assert contains(a, b)
    assert not contains(b, a)
    assert intersection(a, DyadicRect("", "1")) == DyadicRect("0", "1")
    assert intersection(a, DyadicRect("1", "")) is None
    assert suffix_below(a, b) == ("1", "1")


def test_children_parent_sibling() -> None:
    """Halving, merging and the neighbour along each axis."""
    r = DyadicRect("0", "1")
    assert children(r, Axis.VERTICAL) == (DyadicRect("00", "1"), DyadicRect("01", "1"))
    assert children(r, Axis.HORIZONTAL) == (DyadicRect("0", "10"), DyadicRect("0", "11"))
    assert parent(r, Axis.VERTICAL) == DyadicRect("", "1")
    assert sibling(r, Axis.HORIZONTAL) == DyadicRect("0", "0")
    assert parent(DyadicRect("", "1"), Axis.VERTICAL) is None


def test_validate_partition_reports() -> None:
    """The report distinguishes overlaps from measure deficits."""
    assert validate_partition(QUARTERS.rects).ok

    overlap = validate_partition([DyadicRect("0", ""), DyadicRect("00", "1"), DyadicRect("1", "")])
    assert not overlap.ok
    assert overlap.overlap is not None
    assert "overlap" in overlap.message

    deficit = validate_partition([DyadicRect("0", "")])
    assert not deficit.ok
    assert deficit.total_measure == Fraction(1, 2)


def test_subdivide() -> None:
    """Subdividing one rectangle adds exactly one rectangle."""
    p = subdivide(Pattern.trivial(), TRIVIAL_RECT, Axis.VERTICAL)
    assert p == HALVES_V
    q = subdivide(p, DyadicRect("0", ""), Axis.HORIZONTAL)
    assert len(q) == 3
    assert validate_partition(q.rects).ok
    with pytest.raises(RectNotInPattern):
        subdivide(p, DyadicRect("00", ""), Axis.VERTICAL)


def test_common_refinement_and_refines() -> None:
    """Vertical and horizontal halves refine to the four quarters."""
    both = common_refinement(HALVES_V, HALVES_H)
    assert both == QUARTERS
    assert refines(QUARTERS, HALVES_V)
    assert not refines(HALVES_V, QUARTERS)
    assert fineness(QUARTERS) == 2


def test_rect_at_origin() -> None:
    assert rect_at_origin(QUARTERS) == DyadicRect("0", "0")
    assert is_origin_rect(DyadicRect("000", ""))
    assert not is_origin_rect(DyadicRect("01", ""))


def test_rect_index_queries() -> None:
    """The index answers overlap and containment by prefix walks."""
    index = RectIndex(QUARTERS.rects)
    hits = {QUARTERS.rects[i] for i in index.overlapping(DyadicRect("0", ""))}
    assert hits == {DyadicRect("0", "0"), DyadicRect("0", "1")}
    inside = [QUARTERS.rects[i] for i in index.containing(DyadicRect("011", "10"))]
    assert inside == [DyadicRect("0", "1")]


def test_pattern_text_format() -> None:
    """Patterns print one rectangle per line with '-' for the empty word."""
    text = format_pattern(HALVES_V)
    assert text == "0,-\n1,-"
    assert parse_pattern(text) == HALVES_V
    assert parse_rect("-,01") == DyadicRect("", "01")
    with pytest.raises(ParseError):
        parse_pattern("0,-\n")
    with pytest.raises(ParseError):
        parse_rect("02,-")

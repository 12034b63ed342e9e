"""Tests for grid diagrams, the normal form and essential rectangles."""

import random

import pytest

from app.core.errors import NoEssentialOrigin, RectNotInRange, StripNotFound
from app.models.cantor import Axis, DyadicRect, Pattern
from app.models.element import compose, identity, inverse, preimage_of
from app.models.gridform import (
    IDENTITY_KEY,
    canonical_key,
    check_essential,
    equals,
    find_essential_origin,
    global_reduce,
    global_subdivide,
    interval_partition,
    is_essential,
    is_grid_pattern,
    is_interval_partition,
    length_lower_bound,
    normal_form,
    origin_rects,
    reduce_grid,
    rect_lower_bound,
    to_grid_diagram,
)
from app.models.word import GroupWord
from app.services.genset import GeneratorTable


def test_interval_partition() -> None:
    """The coarsest partition containing every word as a node."""
    assert interval_partition(["0", "10", "11"]) == ("0", "10", "11")
    assert interval_partition(["010"]) == ("00", "010", "011", "1")
    assert interval_partition([""]) == ("",)
    assert is_interval_partition(["0", "10", "11"])
    assert not is_interval_partition(["0", "01", "1"])


def test_is_grid_pattern() -> None:
    quarters = Pattern.of(DyadicRect(a, b) for a in "01" for b in "01")
    assert is_grid_pattern(quarters)
    mixed = Pattern.of([DyadicRect("0", ""), DyadicRect("1", "0"), DyadicRect("1", "1")])
    assert not is_grid_pattern(mixed)


def test_grid_diagram_of_x0(table: GeneratorTable) -> None:
    """x_0 is already a reduced grid diagram with three vertical strips."""
    gd = normal_form(table.resolve("x_0"))
    assert gd.verticals == ("0", "10", "11")
    assert gd.horizontals == ("",)
    assert gd.fineness == 2
    assert gd.reduced


@pytest.mark.parametrize("axis", [Axis.VERTICAL, Axis.HORIZONTAL])
def test_subdivide_then_reduce_is_the_identity_operation(table: GeneratorTable, axis: Axis) -> None:
    """A global subdivision is undone by the reduction."""
    gd = to_grid_diagram(table.resolve("x_0"))
    finer = global_subdivide(gd, axis, 0)
    assert len(finer.preimages) > len(gd.preimages)
    assert reduce_grid(finer) == gd


def test_strip_errors(table: GeneratorTable) -> None:
    gd = to_grid_diagram(table.resolve("x_0"))
    with pytest.raises(StripNotFound):
        global_subdivide(gd, Axis.VERTICAL, 5)
    with pytest.raises(StripNotFound):
        global_reduce(gd, Axis.VERTICAL, "1")


def test_reduction_order_does_not_matter(table: GeneratorTable) -> None:
    """Random reduction schedules reach the same reduced diagram."""
    g = table.word_to_element(GroupWord.parse("x_0 y_1 C_0^-1"))
    gd = to_grid_diagram(g)
    for axis, index in ((Axis.VERTICAL, 0), (Axis.HORIZONTAL, 0), (Axis.VERTICAL, 1)):
        gd = global_subdivide(gd, axis, index)
    expected = reduce_grid(gd)
    for seed in range(20):
        assert reduce_grid(gd, random.Random(seed)) == expected


def test_equality_by_normal_form(table: GeneratorTable) -> None:
    """Different words for one element share the canonical key."""
    x0 = table.resolve("x_0")
    assert canonical_key(compose(x0, inverse(x0))) == IDENTITY_KEY
    assert equals(identity(), table.word_to_element(GroupWord.parse("y_1 y_1^-1")))
    assert not equals(x0, table.resolve("y_0"))


def test_length_lower_bounds(table: GeneratorTable) -> None:
    """A rectangle of size 16 certifies length 2, size 17 certifies 3."""
    assert rect_lower_bound(DyadicRect("0" * 8, "0" * 8)) == 2
    assert rect_lower_bound(DyadicRect("0" * 9, "0" * 8)) == 3
    assert length_lower_bound(table.resolve("x_0")) == 1
    assert length_lower_bound(identity()) == 0


def test_origin_rects_prefer_tall_shapes() -> None:
    assert list(origin_rects(2)) == [
        DyadicRect("", ""),
        DyadicRect("0", ""),
        DyadicRect("", "0"),
        DyadicRect("00", ""),
        DyadicRect("0", "0"),
        DyadicRect("", "00"),
    ]


def test_essential_origin(table: GeneratorTable) -> None:
    """x_0 keeps the left half whole; y_0 keeps the bottom half whole."""
    x0_pair, x0_rect = find_essential_origin(table.resolve("x_0"))
    assert x0_rect == DyadicRect("0", "")
    assert preimage_of(x0_pair, x0_rect) == DyadicRect("00", "")
    assert is_essential(x0_pair, x0_rect) is not None

    _, y0_rect = find_essential_origin(table.resolve("y_0"))
    assert y0_rect == DyadicRect("", "0")

    with pytest.raises(NoEssentialOrigin):
        find_essential_origin(identity())


def test_check_essential_conditions(table: GeneratorTable) -> None:
    """Both reduction conditions are reported with the congruent neighbours."""
    x0 = table.resolve("x_0")
    witness = check_essential(x0, DyadicRect("10", ""))
    assert witness.rv == DyadicRect("11", "")
    assert witness.rh is None
    assert not witness.horizontal_reducible
    with pytest.raises(RectNotInRange):
        check_essential(x0, DyadicRect("00", ""))

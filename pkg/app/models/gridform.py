"""Grid diagrams and the reduced grid diagram normal form.

A grid diagram is a pattern pair whose range is a full product grid
``{(v, h)}``. Global subdivisions and reductions act on whole strips; the
fully reduced grid diagram of an element is unique, so its serialization is a
canonical key for equality.
"""

import logging
import math
import random
from collections.abc import Iterable
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from app.core.config import settings
from app.core.errors import NoEssentialOrigin, RectNotInRange, StripNotFound
from app.models.cantor import (
    Axis,
    DyadicRect,
    Pattern,
    format_rect,
    parent,
    rect_size,
    sibling,
    suffix_below,
)
from app.models.element import (
    Element,
    format_element,
    identity,
    is_identity,
    preimage_of,
    reduce_pair,
    with_range_rect,
)

logger = logging.getLogger(__name__)


def interval_partition(words: Iterable[str]) -> tuple[str, ...]:
    """Return the coarsest one-dimensional dyadic partition refining every word.

    The result lists the leaves of the smallest full binary tree that has each
    input word as a node.
    """
    nodes = {""}
    for w in words:
        for k in range(1, len(w) + 1):
            prefix = w[:k]
            nodes.add(prefix)
            nodes.add(prefix[:-1] + ("1" if prefix[-1] == "0" else "0"))
    return tuple(sorted(n for n in nodes if n + "0" not in nodes))


def is_interval_partition(words: Iterable[str]) -> bool:
    words = list(words)
    if len(set(words)) != len(words):
        return False
    if sum(Fraction(1, 1 << len(w)) for w in words) != 1:
        return False
    ordered = sorted(words)
    return all(not b.startswith(a) for a, b in zip(ordered, ordered[1:]))


def is_grid_pattern(p: Pattern | Iterable[DyadicRect]) -> bool:
    """Return True if the rectangles are exactly the product ``V x H`` of two partitions."""
    rects = set(p)
    verticals = {r.w1 for r in rects}
    horizontals = {r.w2 for r in rects}
    if len(rects) != len(verticals) * len(horizontals):
        return False
    return is_interval_partition(verticals) and is_interval_partition(horizontals)


@dataclass(frozen=True)
class GridDiagram:
    """An element whose range pattern is a product grid.

    Attributes:
        verticals: Words of the vertical strips (first coordinate), sorted.
        horizontals: Words of the horizontal strips (second coordinate), sorted.
        preimages: Domain rectangle of each grid cell ``(v, h)``.
    """

    verticals: tuple[str, ...]
    horizontals: tuple[str, ...]
    preimages: dict[DyadicRect, DyadicRect] = field(hash=False)

    @property
    def element(self) -> Element:
        """The diagram as an element, numbered by range cell order."""
        return Element(
            tuple(
                (self.preimages[DyadicRect(v, h)], DyadicRect(v, h))
                for v in self.verticals
                for h in self.horizontals
            )
        )

    def strips(self, axis: Axis) -> tuple[str, ...]:
        return self.verticals if axis is Axis.VERTICAL else self.horizontals

    @property
    def reduced(self) -> bool:
        return not reduction_candidates(self)

    @property
    def fineness(self) -> int:
        return max(map(len, self.verticals)) + max(map(len, self.horizontals))

    def serialize(self) -> str:
        return format_element(self.element)


def to_grid_diagram(g: Element) -> GridDiagram:
    """Refine the range of ``g`` to the coarsest product grid covering it."""
    verticals = interval_partition(r.w1 for _, r in g.pairs)
    horizontals = interval_partition(r.w2 for _, r in g.pairs)
    preimages: dict[DyadicRect, DyadicRect] = {}
    index = g.ran_index
    for v in verticals:
        for h in horizontals:
            cell = DyadicRect(v, h)
            idx = next(index.containing(cell))
            d, r = g.pairs[idx]
            preimages[cell] = d.extend(*suffix_below(r, cell))
    return GridDiagram(verticals, horizontals, preimages)


def global_subdivide(gd: GridDiagram, axis: Axis, strip_index: int) -> GridDiagram:
    """Split every cell of one strip along ``axis``.

    Raises:
        StripNotFound: If ``strip_index`` does not name a strip.
    """
    strips = gd.strips(axis)
    if not 0 <= strip_index < len(strips):
        raise StripNotFound(f"no {axis.name.lower()} strip at index {strip_index}")
    word = strips[strip_index]
    preimages = dict(gd.preimages)
    for cell, pre in gd.preimages.items():
        if cell.word(axis) != word:
            continue
        del preimages[cell]
        for bit in "01":
            if axis is Axis.VERTICAL:
                preimages[DyadicRect(cell.w1 + bit, cell.w2)] = DyadicRect(pre.w1 + bit, pre.w2)
            else:
                preimages[DyadicRect(cell.w1, cell.w2 + bit)] = DyadicRect(pre.w1, pre.w2 + bit)
    new_strips = tuple(sorted([*strips[:strip_index], word + "0", word + "1", *strips[strip_index + 1 :]]))
    if axis is Axis.VERTICAL:
        return GridDiagram(new_strips, gd.horizontals, preimages)
    return GridDiagram(gd.verticals, new_strips, preimages)


def _cell(axis: Axis, strip: str, cross: str) -> DyadicRect:
    return DyadicRect(strip, cross) if axis is Axis.VERTICAL else DyadicRect(cross, strip)


def can_reduce(gd: GridDiagram, axis: Axis, word: str) -> bool:
    """Return True if the sibling strips ``word+0`` and ``word+1`` merge.

    The merge is allowed when, on every cell of the merged strip, the inverse
    map is a single prefix transport.
    """
    strips = set(gd.strips(axis))
    if word + "0" not in strips or word + "1" not in strips:
        return False
    for cross in gd.strips(axis.other):
        low = gd.preimages[_cell(axis, word + "0", cross)]
        high = gd.preimages[_cell(axis, word + "1", cross)]
        low_word = low.word(axis)
        if not low_word or low_word[-1] != "0" or sibling(low, axis) != high:
            return False
    return True


def reduction_candidates(gd: GridDiagram) -> list[tuple[Axis, str]]:
    out = []
    for axis in (Axis.VERTICAL, Axis.HORIZONTAL):
        for w in gd.strips(axis):
            if w.endswith("0") and can_reduce(gd, axis, w[:-1]):
                out.append((axis, w[:-1]))
    return out


def global_reduce(gd: GridDiagram, axis: Axis, word: str) -> GridDiagram:
    """Merge the sibling strips below ``word``.

    Raises:
        StripNotFound: If the two strips do not exist or do not merge.
    """
    if not can_reduce(gd, axis, word):
        raise StripNotFound(f"strips below {word or '-'} do not reduce along {axis.name.lower()}")
    preimages = dict(gd.preimages)
    for cross in gd.strips(axis.other):
        low_cell = _cell(axis, word + "0", cross)
        low = preimages.pop(low_cell)
        del preimages[_cell(axis, word + "1", cross)]
        merged = parent(low, axis)
        assert merged is not None
        preimages[_cell(axis, word, cross)] = merged
    strips = tuple(sorted({*gd.strips(axis)} - {word + "0", word + "1"} | {word}))
    if axis is Axis.VERTICAL:
        return GridDiagram(strips, gd.horizontals, preimages)
    return GridDiagram(gd.verticals, strips, preimages)


def reduce_grid(gd: GridDiagram, rng: random.Random | None = None) -> GridDiagram:
    """Apply global reductions until none applies.

    Args:
        gd: A grid diagram.
        rng: When given, each step picks a random applicable reduction instead
            of the first one in canonical order.

    Returns:
        The reduced grid diagram.
    """
    steps = 0
    while True:
        candidates = reduction_candidates(gd)
        if not candidates:
            break
        axis, word = rng.choice(candidates) if rng is not None else candidates[0]
        gd = global_reduce(gd, axis, word)
        steps += 1
    if steps:
        logger.debug("grid reduced", extra={"steps": steps, "cells": len(gd.preimages)})
    return gd


@lru_cache(maxsize=settings.NORMAL_FORM_CACHE_SIZE)
def normal_form(g: Element) -> GridDiagram:
    """Return the unique reduced grid diagram of ``g`` (memoized)."""
    return reduce_grid(to_grid_diagram(reduce_pair(g)))


def canonical_key(g: Element) -> str:
    return normal_form(g).serialize()


def equals(f: Element, g: Element) -> bool:
    return canonical_key(f) == canonical_key(g)


def element_fineness(g: Element) -> int:
    return normal_form(g).fineness


def length_lower_bound(g: Element) -> int:
    """Word-length lower bound ``ceil(fineness / 8)``."""
    return math.ceil(element_fineness(g) / 8)


def rect_lower_bound(r: DyadicRect) -> int:
    """Word-length lower bound ``ceil(size / 8)`` carried by an essential rectangle."""
    return math.ceil(rect_size(r) / 8)


@dataclass(frozen=True)
class EssentialWitness:
    """Outcome of the two reduction conditions on a range rectangle.

    Attributes:
        rect: The tested rectangle of the range pattern.
        rv: Congruent vertical neighbour, if ``w1`` is non-empty.
        rh: Congruent horizontal neighbour, if ``w2`` is non-empty.
        vertical_reducible: Whether condition (1) holds.
        horizontal_reducible: Whether condition (2) holds.
    """

    rect: DyadicRect
    rv: DyadicRect | None
    rh: DyadicRect | None
    vertical_reducible: bool
    horizontal_reducible: bool

    @property
    def essential(self) -> bool:
        return not (self.vertical_reducible or self.horizontal_reducible)


def check_essential(g: Element, r: DyadicRect) -> EssentialWitness:
    """Evaluate both reduction conditions for a range rectangle of ``g``.

    Raises:
        RectNotInRange: If ``r`` is not a rectangle of the range pattern.
    """
    if r not in g.ran_pattern:
        raise RectNotInRange(f"{format_rect(r)} is not a rectangle of the range pattern")
    reducible = {}
    for axis in (Axis.VERTICAL, Axis.HORIZONTAL):
        up = parent(r, axis)
        reducible[axis] = up is not None and preimage_of(g, up) is not None
    return EssentialWitness(
        rect=r,
        rv=sibling(r, Axis.VERTICAL),
        rh=sibling(r, Axis.HORIZONTAL),
        vertical_reducible=reducible[Axis.VERTICAL],
        horizontal_reducible=reducible[Axis.HORIZONTAL],
    )


def is_essential(g: Element, r: DyadicRect) -> EssentialWitness | None:
    """Return a witness if ``r`` is an essential rectangle of the pair ``g``, else None."""
    witness = check_essential(g, r)
    return witness if witness.essential else None


def origin_rects(max_size: int) -> Iterable[DyadicRect]:
    """Origin rectangles by increasing size, taller-than-wide shapes first."""
    for s in range(max_size + 1):
        for a in range(s, -1, -1):
            yield DyadicRect("0" * a, "0" * (s - a))


def find_essential_origin(g: Element) -> tuple[Element, DyadicRect]:
    """Choose a pair for ``g`` whose origin range rectangle is essential.

    The largest origin rectangle on which ``g^-1`` is one transport is kept
    whole by some reduced pair, and it cannot be coarsened further.

    Raises:
        NoEssentialOrigin: If ``g`` is the identity.
    """
    if is_identity(reduce_pair(g)):
        raise NoEssentialOrigin("the identity has no essential rectangle")
    bound = max(rect_size(r) for _, r in g.pairs)
    for rect in origin_rects(bound):
        if rect_size(rect) == 0:
            continue
        if preimage_of(g, rect) is not None:
            pair = with_range_rect(reduce_pair(g), rect)
            if is_essential(pair, rect) is None:
                raise NoEssentialOrigin(f"origin rectangle {format_rect(rect)} is not essential")
            return pair, rect
    raise NoEssentialOrigin("no origin rectangle is transported")


IDENTITY_KEY = format_element(identity())

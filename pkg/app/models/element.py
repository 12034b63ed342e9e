"""Elements of 2V as pairs of numbered dyadic patterns.

An element is a list of pairs ``(dom_i, ran_i)``; the map sends
``(dom_i.w1 z, dom_i.w2 z')`` to ``(ran_i.w1 z, ran_i.w2 z')``. Products
follow the right-action convention: ``compose(f, g)`` applies ``f`` first.
"""

import heapq
import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

from app.core.errors import InvalidElement, ParseError, PrefixTooShort, RectNotInRange
from app.models.cantor import (
    TRIVIAL_RECT,
    Axis,
    DyadicRect,
    Pattern,
    RectIndex,
    children,
    contains,
    format_rect,
    intersection,
    overlaps,
    parent,
    parse_rect,
    sibling,
    suffix_below,
    validate_partition,
)

logger = logging.getLogger(__name__)

Pair = tuple[DyadicRect, DyadicRect]


class PrefixPoint(NamedTuple):
    """Finite prefixes standing for the cylinder ``{u1 z} x {u2 z'}``."""

    u1: str
    u2: str


@dataclass(frozen=True)
class Element:
    """A group element given by a numbered pattern pair.

    Attributes:
        pairs: ``(dom, ran)`` rectangles in numbering order.
        n: Dimension tag. Only 2 is supported by the algorithms.
    """

    pairs: tuple[Pair, ...]
    n: int = 2

    @classmethod
    def of(cls, pairs: Iterable[Pair]) -> "Element":
        """Build an element from unchecked pairs.

        Raises:
            InvalidElement: If either side is not an exact partition.
        """
        pairs = tuple(pairs)
        for side, rects in (("domain", [d for d, _ in pairs]), ("range", [r for _, r in pairs])):
            report = validate_partition(rects)
            if not report.ok:
                raise InvalidElement(f"{side} is not a partition: {report.message}")
        return cls(pairs)

    @cached_property
    def dom_index(self) -> RectIndex:
        return RectIndex(d for d, _ in self.pairs)

    @cached_property
    def ran_index(self) -> RectIndex:
        return RectIndex(r for _, r in self.pairs)

    @cached_property
    def swapped_pairs(self) -> tuple[Pair, ...]:
        return tuple((r, d) for d, r in self.pairs)

    @property
    def dom_pattern(self) -> Pattern:
        return Pattern(tuple(sorted(d for d, _ in self.pairs)))

    @property
    def ran_pattern(self) -> Pattern:
        return Pattern(tuple(sorted(r for _, r in self.pairs)))

    def __len__(self) -> int:
        return len(self.pairs)

    def __str__(self) -> str:
        return format_element(self)


def identity() -> Element:
    return Element(((TRIVIAL_RECT, TRIVIAL_RECT),))


def evaluate(g: Element, p: PrefixPoint) -> PrefixPoint:
    """Evaluate ``g`` on a cylinder given by finite prefixes.

    Args:
        g: The element.
        p: The prefix point; it must lie inside a single domain rectangle.

    Returns:
        The image prefix point.

    Raises:
        PrefixTooShort: If no domain rectangle contains the cylinder of ``p``.
    """
    cylinder = DyadicRect(p.u1, p.u2)
    for idx in g.dom_index.containing(cylinder):
        d, r = g.pairs[idx]
        s1, s2 = suffix_below(d, cylinder)
        return PrefixPoint(r.w1 + s1, r.w2 + s2)
    raise PrefixTooShort(f"point {format_rect(cylinder)} is not inside one domain rectangle")


def compose(f: Element, g: Element) -> Element:
    """Return the element "f then g".

    The range of ``f`` is refined against the domain of ``g``; each piece is
    pulled back through ``f`` and pushed forward through ``g``.
    """
    pairs: list[Pair] = []
    index = g.dom_index
    for d, r in f.pairs:
        for idx in index.overlapping(r):
            s, t = g.pairs[idx]
            piece = intersection(r, s)
            assert piece is not None
            pre = d.extend(*suffix_below(r, piece))
            img = t.extend(*suffix_below(s, piece))
            pairs.append((pre, img))
    pairs.sort()
    return Element(tuple(pairs))


def inverse(g: Element) -> Element:
    return Element(tuple((r, d) for d, r in g.pairs), g.n)


def product(elements: Sequence[Element]) -> Element:
    """Fold ``compose`` left to right, reducing after every step."""
    result = identity()
    for e in elements:
        result = reduce_pair(compose(result, e))
    return result


def power(g: Element, k: int) -> Element:
    """Return ``g**k`` by repeated squaring."""
    if k < 0:
        g, k = inverse(g), -k
    result = identity()
    base = g
    while k:
        if k & 1:
            result = reduce_pair(compose(result, base))
        k >>= 1
        if k:
            base = reduce_pair(compose(base, base))
    return result


def _uniform_transport(index: RectIndex, pairs: Sequence[Pair], rect: DyadicRect) -> DyadicRect | None:
    target: DyadicRect | None = None
    for idx in index.overlapping(rect):
        src, dst = pairs[idx]
        piece = intersection(rect, src)
        assert piece is not None
        img = dst.extend(*suffix_below(src, piece))
        t1, t2 = suffix_below(rect, piece)
        if not (img.w1.endswith(t1) and img.w2.endswith(t2)):
            return None
        candidate = DyadicRect(img.w1[: len(img.w1) - len(t1)], img.w2[: len(img.w2) - len(t2)])
        if target is None:
            target = candidate
        elif candidate != target:
            return None
    return target


def image_of(g: Element, rect: DyadicRect) -> DyadicRect | None:
    """Return the image of ``rect`` if ``g`` acts on it as one prefix transport.

    ``rect`` may be cut by several domain rectangles; the answer is a
    rectangle only when every piece is moved by the same prefix swap.
    """
    return _uniform_transport(g.dom_index, g.pairs, rect)


def preimage_of(g: Element, rect: DyadicRect) -> DyadicRect | None:
    """Return the preimage of ``rect`` when it is a single transported rectangle."""
    return _uniform_transport(g.ran_index, g.swapped_pairs, rect)


def is_identity(g: Element) -> bool:
    return all(d == r for d, r in g.pairs)


def is_identity_on(g: Element, rect: DyadicRect) -> bool:
    return image_of(g, rect) == rect


def transpose(g: Element) -> Element:
    """Conjugate ``g`` by the swap of the two coordinates."""
    pairs = ((DyadicRect(d.w2, d.w1), DyadicRect(r.w2, r.w1)) for d, r in g.pairs)
    return Element(tuple(sorted(pairs)), g.n)


def _try_merge(by_dom: dict[DyadicRect, DyadicRect], d: DyadicRect, r: DyadicRect, axis: Axis) -> Pair | None:
    dw, rw = d.word(axis), r.word(axis)
    if not dw or not rw or dw[-1] != rw[-1]:
        return None
    sd = sibling(d, axis)
    if sd is None or by_dom.get(sd) != sibling(r, axis):
        return None
    pd, pr = parent(d, axis), parent(r, axis)
    assert pd is not None
    assert pr is not None
    del by_dom[d]
    del by_dom[sd]
    by_dom[pd] = pr
    return pd, pr


def reduce_pair(g: Element) -> Element:
    """Merge matched sibling pairs until no reduction applies.

    Rectangles are visited in lexicographic order of their domain; merged
    parents are queued again. The result is a reduced pair for ``g``, not a
    canonical one.
    """
    by_dom = {d: r for d, r in g.pairs}
    heap = list(by_dom)
    heapq.heapify(heap)
    while heap:
        d = heapq.heappop(heap)
        r = by_dom.get(d)
        if r is None:
            continue
        for axis in (Axis.VERTICAL, Axis.HORIZONTAL):
            merged = _try_merge(by_dom, d, r, axis)
            if merged is not None:
                heapq.heappush(heap, merged[0])
                break
    if len(by_dom) == len(g.pairs):
        return g
    return Element(tuple(sorted(by_dom.items())), g.n)


def moved_rects(g: Element) -> list[DyadicRect]:
    """Domain rectangles of a reduced pair on which ``g`` is not the identity."""
    return [d for d, r in reduce_pair(g).pairs if d != r]


def support_disjoint(f: Element, g: Element, depth: int | None = None) -> bool:
    """Return True if the supports of ``f`` and ``g`` do not overlap.

    Args:
        f: First element.
        g: Second element.
        depth: Refinement depth of the comparison. The answer is the same for
            every depth at least the fineness of both elements, so it defaults
            to that.

    Returns:
        Whether the closures of the moved sets are disjoint.
    """
    moved_f = moved_rects(f)
    moved_g = RectIndex(moved_rects(g))
    if depth is not None:
        logger.debug("support check", extra={"depth": depth, "moved": len(moved_f)})
    return all(next(moved_g.overlapping(r), None) is None for r in moved_f)


def _carve(d: DyadicRect, s: DyadicRect, r: DyadicRect) -> list[Pair]:
    """Split pair ``(d, s)`` into pairs covering ``s`` minus ``r``."""
    out: list[Pair] = []
    while not contains(r, s):
        if len(s.w1) < len(r.w1):
            axis, bit = Axis.VERTICAL, r.w1[len(s.w1)]
        else:
            axis, bit = Axis.HORIZONTAL, r.w2[len(s.w2)]
        (cs0, cs1), (cd0, cd1) = children(s, axis), children(d, axis)
        if bit == "0":
            out.append((cd1, cs1))
            d, s = cd0, cs0
        else:
            out.append((cd0, cs0))
            d, s = cd1, cs1
    return out


def with_range_rect(g: Element, r: DyadicRect) -> Element:
    """Return a pair for ``g`` whose range pattern contains ``r``.

    Raises:
        RectNotInRange: If ``g`` does not map a single rectangle onto ``r``.
    """
    source = preimage_of(g, r)
    if source is None:
        raise RectNotInRange(f"{format_rect(r)} is not the image of a single rectangle")
    pairs: list[Pair] = [(source, r)]
    for d, s in g.pairs:
        if not overlaps(s, r):
            pairs.append((d, s))
        elif not contains(r, s):
            pairs.extend(_carve(d, s, r))
    pairs.sort()
    return Element(tuple(pairs), g.n)


# Text serialization


def format_element(g: Element) -> str:
    lines = [f"n={g.n} m={len(g.pairs)}"]
    lines.extend(f"{format_rect(d)} -> {format_rect(r)}" for d, r in g.pairs)
    return "\n".join(lines)


def parse_element(text: str) -> Element:
    """Parse the ``n=2 m=<k>`` serialization.

    Raises:
        ParseError: On a malformed header or pair line.
        InvalidElement: If the pairs do not form an element.
    """
    lines = [line.strip() for line in text.strip().splitlines() if line.strip()]
    if not lines:
        raise ParseError("empty element text")
    header = dict(field.split("=", 1) for field in lines[0].split() if "=" in field)
    try:
        n, m = int(header["n"]), int(header["m"])
    except (KeyError, ValueError):
        raise ParseError(f"bad element header {lines[0]!r}")
    if n != 2:
        raise ParseError(f"dimension n={n} is not supported")
    if len(lines) - 1 != m:
        raise ParseError(f"header announces m={m} but {len(lines) - 1} pairs follow")
    pairs = []
    for line in lines[1:]:
        if "->" not in line:
            raise ParseError(f"bad pair line {line!r}")
        left, right = line.split("->", 1)
        pairs.append((parse_rect(left), parse_rect(right)))
    return Element.of(pairs)

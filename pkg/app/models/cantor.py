"""Binary words, dyadic rectangles and exact partitions of the Cantor square.

A rectangle is a pair of binary words ``(w1, w2)`` standing for the cylinder
``{w1 z} x {w2 z'}``. All geometry is prefix arithmetic on these words; no
floating point is involved anywhere.
"""

from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property
from typing import Generic, NamedTuple, TypeVar

from app.core.errors import ParseError, RectNotInPattern

T = TypeVar("T")

EMPTY_TOKEN = "-"


class Axis(str, Enum):
    """Direction of a subdivision.

    A vertical cut halves the first coordinate, a horizontal cut the second.
    """

    VERTICAL = "v"
    HORIZONTAL = "h"

    @property
    def other(self) -> "Axis":
        return Axis.HORIZONTAL if self is Axis.VERTICAL else Axis.VERTICAL


class DyadicRect(NamedTuple):
    """A dyadic sub-rectangle of the unit square named by two binary words."""

    w1: str
    w2: str

    def word(self, axis: Axis) -> str:
        return self.w1 if axis is Axis.VERTICAL else self.w2

    def extend(self, s1: str, s2: str) -> "DyadicRect":
        return DyadicRect(self.w1 + s1, self.w2 + s2)

    def __str__(self) -> str:
        return format_rect(self)


TRIVIAL_RECT = DyadicRect("", "")


def rect_size(r: DyadicRect) -> int:
    """Return the size ``|w1| + |w2|`` of a rectangle."""
    return len(r.w1) + len(r.w2)


def measure(r: DyadicRect) -> Fraction:
    return Fraction(1, 1 << rect_size(r))


def comparable(a: str, b: str) -> bool:
    """Return True if one word is a prefix of the other."""
    return a.startswith(b) or b.startswith(a)


def overlaps(r: DyadicRect, s: DyadicRect) -> bool:
    return comparable(r.w1, s.w1) and comparable(r.w2, s.w2)


def contains(outer: DyadicRect, inner: DyadicRect) -> bool:
    return inner.w1.startswith(outer.w1) and inner.w2.startswith(outer.w2)


def intersection(r: DyadicRect, s: DyadicRect) -> DyadicRect | None:
    """Return the intersection of two rectangles, or None when they are disjoint."""
    if not overlaps(r, s):
        return None
    return DyadicRect(max(r.w1, s.w1, key=len), max(r.w2, s.w2, key=len))


def suffix_below(outer: DyadicRect, inner: DyadicRect) -> tuple[str, str]:
    """Return the suffixes carrying ``outer`` down to ``inner``."""
    return inner.w1[len(outer.w1) :], inner.w2[len(outer.w2) :]


def children(r: DyadicRect, axis: Axis) -> tuple[DyadicRect, DyadicRect]:
    if axis is Axis.VERTICAL:
        return DyadicRect(r.w1 + "0", r.w2), DyadicRect(r.w1 + "1", r.w2)
    return DyadicRect(r.w1, r.w2 + "0"), DyadicRect(r.w1, r.w2 + "1")


def parent(r: DyadicRect, axis: Axis) -> DyadicRect | None:
    """Return the rectangle ``r`` was cut from along ``axis``, if any."""
    if axis is Axis.VERTICAL:
        return DyadicRect(r.w1[:-1], r.w2) if r.w1 else None
    return DyadicRect(r.w1, r.w2[:-1]) if r.w2 else None


def sibling(r: DyadicRect, axis: Axis) -> DyadicRect | None:
    """Return the congruent neighbour sharing ``parent(r, axis)``."""
    word = r.word(axis)
    if not word:
        return None
    flipped = word[:-1] + ("1" if word[-1] == "0" else "0")
    return DyadicRect(flipped, r.w2) if axis is Axis.VERTICAL else DyadicRect(r.w1, flipped)


def is_origin_rect(r: DyadicRect) -> bool:
    return "1" not in r.w1 and "1" not in r.w2


class _WordTrie(Generic[T]):
    """Binary trie keyed by words, storing a list of values per node."""

    __slots__ = ("children", "values")

    def __init__(self) -> None:
        self.children: dict[str, _WordTrie[T]] = {}
        self.values: list[T] = []

    def node(self, word: str, create: bool = False) -> "_WordTrie[T] | None":
        node: _WordTrie[T] | None = self
        for ch in word:
            assert node is not None
            nxt = node.children.get(ch)
            if nxt is None:
                if not create:
                    return None
                nxt = node.children[ch] = _WordTrie()
            node = nxt
        return node

    def prefixes(self, word: str) -> Iterator[T]:
        """Yield the values stored at prefixes of ``word`` (``word`` included)."""
        node: _WordTrie[T] | None = self
        for ch in word:
            assert node is not None
            yield from node.values
            node = node.children.get(ch)
            if node is None:
                return
        assert node is not None
        yield from node.values

    def comparable(self, word: str) -> Iterator[T]:
        """Yield the values stored at words prefix-comparable with ``word``."""
        node: _WordTrie[T] | None = self
        for ch in word:
            assert node is not None
            yield from node.values
            node = node.children.get(ch)
            if node is None:
                return
        assert node is not None
        stack = [node]
        while stack:
            current = stack.pop()
            yield from current.values
            stack.extend(current.children.values())


class RectIndex:
    """Overlap index over a list of rectangles.

    Two nested tries, first on ``w1`` and then on ``w2``, so that a query only
    visits rectangles whose words are prefix-comparable with the query.
    """

    def __init__(self, rects: Iterable[DyadicRect] = ()) -> None:
        self.rects: list[DyadicRect] = []
        self._outer: _WordTrie[_WordTrie[int]] = _WordTrie()
        for r in rects:
            self.add(r)

    def add(self, r: DyadicRect) -> int:
        idx = len(self.rects)
        self.rects.append(r)
        node = self._outer.node(r.w1, create=True)
        assert node is not None
        if not node.values:
            node.values.append(_WordTrie())
        inner = node.values[0].node(r.w2, create=True)
        assert inner is not None
        inner.values.append(idx)
        return idx

    def overlapping(self, r: DyadicRect) -> Iterator[int]:
        """Yield indices of stored rectangles that overlap ``r``."""
        for inner in self._outer.comparable(r.w1):
            yield from inner.comparable(r.w2)

    def containing(self, r: DyadicRect) -> Iterator[int]:
        """Yield indices of stored rectangles that contain ``r``."""
        for inner in self._outer.prefixes(r.w1):
            yield from inner.prefixes(r.w2)

    def __len__(self) -> int:
        return len(self.rects)


@dataclass(frozen=True)
class PartitionReport:
    """Outcome of a partition check.

    Attributes:
        ok: Whether the rectangles form an exact partition.
        total_measure: Sum of the rectangle areas.
        overlap: The first overlapping pair found, if any.
    """

    ok: bool
    total_measure: Fraction
    overlap: tuple[DyadicRect, DyadicRect] | None = None

    @property
    def message(self) -> str:
        if self.ok:
            return "ok"
        if self.overlap is not None:
            a, b = self.overlap
            return f"overlap between {format_rect(a)} and {format_rect(b)}"
        return f"total measure {self.total_measure}"


def validate_partition(rects: Iterable[DyadicRect]) -> PartitionReport:
    """Check that a set of rectangles is an exact partition of the square.

    Args:
        rects: Candidate rectangles.

    Returns:
        A report naming the first overlapping pair or the measure deficit.
    """
    index = RectIndex()
    total = Fraction(0)
    for r in rects:
        for idx in index.overlapping(r):
            return PartitionReport(False, total + measure(r), (index.rects[idx], r))
        index.add(r)
        total += measure(r)
    return PartitionReport(total == 1, total)


@dataclass(frozen=True)
class Pattern:
    """A finite exact partition of the square, stored in canonical order.

    Use ``Pattern.of`` for unchecked input; the plain constructor trusts its
    argument to be sorted and valid.
    """

    rects: tuple[DyadicRect, ...]

    @classmethod
    def of(cls, rects: Iterable[DyadicRect]) -> "Pattern":
        """Build a pattern from arbitrary rectangles, validating the partition.

        Raises:
            ParseError: If the rectangles do not partition the square.
        """
        ordered = tuple(sorted(rects))
        report = validate_partition(ordered)
        if not report.ok:
            raise ParseError(f"not a partition: {report.message}")
        return cls(ordered)

    @classmethod
    def trivial(cls) -> "Pattern":
        return cls((TRIVIAL_RECT,))

    def __iter__(self) -> Iterator[DyadicRect]:
        return iter(self.rects)

    def __len__(self) -> int:
        return len(self.rects)

    def __contains__(self, r: object) -> bool:
        return r in self._members

    @cached_property
    def _members(self) -> frozenset[DyadicRect]:
        return frozenset(self.rects)

    def __str__(self) -> str:
        return format_pattern(self)


def subdivide(p: Pattern, r: DyadicRect, axis: Axis) -> Pattern:
    """Replace ``r`` by its two children along ``axis``.

    Raises:
        RectNotInPattern: If ``r`` is not a rectangle of ``p``.
    """
    if r not in p:
        raise RectNotInPattern(f"{format_rect(r)} is not a rectangle of the pattern")
    rest = [s for s in p.rects if s != r]
    return Pattern(tuple(sorted([*rest, *children(r, axis)])))


def common_refinement(p: Pattern, q: Pattern) -> Pattern:
    """Return the coarsest pattern refining both ``p`` and ``q``."""
    index = RectIndex(q.rects)
    pieces: set[DyadicRect] = set()
    for r in p.rects:
        for idx in index.overlapping(r):
            piece = intersection(r, index.rects[idx])
            assert piece is not None
            pieces.add(piece)
    return Pattern(tuple(sorted(pieces)))


def refines(p: Pattern, q: Pattern) -> bool:
    """Return True if every rectangle of ``p`` lies inside a rectangle of ``q``."""
    index = RectIndex(q.rects)
    return all(next(index.containing(r), None) is not None for r in p.rects)


def fineness(p: Pattern) -> int:
    return max(rect_size(r) for r in p.rects)


def rect_at_origin(p: Pattern | Iterable[DyadicRect]) -> DyadicRect:
    """Return the rectangle containing the point with all-zero coordinates."""
    for r in p:
        if is_origin_rect(r):
            return r
    raise RectNotInPattern("no rectangle contains the origin")


# Text serialization


def format_word(w: str) -> str:
    return w or EMPTY_TOKEN


def parse_word(token: str) -> str:
    token = token.strip()
    if token == EMPTY_TOKEN:
        return ""
    if not token or set(token) - {"0", "1"}:
        raise ParseError(f"bad binary word {token!r}")
    return token


def format_rect(r: DyadicRect) -> str:
    return f"{format_word(r.w1)},{format_word(r.w2)}"


def parse_rect(text: str) -> DyadicRect:
    parts = text.split(",")
    if len(parts) != 2:
        raise ParseError(f"bad rectangle {text!r}: expected 'w1,w2'")
    return DyadicRect(parse_word(parts[0]), parse_word(parts[1]))


def format_pattern(p: Pattern) -> str:
    return "\n".join(format_rect(r) for r in p.rects)


def parse_pattern(text: str) -> Pattern:
    rects = [parse_rect(line) for line in text.splitlines() if line.strip()]
    return Pattern.of(rects)

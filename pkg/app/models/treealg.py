"""Colored binary trees and tree pairs.

A caret colored ``a`` cuts its rectangle vertically (first coordinate), a
caret colored ``b`` cuts it horizontally. The right vine of ``a`` carets is
the common range of every positive generator, which is what the
``P Pi Q^-1`` factorization is built on.
"""

import logging
from collections.abc import Iterator
from dataclasses import dataclass
from functools import cache
from typing import Literal

from app.core.errors import BudgetExceeded, MalformedWord, NotRealizable, ParseError
from app.models.cantor import TRIVIAL_RECT, Axis, DyadicRect, Pattern, children, contains, rect_size
from app.models.element import Element, is_identity, preimage_of, reduce_pair
from app.models.word import GroupWord, Letter, split_symbol

logger = logging.getLogger(__name__)

Color = Literal["a", "b"]

COLOR_AXIS: dict[str, Axis] = {"a": Axis.VERTICAL, "b": Axis.HORIZONTAL}


@dataclass(frozen=True)
class ColoredTree:
    """A binary tree whose internal nodes (carets) carry a color.

    A leaf has ``color`` None and no children.
    """

    color: Color | None = None
    left: "ColoredTree | None" = None
    right: "ColoredTree | None" = None

    @property
    def is_leaf(self) -> bool:
        return self.color is None

    @property
    def carets(self) -> int:
        if self.is_leaf:
            return 0
        assert self.left is not None
        assert self.right is not None
        return 1 + self.left.carets + self.right.carets

    @property
    def leaves(self) -> int:
        return self.carets + 1

    @property
    def depth(self) -> int:
        """Maximum number of carets on a branch."""
        if self.is_leaf:
            return 0
        assert self.left is not None
        assert self.right is not None
        return 1 + max(self.left.depth, self.right.depth)

    def __str__(self) -> str:
        return format_tree(self)


LEAF = ColoredTree()


def caret(color: Color, left: ColoredTree = LEAF, right: ColoredTree = LEAF) -> ColoredTree:
    return ColoredTree(color, left, right)


def right_vine(leaves: int) -> ColoredTree:
    """The all-``a`` right vine with ``leaves`` leaves."""
    tree = LEAF
    for _ in range(leaves - 1):
        tree = caret("a", LEAF, tree)
    return tree


def format_tree(t: ColoredTree) -> str:
    """Pre-order serialization: ``a(`` / ``b(`` open a caret, ``.`` is a leaf."""
    if t.is_leaf:
        return "."
    assert t.left is not None
    assert t.right is not None
    return f"{t.color}({format_tree(t.left)}{format_tree(t.right)})"


def parse_tree(text: str) -> ColoredTree:
    """Parse the pre-order serialization.

    Raises:
        ParseError: On unbalanced or unknown tokens.
    """
    text = "".join(text.split())
    pos = 0

    def node() -> ColoredTree:
        nonlocal pos
        if pos >= len(text):
            raise ParseError("unexpected end of tree text")
        ch = text[pos]
        if ch == ".":
            pos += 1
            return LEAF
        if ch in "ab" and text[pos + 1 : pos + 2] == "(":
            pos += 2
            left = node()
            right = node()
            if text[pos : pos + 1] != ")":
                raise ParseError(f"expected ')' at offset {pos}")
            pos += 1
            return ColoredTree(ch, left, right)  # type: ignore[arg-type]
        raise ParseError(f"unexpected {ch!r} at offset {pos}")

    tree = node()
    if pos != len(text):
        raise ParseError(f"trailing text at offset {pos}")
    return tree


def tree_leaf_rects(t: ColoredTree, root: DyadicRect = TRIVIAL_RECT) -> list[DyadicRect]:
    """Rectangles of the leaves of ``t`` in left-to-right order."""
    if t.is_leaf:
        return [root]
    assert t.left is not None
    assert t.right is not None
    low, high = children(root, COLOR_AXIS[t.color])  # type: ignore[index]
    return tree_leaf_rects(t.left, low) + tree_leaf_rects(t.right, high)


def tree_to_pattern(t: ColoredTree) -> Pattern:
    return Pattern(tuple(sorted(tree_leaf_rects(t))))


def _split_tree(region: DyadicRect, rects: list[DyadicRect]) -> ColoredTree:
    if rects == [region]:
        return LEAF
    for color, axis in COLOR_AXIS.items():
        if all(len(r.word(axis)) > len(region.word(axis)) for r in rects):
            low, high = children(region, axis)
            return ColoredTree(
                color,  # type: ignore[arg-type]
                _split_tree(low, [r for r in rects if contains(low, r)]),
                _split_tree(high, [r for r in rects if contains(high, r)]),
            )
    raise NotRealizable(f"no full cut line splits the region {region}")


def pattern_to_tree(p: Pattern) -> ColoredTree:
    """Recover a colored tree for a pattern, preferring vertical cuts.

    Raises:
        NotRealizable: If some region cannot be split by a full line.
    """
    return _split_tree(TRIVIAL_RECT, list(p.rects))


@dataclass(frozen=True)
class TreePair:
    """A pair of colored trees with a leaf bijection.

    Attributes:
        source: Tree of the domain pattern.
        target: Tree of the range pattern.
        permutation: ``permutation[i]`` is the target leaf receiving source leaf ``i``.
    """

    source: ColoredTree
    target: ColoredTree
    permutation: tuple[int, ...]

    def __post_init__(self) -> None:
        n = self.source.leaves
        if self.target.leaves != n or sorted(self.permutation) != list(range(n)):
            raise ParseError("tree pair leaf counts and permutation disagree")

    def __str__(self) -> str:
        perm = " ".join(map(str, self.permutation))
        return f"{format_tree(self.source)} {format_tree(self.target)} {perm}"


def tree_pair_to_element(tp: TreePair) -> Element:
    src = tree_leaf_rects(tp.source)
    tgt = tree_leaf_rects(tp.target)
    return Element(tuple(sorted((src[i], tgt[j]) for i, j in enumerate(tp.permutation))))


def element_to_tree_pair(g: Element) -> TreePair:
    """Build a (not necessarily minimal) tree pair from the patterns of ``g``."""
    source = pattern_to_tree(g.dom_pattern)
    target = pattern_to_tree(g.ran_pattern)
    src_pos = {r: i for i, r in enumerate(tree_leaf_rects(source))}
    tgt_pos = {r: i for i, r in enumerate(tree_leaf_rects(target))}
    perm = [0] * len(g.pairs)
    for d, r in g.pairs:
        perm[src_pos[d]] = tgt_pos[r]
    return TreePair(source, target, tuple(perm))


def _target_tree_search(g: Element, depth: int) -> ColoredTree | None:
    """Fewest-caret target tree of depth at most ``depth`` whose leaves ``g^-1`` transports."""

    @cache
    def best(region: DyadicRect) -> ColoredTree | None:
        if preimage_of(g, region) is not None:
            return LEAF
        if rect_size(region) >= depth:
            return None
        found: ColoredTree | None = None
        for color, axis in COLOR_AXIS.items():
            low, high = children(region, axis)
            left, right = best(low), best(high)
            if left is None or right is None:
                continue
            candidate = ColoredTree(color, left, right)  # type: ignore[arg-type]
            if found is None or candidate.carets < found.carets:
                found = candidate
        return found

    return best(TRIVIAL_RECT)


def minimal_pair(g: Element, budget: int) -> TreePair:
    """Find a tree pair of least target depth, then fewest carets.

    Args:
        g: The element.
        budget: Largest target depth to search.

    Returns:
        A minimal tree pair for ``g``.

    Raises:
        BudgetExceeded: If no representable target tree of depth up to
            ``budget`` has a realizable source.
    """
    g = reduce_pair(g)
    if is_identity(g):
        return TreePair(LEAF, LEAF, (0,))
    for depth in range(budget + 1):
        target = _target_tree_search(g, depth)
        if target is None:
            continue
        cells = tree_leaf_rects(target)
        preimages = [preimage_of(g, r) for r in cells]
        try:
            source = pattern_to_tree(Pattern(tuple(sorted(preimages))))  # type: ignore[arg-type]
        except NotRealizable:
            logger.warning("source pattern not realizable", extra={"depth": depth})
            continue
        src_pos = {r: i for i, r in enumerate(tree_leaf_rects(source))}
        perm = [0] * len(cells)
        for j, pre in enumerate(preimages):
            perm[src_pos[pre]] = j  # type: ignore[index]
        logger.debug("minimal pair found", extra={"depth": depth, "carets": target.carets})
        return TreePair(source, target, tuple(perm))
    raise BudgetExceeded(f"no minimal pair within target depth {budget}")


# P Pi Q^-1 factorization


def _spine(t: ColoredTree) -> tuple[list[ColoredTree], list[str]]:
    """Left subtrees hanging off the right spine, and the spine caret colors."""
    lefts: list[ColoredTree] = []
    colors: list[str] = []
    node = t
    while not node.is_leaf:
        assert node.left is not None
        assert node.right is not None
        lefts.append(node.left)
        colors.append(node.color)  # type: ignore[arg-type]
        node = node.right
    return lefts, colors


def vine_word(t: ColoredTree) -> GroupWord:
    """Positive word for the element mapping ``t`` onto the right vine.

    The word has the shape ``C_m1 ... C_mp W_i1 ... W_ir`` with the ``C``
    indices strictly increasing and the ``W`` indices non-decreasing, each
    ``W`` an ``A`` or ``B`` letter.
    """
    lefts, colors = _spine(t)
    letters = [Letter(f"C_{m}", 1) for m, color in enumerate(colors) if color == "b"]
    i = 0
    while i < len(lefts):
        sub = lefts[i]
        if sub.is_leaf:
            i += 1
            continue
        assert sub.left is not None
        assert sub.right is not None
        letters.append(Letter(f"{'A' if sub.color == 'a' else 'B'}_{i}", 1))
        lefts[i] = sub.left
        lefts.insert(i + 1, sub.right)
    return GroupWord(tuple(letters))


def permutation_word(perm: tuple[int, ...]) -> GroupWord:
    """Word on ``pi_k`` / ``pib_k`` moving vine leaf ``j`` to leaf ``perm[j]``."""
    n = len(perm)
    arr = list(perm)
    letters = []
    changed = True
    while changed:
        changed = False
        for k in range(n - 1):
            if arr[k] > arr[k + 1]:
                arr[k], arr[k + 1] = arr[k + 1], arr[k]
                symbol = f"pi_{k}" if k + 1 < n - 1 else f"pib_{k}"
                letters.append(Letter(symbol, 1))
                changed = True
    return GroupWord(tuple(letters))


def decompose_PPiQ(tp: TreePair) -> tuple[GroupWord, GroupWord, GroupWord]:  # noqa: N802
    """Factor a tree pair as ``P Pi Q^-1``.

    Returns:
        The words ``(P, Pi, Q)``; the element is ``P`` then ``Pi`` then ``Q^-1``.
    """
    return vine_word(tp.source), permutation_word(tp.permutation), vine_word(tp.target)


def extract_C_prefix(q: GroupWord) -> list[int]:  # noqa: N802
    """Return the indices of the maximal leading run of ``C`` letters.

    Raises:
        MalformedWord: If the word is not a positive word with a strictly
            increasing ``C`` prefix and no later ``C`` letters.
    """
    indices: list[int] = []
    in_prefix = True
    for symbol, exponent in q:
        base, index = split_symbol(symbol)
        if exponent != 1:
            raise MalformedWord(f"{symbol}^-1 in a positive word")
        if base == "C":
            if not in_prefix:
                raise MalformedWord(f"{symbol} after the C prefix")
            if indices and index <= indices[-1]:
                raise MalformedWord("C prefix indices are not strictly increasing")
            indices.append(index)
        else:
            in_prefix = False
    return indices


def iter_trees(carets: int) -> Iterator[ColoredTree]:
    """All colored trees with exactly ``carets`` carets."""
    if carets == 0:
        yield LEAF
        return
    for left_carets in range(carets):
        for left in iter_trees(left_carets):
            for right in iter_trees(carets - 1 - left_carets):
                yield caret("a", left, right)
                yield caret("b", left, right)

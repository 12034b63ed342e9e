"""Word metric service: breadth-first search of the Cayley graph."""

import logging
from dataclasses import dataclass, field

from app.core.config import settings
from app.core.errors import NotWithinRadius, ResourceBudgetExceeded
from app.models.element import Element, compose, identity, inverse, reduce_pair
from app.models.gridform import canonical_key, length_lower_bound
from app.models.word import GroupWord, Letter
from app.schemas.certificates import LengthCertificate
from app.services.genset import GeneratorTable

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BallEntry:
    """A vertex of the explored ball.

    Attributes:
        distance: Exact word length.
        word: A geodesic witness.
        element: The element itself, kept reduced.
    """

    distance: int
    word: GroupWord
    element: Element


@dataclass
class BallTable:
    """Vertices within ``radius`` of the identity, keyed by normal form.

    Attributes:
        radius: Radius reached by the search.
        entries: Canonical key to entry, in discovery order.
        exhausted: Whether the last level produced no new vertex.
    """

    radius: int
    entries: dict[str, BallEntry] = field(default_factory=dict)
    exhausted: bool = False

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, key: str) -> bool:
        return key in self.entries

    def distance(self, g: Element) -> int | None:
        entry = self.entries.get(canonical_key(g))
        return entry.distance if entry is not None else None

    def sphere(self, distance: int) -> list[tuple[str, BallEntry]]:
        return [(k, e) for k, e in self.entries.items() if e.distance == distance]

    def restricted(self, radius: int) -> "BallTable":
        entries = {k: e for k, e in self.entries.items() if e.distance <= radius}
        return BallTable(radius, entries, self.exhausted and radius >= self.radius)


def generator_letters(table: GeneratorTable) -> list[tuple[Letter, Element]]:
    """Loaded generators and their inverses in a fixed order."""
    out = []
    for symbol in sorted(table.symbols):
        element = table.resolve(symbol)
        out.append((Letter(symbol, 1), element))
        out.append((Letter(symbol, -1), inverse(element)))
    return out


class MetricService:
    """Service computing exact word lengths by breadth-first search.

    Attributes:
        table: Generating set to search over.
        node_cap: Largest number of vertices a search may hold.
    """

    def __init__(self, table: GeneratorTable, node_cap: int | None = None):
        """Initialize the metric service.

        Args:
            table: Generating set; a subset table restricts the graph.
            node_cap: Vertex cap, ``settings.BFS_NODE_CAP`` by default.
        """
        self.table = table
        self.node_cap = node_cap or settings.BFS_NODE_CAP
        self._letters = generator_letters(table)
        start = identity()
        self._ball = BallTable(0, {canonical_key(start): BallEntry(0, GroupWord(), start)})
        self._frontier = list(self._ball.entries)

    @property
    def letters(self) -> list[tuple[Letter, Element]]:
        return self._letters

    def ball(self, radius: int) -> BallTable:
        """Return the ball of the given radius, extending the search if needed.

        Args:
            radius: Non-negative radius.

        Returns:
            The vertices at distance at most ``radius``.

        Raises:
            ResourceBudgetExceeded: If the node cap is reached.
        """
        while self._ball.radius < radius and not self._ball.exhausted:
            self._grow()
        return self._ball.restricted(radius) if radius < self._ball.radius else self._ball

    def _grow(self) -> None:
        level = self._ball.radius + 1
        entries = self._ball.entries
        # the level is merged only once it is complete
        found: dict[str, BallEntry] = {}
        for key in self._frontier:
            entry = entries[key]
            for letter, step in self._letters:
                product = reduce_pair(compose(entry.element, step))
                new_key = canonical_key(product)
                if new_key in entries or new_key in found:
                    continue
                if len(entries) + len(found) >= self.node_cap:
                    raise ResourceBudgetExceeded(
                        f"ball of radius {level} exceeds the node cap {self.node_cap}"
                    )
                found[new_key] = BallEntry(level, GroupWord((*entry.word.letters, letter)), product)
        frontier = list(found)
        entries.update(found)
        self._ball.radius = level
        self._ball.exhausted = not frontier
        self._frontier = frontier
        logger.info("ball level", extra={"radius": level, "new": len(frontier), "total": len(entries)})

    def distance(self, g: Element, max_radius: int) -> int | None:
        return self.ball(max_radius).distance(g)

    def exact_length(
        self, g: Element, max_radius: int, witness: GroupWord | None = None
    ) -> LengthCertificate:
        """Certify the word length of ``g``.

        Args:
            g: The element.
            max_radius: Largest radius to search.
            witness: A known word for ``g``, giving the upper bound off the ball.

        Returns:
            An exact certificate when ``g`` lies in the ball, bounds otherwise.
        """
        ball = self.ball(max_radius)
        entry = ball.entries.get(canonical_key(g))
        if entry is not None:
            return LengthCertificate(
                lower=entry.distance,
                upper=entry.distance,
                exact=True,
                witness=str(entry.word),
                radius=max_radius,
            )
        lower = max(ball.radius + 1, length_lower_bound(g))
        upper = len(witness) if witness is not None else None
        if upper is not None and upper < lower:
            # witness spells g over letters outside this table
            logger.warning("witness shorter than the search bound", extra={"upper": upper, "lower": lower})
            upper, witness = None, None
        return LengthCertificate(
            lower=lower,
            upper=upper,
            exact=False,
            witness=str(witness) if witness is not None else None,
            radius=max_radius,
        )

    def geodesic_word(self, g: Element, max_radius: int) -> GroupWord:
        """Return a shortest word for ``g``.

        Raises:
            NotWithinRadius: If ``g`` is farther than ``max_radius``.
        """
        entry = self.ball(max_radius).entries.get(canonical_key(g))
        if entry is None:
            raise NotWithinRadius(f"element is not within radius {max_radius}")
        return entry.word

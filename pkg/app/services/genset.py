"""Generator table service: loading the generating set and evaluating words."""

import hashlib
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Literal

from app.core.config import settings
from app.core.errors import (
    DuplicateSymbol,
    IncompleteGeneratorTable,
    IndexOutOfRange,
    InvalidElement,
    NVError,
    ParseError,
    UnknownSymbol,
)
from app.models.element import (
    Element,
    compose,
    identity,
    inverse,
    is_identity,
    parse_element,
    power,
    reduce_pair,
)
from app.models.word import GroupWord, canonical_symbol, split_symbol

logger = logging.getLogger(__name__)

Provenance = Literal["textual", "figure-transcribed"]

REQUIRED_SYMBOLS: tuple[str, ...] = (
    "x_0",
    "x_1",
    "x_2",
    "y_0",
    "y_1",
    "B_0",
    "B_1",
    "C_0",
    "C_1",
    "xh_1",
    "xh_2",
    "yh_1",
    "pi_0",
    "pi_1",
    "pib_0",
    "pib_1",
    "alpha_0",
    "alpha_1",
    "beta_0",
    "beta_1",
    "Bh_0",
    "gamma_0",
    "hx_1",
    "hx_2",
    "hxh_1",
    "hxh_2",
)

# Families whose members of index >= 2 are conjugates of the index-1 member.
FAMILY_BASE: dict[str, str] = {
    "A": "x_1",
    "x": "x_1",
    "B": "B_1",
    "C": "C_1",
    "pi": "pi_1",
    "pib": "pib_1",
}
ALIASES: dict[str, str] = {"A_0": "x_0", "A_1": "x_1"}


@dataclass(frozen=True)
class GeneratorDef:
    """A named generator.

    Attributes:
        symbol: Canonical ASCII symbol, e.g. ``xh_1``.
        element: The element it denotes.
        provenance: Whether the pair comes from the prose or from a figure.
    """

    symbol: str
    element: Element
    provenance: Provenance = "figure-transcribed"


@dataclass
class GeneratorTable:
    """Immutable-after-load map from symbols to generators.

    Attributes:
        defs: Loaded generators by canonical symbol.
        source_hash: SHA-256 of the definition file.
        dimension: Dimension tag of every element.
    """

    defs: dict[str, GeneratorDef]
    source_hash: str = ""
    dimension: int = 2
    _derived: dict[str, Element] = field(default_factory=dict, repr=False)

    @property
    def symbols(self) -> list[str]:
        return list(self.defs)

    @property
    def missing(self) -> list[str]:
        return [s for s in REQUIRED_SYMBOLS if s not in self.defs]

    @property
    def complete(self) -> bool:
        return not self.missing

    def require_complete(self) -> None:
        """Refuse to continue without the full generating set.

        Raises:
            IncompleteGeneratorTable: If a required symbol is absent.
        """
        if self.missing:
            raise IncompleteGeneratorTable(f"generator table lacks {', '.join(self.missing)}")

    def subset(self, symbols: list[str]) -> "GeneratorTable":
        """Return a table restricted to ``symbols``.

        Raises:
            UnknownSymbol: If a symbol is not loaded.
        """
        picked = {}
        for s in symbols:
            s = ALIASES.get(canonical_symbol(s), canonical_symbol(s))
            if s not in self.defs:
                raise UnknownSymbol(f"{s} is not a loaded generator")
            picked[s] = self.defs[s]
        return GeneratorTable(picked, self.source_hash, self.dimension)

    def resolve(self, symbol: str) -> Element:
        """Return the element of a symbol, deriving family members on demand.

        Raises:
            UnknownSymbol: If the symbol is neither loaded nor a family member.
        """
        symbol = ALIASES.get(canonical_symbol(symbol), canonical_symbol(symbol))
        if symbol in self.defs:
            return self.defs[symbol].element
        if symbol in self._derived:
            return self._derived[symbol]
        base, index = split_symbol(symbol)
        if base in FAMILY_BASE and index >= 2:
            element = family(base, index, self)
            self._derived[symbol] = element
            return element
        raise UnknownSymbol(f"unknown generator symbol {symbol}")

    def word_to_element(self, word: GroupWord) -> Element:
        return word_to_element(word, self)


def _parse_records(text: str) -> list[tuple[str, str, str]]:
    records: list[tuple[str, str, list[str]]] = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("symbol "):
            fields = line.split()
            provenance = "figure-transcribed"
            for extra in fields[2:]:
                key, _, value = extra.partition("=")
                if key == "provenance":
                    if value not in ("textual", "figure-transcribed"):
                        raise ParseError(f"bad provenance {value!r}")
                    provenance = value
            records.append((fields[1], provenance, []))
        elif not records:
            raise ParseError(f"element text before the first symbol line: {line!r}")
        else:
            records[-1][2].append(line)
    return [(symbol, provenance, "\n".join(body)) for symbol, provenance, body in records]


def parse_generators(text: str, source_hash: str = "") -> GeneratorTable:
    """Parse generator records.

    Raises:
        ParseError: On malformed records.
        InvalidElement: If an element is invalid or trivial.
        DuplicateSymbol: If a symbol is defined twice.
    """
    defs: dict[str, GeneratorDef] = {}
    for raw_symbol, provenance, body in _parse_records(text):
        symbol = canonical_symbol(raw_symbol)
        if symbol in defs:
            raise DuplicateSymbol(f"{symbol} is defined twice")
        try:
            element = parse_element(body)
        except NVError as exc:
            raise type(exc)(f"{symbol}: {exc}") from exc
        if is_identity(reduce_pair(element)):
            raise InvalidElement(f"{symbol} is the identity")
        defs[symbol] = GeneratorDef(symbol, element, provenance)  # type: ignore[arg-type]
    table = GeneratorTable(defs, source_hash)
    if table.missing:
        logger.warning("generator table is incomplete", extra={"missing": table.missing})
    return table


def load_generators(path: Path | str | None = None) -> GeneratorTable:
    """Load the generator file (``settings.GENERATORS`` by default).

    Raises:
        ParseError: If the file cannot be read or parsed.
    """
    path = Path(path or settings.GENERATORS)
    try:
        data = path.read_bytes()
    except OSError as exc:
        raise ParseError(f"cannot read generator file {path}: {exc}") from exc
    table = parse_generators(data.decode("utf-8"), hashlib.sha256(data).hexdigest())
    logger.info(
        "generators loaded",
        extra={"path": str(path), "count": len(table.defs), "sha256": table.source_hash[:12]},
    )
    return table


def family(base: str, i: int, table: GeneratorTable) -> Element:
    """Return the family member ``A_0^-(i-1) X_1 A_0^(i-1)``.

    Args:
        base: Family name: ``A``, ``B``, ``C``, ``pi`` or ``pib``.
        i: Index, at least 1.
        table: Loaded generators.

    Returns:
        The ``index-1`` generator moved onto the prefix ``1^i``.

    Raises:
        IndexOutOfRange: If ``i < 1``.
        UnknownSymbol: If the family is unknown.
    """
    if i < 1:
        raise IndexOutOfRange(f"family index {i} must be at least 1")
    if base not in FAMILY_BASE:
        raise UnknownSymbol(f"no generator family {base}")
    first = table.resolve(FAMILY_BASE[base])
    if i == 1:
        return first
    shift = power(table.resolve("x_0"), i - 1)
    return reduce_pair(compose(reduce_pair(compose(inverse(shift), first)), shift))


def word_to_element(word: GroupWord, table: GeneratorTable) -> Element:
    """Evaluate a word left to right under the right-action convention.

    Raises:
        UnknownSymbol: If a letter does not resolve.
    """
    result = identity()
    for symbol, exponent in word.runs():
        step = power(table.resolve(symbol), exponent)
        result = reduce_pair(compose(result, step))
    return result

"""Element input and canonical output shared by the CLI and the HTTP routes."""

from app.core.errors import ParseError
from app.models.element import Element, identity, is_identity, parse_element
from app.models.gridform import canonical_key, normal_form
from app.models.word import GroupWord
from app.schemas.api import ElementResponse
from app.services.genset import GeneratorTable


def read_element(table: GeneratorTable, element: str | None = None, word: str | None = None) -> Element:
    """Build an element from its serialization or from a word.

    An empty word gives the identity.

    Raises:
        ParseError: If neither or both sources are given, or the text is malformed.
        UnknownSymbol: If the word uses a symbol outside ``table``.
    """
    if (element is None) == (word is None):
        raise ParseError("give exactly one of an element or a word")
    if element is not None:
        return parse_element(element)
    parsed = GroupWord.parse(word or "")
    if not parsed:
        return identity()
    return table.word_to_element(parsed)


def describe(g: Element) -> ElementResponse:
    gd = normal_form(g)
    nf = gd.element
    return ElementResponse(
        element=str(nf),
        key=canonical_key(g),
        fineness=gd.fineness,
        identity=is_identity(nf),
    )

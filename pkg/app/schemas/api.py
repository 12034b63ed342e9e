"""Request and response schemas of the HTTP API."""

from pydantic import BaseModel, Field, model_validator


class ElementInput(BaseModel):
    """An element given either by its serialization or by a word.

    Attributes:
        element: ``n=2 m=<k>`` text with one pair per line.
        word: A word over the generator symbols, e.g. ``x0 y1^-1``.
    """

    element: str | None = None
    word: str | None = None

    @model_validator(mode="after")
    def check_one_source(self) -> "ElementInput":
        if (self.element is None) == (self.word is None):
            raise ValueError("give exactly one of element or word")
        return self


class ProductRequest(BaseModel):
    """Schema for multiplying two elements, ``left`` applied first."""

    left: ElementInput
    right: ElementInput


class EvaluateRequest(BaseModel):
    """Schema for evaluating an element on a prefix point.

    Attributes:
        input: The element.
        u1: Prefix of the first coordinate.
        u2: Prefix of the second coordinate.
    """

    input: ElementInput
    u1: str = Field("", pattern=r"^[01]*$")
    u2: str = Field("", pattern=r"^[01]*$")


class LengthRequest(BaseModel):
    """Schema for a word length query.

    Attributes:
        input: The element.
        max_radius: Largest search radius.
    """

    input: ElementInput
    max_radius: int = Field(2, ge=0, le=4)


class ElementResponse(BaseModel):
    """An element with its canonical data.

    Attributes:
        element: Serialization of the reduced grid diagram's element.
        key: Canonical key; equal keys mean equal elements.
        fineness: Fineness of the reduced grid diagram.
        identity: Whether the element is trivial.
    """

    element: str
    key: str
    fineness: int
    identity: bool


class PointResponse(BaseModel):
    u1: str
    u2: str


class GeneratorSummary(BaseModel):
    """One loaded generator.

    Attributes:
        symbol: Canonical symbol.
        provenance: Source of the pair data.
        pairs: Number of rectangle pairs.
    """

    symbol: str
    provenance: str
    pairs: int


class GeneratorDetail(GeneratorSummary):
    element: str


class GeneratorList(BaseModel):
    """The loaded generating set.

    Attributes:
        source_hash: SHA-256 of the generator file.
        complete: Whether every required symbol is present.
        missing: Required symbols that are absent.
        generators: Loaded generators in file order.
    """

    source_hash: str
    complete: bool
    missing: list[str] = Field(default_factory=list)
    generators: list[GeneratorSummary]


class ErrorResponse(BaseModel):
    detail: str
    code: str

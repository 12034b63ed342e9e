"""Pydantic schemas for certificates and run parameters."""

from fractions import Fraction
from typing import Literal

from pydantic import BaseModel, Field, field_validator, model_validator


class LengthCertificate(BaseModel):
    """Certified bounds on the word length of an element.

    Attributes:
        lower: Proven lower bound.
        upper: Length of a witness word, None when no witness is known.
        exact: Whether ``lower == upper`` was established by exhaustive search.
        witness: The witness word, if any.
        radius: Radius of the search ball that was used.
    """

    lower: int = Field(ge=0)
    upper: int | None = None
    exact: bool = False
    witness: str | None = None
    radius: int = 0

    @model_validator(mode="after")
    def check_bounds(self) -> "LengthCertificate":
        if self.upper is not None and self.lower > self.upper:
            raise ValueError("lower bound exceeds upper bound")
        if self.exact and self.lower != self.upper:
            raise ValueError("exact certificate needs lower == upper")
        return self


class DivergenceParams(BaseModel):
    """Constants of the path construction.

    Attributes:
        M: Exponent multiplier of the second subpath.
        Q: Exponent multiplier of the fourth subpath.
        delta: Radius factor of the avoided ball, as a fraction string.
        allow_small: Permit ``M < 100`` for desk-scale experiments.
    """

    M: int = 100
    Q: int = 4800
    delta: str = "1/64"
    allow_small: bool = False

    @field_validator("delta")
    @classmethod
    def check_delta(cls, value: str) -> str:
        try:
            fraction = Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"bad fraction {value!r}") from exc
        if not 0 < fraction < 1:
            raise ValueError("delta must lie strictly between 0 and 1")
        return str(fraction)

    @model_validator(mode="after")
    def check_constants(self) -> "DivergenceParams":
        if self.M < 1 or (self.M < 100 and not self.allow_small):
            raise ValueError("M must be at least 100")
        if self.Q < 48 * self.M:
            raise ValueError("Q must be at least 48*M")
        return self

    @property
    def D(self) -> int:  # noqa: N802
        return 10 * self.Q

    @property
    def delta_value(self) -> Fraction:
        return Fraction(self.delta)


class SubpathRecord(BaseModel):
    """One segment of the constructed path.

    Attributes:
        name: Segment name, ``omega1`` to ``omega6``.
        start: Offset of the first letter in the full word.
        length: Letter count.
        budget: Largest length allowed for this segment.
    """

    name: str
    start: int
    length: int
    budget: int

    @property
    def ok(self) -> bool:
        return self.length <= self.budget


class PrefixEvidence(BaseModel):
    """Avoidance evidence for one prefix of the path.

    Attributes:
        index: Prefix length.
        identity: Whether the prefix evaluates to the identity.
        lower_bound: Fineness bound on the prefix's word length.
        exact_distance: Exact distance when the prefix lies in the search ball.
    """

    index: int
    identity: bool
    lower_bound: int
    exact_distance: int | None = None


class PathCertificate(BaseModel):
    """Machine-checkable record of one path construction."""

    element: str
    n_hat: int
    length: LengthCertificate
    length_mode: Literal["exact", "certified-upper"]
    params: DivergenceParams
    orientation: Literal["vertical", "horizontal"] = "vertical"
    subpath1_case: str
    subpath4_case: str
    c_prefix: list[int] = Field(default_factory=list)
    subpaths: list[SubpathRecord]
    word: str
    word_length: int
    length_budget: int
    endpoint_ok: bool
    endpoint_exponent_cap: int | None = None
    origin_sizes: list[int] = Field(default_factory=list)
    evidence: list[PrefixEvidence] = Field(default_factory=list)
    evidence_complete: bool = False
    # set when the evidence was taken on the exponent-capped rebuild
    evidence_exponent_cap: int | None = None

    @property
    def length_ok(self) -> bool:
        return self.word_length < self.length_budget

    @property
    def budgets_ok(self) -> bool:
        return all(s.ok for s in self.subpaths)

    @property
    def avoids_identity(self) -> bool:
        return self.evidence_complete and not any(e.identity for e in self.evidence[1:])


class DivergenceResult(BaseModel):
    """One measured value of the divergence function.

    Attributes:
        x: Distance of the endpoint pairs.
        delta: Radius factor of the avoided ball.
        phi: Longest shortest avoiding path, None if some pair is disconnected.
        witness: Endpoint words realizing ``phi``.
        symbols: Generators used, empty for the full set.
        working_radius: Radius of the explored ball.
    """

    x: int
    delta: str
    phi: int | None
    witness: tuple[str, str] | None = None
    symbols: list[str] = Field(default_factory=list)
    working_radius: int


class RunConfig(BaseModel):
    """Validated options of one CLI run.

    Attributes:
        subcommand: Command name.
        inputs: Element files or words.
        params: Path construction constants.
        output_format: Record format on stdout.
        bfs_node_cap: Node cap of every breadth-first search.
        exponent_cap: Replace large exponents by this value when set.
        seed: Seed for randomized sampling.
    """

    subcommand: str
    inputs: list[str] = Field(default_factory=list)
    params: DivergenceParams = Field(default_factory=DivergenceParams)
    output_format: Literal["text", "csv", "jsonl"] = "text"
    bfs_node_cap: int = Field(default=5_000_000, ge=1)
    exponent_cap: int | None = Field(default=None, ge=1)
    seed: int = 0


class CheckResult(BaseModel):
    """Outcome of one generator-table check."""

    name: str
    ok: bool
    detail: str = ""


class ValidationReport(BaseModel):
    """All checks run by ``gen validate``.

    Attributes:
        source_hash: SHA-256 of the generator file.
        complete: Whether every required symbol is present.
        checks: Individual results in execution order.
    """

    source_hash: str
    complete: bool
    checks: list[CheckResult] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.complete and all(c.ok for c in self.checks)

    @property
    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.ok]

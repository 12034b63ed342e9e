"""Domain errors with stable machine-readable codes.

Every error carries ``code`` (printed by the CLI and returned by the HTTP
layer) and ``exit_code``: 1 for domain errors, 2 for exhausted budgets.
"""


class NVError(Exception):
    """Base class for all errors raised by the library."""

    code = "nv_error"
    exit_code = 1


class BudgetError(NVError):
    """Base class for errors raised when a search budget runs out."""

    code = "budget_error"
    exit_code = 2


class RectNotInPattern(NVError):
    code = "rect_not_in_pattern"


class PrefixTooShort(NVError):
    """Evaluation point is not contained in a single domain rectangle."""

    code = "prefix_too_short"


class StripNotFound(NVError):
    code = "strip_not_found"


class RectNotInRange(NVError):
    code = "rect_not_in_range"


class NotRealizable(NVError):
    """Rectangle set is a partition but cannot be cut by full lines."""

    code = "not_realizable"


class MalformedWord(NVError):
    code = "malformed_word"


class ParseError(NVError):
    code = "parse_error"


class InvalidElement(NVError):
    code = "invalid_element"


class DuplicateSymbol(NVError):
    code = "duplicate_symbol"


class UnknownSymbol(NVError):
    code = "unknown_symbol"


class IndexOutOfRange(NVError):
    code = "index_out_of_range"


class IncompleteGeneratorTable(NVError):
    code = "incomplete_generator_table"


class NotWithinRadius(NVError):
    code = "not_within_radius"


class PreconditionViolated(NVError):
    code = "precondition_violated"


class EssentialityLost(NVError):
    """A tracked multiplication broke the origin-rectangle contract.

    This points at a generator transcription that disagrees with the prose.
    """

    code = "essentiality_lost"


class NoEssentialOrigin(NVError):
    code = "no_essential_origin"


class DecompositionUnavailable(NVError):
    code = "decomposition_unavailable"


class NoIdentityHalf(NVError):
    code = "no_identity_half"


class BudgetExceeded(BudgetError):
    code = "budget_exceeded"


class ResourceBudgetExceeded(BudgetError):
    code = "resource_budget_exceeded"

"""Exception hierarchy.

Two mixin bases sort every failure into the CLI's exit-code contract:
``DataError`` (bad input files, illegal values, empty inputs) maps to exit
code 2, ``NumericalError`` (rank deficiency, too few rows, degenerate
statistics) to exit code 3.
"""


class RwwError(Exception):
    """Base class for all toolkit errors."""


class DataError(RwwError):
    """Input data is malformed, illegal, or insufficiently specified."""


class NumericalError(RwwError):
    """A computation cannot proceed on this input (degenerate numerics)."""


class InvalidControl(DataError):
    """Control variable violates its domain (characters < 1, goal < 1, ...)."""


class UnknownQuestionId(DataError):
    """A question id outside Q01..Q26 or missing from a ratings map."""


class EmptyDataset(DataError):
    """An operation requiring records received none."""


class InvariantViolation(DataError):
    """A parsed value breaks a domain invariant; names the offending field."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")


class ParseError(DataError):
    """File cannot be parsed; carries a row/column locus when known."""

    def __init__(self, message: str, row: int | None = None, column: str | None = None):
        self.row = row
        self.column = column
        locus = ""
        if row is not None:
            locus += f" (row {row}"
            locus += f", column {column})" if column else ")"
        elif column:
            locus += f" (column {column})"
        super().__init__(message + locus)


class SchemaVersionError(DataError):
    """Document schema_version is missing or unsupported."""


class RankDeficient(NumericalError):
    """Design matrix has collinear columns."""


class Underdetermined(NumericalError):
    """Too few rows for the number of regressors."""


class DegenerateDoF(NumericalError):
    """n <= p + 1 leaves no residual degrees of freedom."""


class DegenerateSample(NumericalError):
    """Both samples have zero variance; the t statistic is undefined."""


class EmptyMatrix(DataError):
    """Agreement matrix has zero total count."""


class TermMismatch(DataError):
    """Regressor names or order do not match the model's encoding."""


class BadK(DataError):
    """k outside 2 <= k <= n."""


class TooManyCandidates(DataError):
    """Exhaustive enumeration refused above the candidate cap."""


class SingleGroup(DataError):
    """Screening needs both platforms and both categories present."""


class ConstantColumn(NumericalError):
    """A forced regressor is constant over the given slice."""

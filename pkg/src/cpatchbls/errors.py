"""Exception hierarchy shared across the package.

Every error carries an ``exit_code`` so the CLI can map failures onto its
documented exit codes: 2 for input problems, 3 for numerical failures,
4 for an SE/PE score mismatch.
"""

EXIT_INPUT = 2
EXIT_NUMERICAL = 3
EXIT_MISMATCH = 4


class CPatchBlsError(Exception):
    """Base class for all package errors."""

    exit_code = EXIT_INPUT


class MissingFile(CPatchBlsError):
    pass


class EmptyData(CPatchBlsError):
    pass


class RaggedRows(CPatchBlsError):
    def __init__(self, row: int, message: str = ""):
        self.row = row
        super().__init__(message or f"row {row} has a different column count")


class NonFiniteValue(CPatchBlsError):
    def __init__(self, row: int, col: int, message: str = ""):
        self.row = row
        self.col = col
        super().__init__(message or f"non-finite or unparsable value at row {row}, col {col}")


class ShapeMismatch(CPatchBlsError):
    pass


class LengthMismatch(CPatchBlsError):
    pass


class UnknownKey(CPatchBlsError):
    def __init__(self, key: str):
        self.key = key
        super().__init__(f"unknown configuration key: {key!r}")


class InvariantViolation(CPatchBlsError):
    def __init__(self, key: str, message: str = ""):
        self.key = key
        super().__init__(message or f"invariant violated for {key!r}")


class PatchTooLarge(CPatchBlsError):
    pass


class DegenerateLabels(CPatchBlsError):
    pass


class NumericalFailure(CPatchBlsError):
    exit_code = EXIT_NUMERICAL


class SingularSystem(CPatchBlsError):
    exit_code = EXIT_NUMERICAL


class ScoreMismatch(CPatchBlsError):
    exit_code = EXIT_MISMATCH

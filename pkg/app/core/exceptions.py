"""
Application exceptions with script-friendly codes, messages and exit codes.
"""
from typing import Any, Dict, Optional

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_NUMERIC = 4


class AppException(Exception):
    """Base exception with code, message, hint and the process exit code."""
    exit_code: int = EXIT_NUMERIC

    def __init__(self, code: str, message: str, hint: Optional[str] = None):
        self.code = code
        self.message = message
        self.hint = hint
        super().__init__(message)

    @property
    def detail(self) -> Dict[str, Any]:
        detail = {"code": self.code, "message": self.message}
        if self.hint:
            detail["hint"] = self.hint
        return detail


class UsageError(AppException):
    exit_code = EXIT_USAGE


class DataError(AppException):
    exit_code = EXIT_DATA


class NumericError(AppException):
    exit_code = EXIT_NUMERIC


# --- usage (exit 2)

class OverlappingSelectors(UsageError):
    def __init__(self, columns):
        super().__init__(
            code="OVERLAPPING_SELECTORS",
            message=f"Columns selected for both --x and --y: {', '.join(sorted(columns))}.",
            hint="X and Y selectors must be disjoint.",
        )


class EmptySelection(UsageError):
    def __init__(self, which: str):
        super().__init__(
            code="EMPTY_SELECTION",
            message=f"No columns selected for {which}.",
        )


class UnknownColumn(UsageError):
    def __init__(self, column: str):
        super().__init__(
            code="UNKNOWN_COLUMN",
            message=f"Column '{column}' not found in CSV header.",
        )


class InvalidConfig(UsageError):
    def __init__(self, message: str, hint: Optional[str] = None):
        super().__init__(code="INVALID_CONFIG", message=message, hint=hint)


# --- data (exit 3)

class DataFileNotFound(DataError):
    def __init__(self, path: str):
        super().__init__(
            code="FILE_NOT_FOUND",
            message=f"File not found: {path}",
        )


class ParseError(DataError):
    def __init__(self, row: int, col: str, raw: str = ""):
        self.row = row
        self.col = col
        super().__init__(
            code="PARSE_ERROR",
            message=f"Cannot parse a finite number at data row {row}, column '{col}': {raw!r}.",
            hint="Missing values are not imputed; clean the file first.",
        )


class RowCountMismatch(DataError):
    def __init__(self, n_x: int, n_y: int):
        super().__init__(
            code="ROW_COUNT_MISMATCH",
            message=f"X has {n_x} rows but Y has {n_y} rows.",
        )


class IndexOutOfBounds(DataError):
    def __init__(self, message: str):
        super().__init__(code="INDEX_OUT_OF_BOUNDS", message=message, hint="Triplet indices are 1-based.")


class DuplicateEntry(DataError):
    def __init__(self, row: int, col: int):
        super().__init__(
            code="DUPLICATE_ENTRY",
            message=f"Duplicate triplet for (row={row}, col={col}).",
        )


class SampleTooSmall(DataError):
    def __init__(self, n: int, minimum: int):
        super().__init__(
            code="SAMPLE_TOO_SMALL",
            message=f"Sample size {n} is below the minimum of {minimum}.",
        )


class DegeneratePairing(DataError):
    def __init__(self, m: int):
        super().__init__(
            code="DEGENERATE_PAIRING",
            message=f"Cyclic pairing needs at least 3 indices, got {m}.",
        )


class RepeatedIndex(DataError):
    def __init__(self, index: int):
        super().__init__(
            code="REPEATED_INDEX",
            message=f"Cyclic pairing indices must be distinct; {index} appears more than once.",
        )


class LengthMismatch(DataError):
    def __init__(self, a: int, b: int):
        super().__init__(
            code="LENGTH_MISMATCH",
            message=f"Inputs have different lengths ({a} vs {b}).",
        )


class DimensionMismatch(DataError):
    def __init__(self, expected: int, got: int):
        super().__init__(
            code="DIMENSION_MISMATCH",
            message=f"Model expects {expected} features, got {got}.",
        )


class EmptyInput(DataError):
    def __init__(self, what: str = "values"):
        super().__init__(code="EMPTY_INPUT", message=f"Empty {what}.")


class SingleClassInput(DataError):
    def __init__(self):
        super().__init__(
            code="SINGLE_CLASS",
            message="Training labels contain a single class.",
            hint="Both joint (1) and permuted (0) rows are required.",
        )


class InvalidModel(DataError):
    def __init__(self, message: str):
        super().__init__(code="INVALID_MODEL", message=message)


class AbsoluteContinuityViolated(DataError):
    def __init__(self, index: int):
        super().__init__(
            code="ABSOLUTE_CONTINUITY",
            message=f"p has mass at support point {index} where q is zero.",
        )


# --- numeric (exit 4)

class NonFiniteLoss(NumericError):
    def __init__(self, iteration: int):
        super().__init__(
            code="NON_FINITE_LOSS",
            message=f"Objective became non-finite at iteration {iteration}.",
        )


class DivergenceDetected(NumericError):
    def __init__(self, epoch: int):
        super().__init__(
            code="DIVERGENCE",
            message=f"Training loss diverged (NaN/Inf) in epoch {epoch}.",
            hint="Lower the step size.",
        )


class DimensionOverflow(NumericError):
    def __init__(self, m: int, cap: int):
        super().__init__(
            code="DIMENSION_OVERFLOW",
            message=f"Basis dimension {m} exceeds the cap of {cap}.",
            hint="Lower s1 or K_n, or raise CPC_BASIS_DIMENSION_CAP.",
        )

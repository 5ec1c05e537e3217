"""Exception types.

Singularity and "no factorization" are ordinary outcomes during searches, so
they are exceptions callers are expected to catch, never crashes.
"""


class GF2Error(Exception):
    pass


class DimensionError(GF2Error, ValueError):
    pass


class SingularMatrixError(GF2Error, ArithmeticError):
    pass


class NoFactorizationError(GF2Error, ArithmeticError):
    pass


class OrderCapExceeded(GF2Error):
    pass


class BudgetExceededError(GF2Error):
    pass


class NoSolutionError(GF2Error):
    pass


class MatrixParseError(GF2Error, ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class NotT0Error(GF2Error):
    """The net does not have t-value zero; ``result`` holds the t-value and witness."""

    def __init__(self, message: str, result):
        super().__init__(f"{message} (t={result.t}, witness={result.witness})")
        self.result = result


class HypothesisError(NotT0Error):
    """Inputs to a probe do not satisfy t = 0."""


class TheoremViolation(AssertionError):
    """An outcome the characterization theorem rules out.

    Reaching this means either the implementation or the theorem is wrong, so
    it is never caught inside the package.
    """

"""Exception types shared across the package."""


class MlogicError(Exception):
    """Base class for all package-specific errors."""


class DomainError(MlogicError):
    """A subset or element refers to something outside the ground set."""


class ValidationError(MlogicError):
    """A structural precondition or invariant does not hold."""


class FormatError(MlogicError):
    """A data file does not conform to its declared format."""


class FormulaError(MlogicError):
    """A formula construction rule is violated."""


class ParseError(MlogicError):
    """Sentence text cannot be parsed."""

    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        if line is not None:
            message = f"{line}:{col}: {message}"
        super().__init__(message)
        self.line = line
        self.col = col


class BudgetError(MlogicError):
    """Evaluating or expanding something would exceed a resource budget."""

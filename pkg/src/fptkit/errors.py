"""Exception types shared across the package."""


class FptError(Exception):
    """Base class for all fptkit errors."""


class ParseError(FptError):
    """Malformed polynomial or monomial text; carries line/column."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class InvalidMonomialSetError(FptError):
    """Monomial set violates its invariants (zero or duplicate exponents)."""


class IntegralityError(FptError):
    """A quantity required to be a natural number is not one."""


class ReductionError(FptError):
    """Coefficient-wise mod-p reduction failed (bad denominator or support collapse)."""


class NotApplicableError(FptError):
    """An operation's hypotheses do not hold for the given input."""

    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


class BudgetExceededError(FptError):
    """The term-count budget for polynomial expansion was exhausted."""


class SearchExhaustedError(FptError):
    """A bounded search (e.g. prime search ceiling) ran out before succeeding."""

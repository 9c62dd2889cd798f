"""Exception types raised by holodep."""


class HolodepError(Exception):
    """Base class for all domain errors (CLI exit code 1)."""


class ZeroDivisorError(HolodepError, ZeroDivisionError):
    def __init__(self, msg="zero divisor"):
        super().__init__(msg)


class DimensionError(HolodepError, ValueError):
    pass


class UnsupportedError(HolodepError):
    """Input outside the exactly computable fragment (e.g. irrational poles)."""


class SingularPointError(HolodepError):
    pass


class IndicialError(HolodepError):
    """Missing or inconsistent initial data at an indicial root."""


class PrecisionError(HolodepError):
    """Not enough series coefficients for the requested order."""


class UnderdeterminedError(HolodepError):
    pass


class ParseError(HolodepError, ValueError):
    """Syntax error in an expression; carries a 1-based line and column."""

    def __init__(self, msg, line=1, column=1):
        self.line = line
        self.column = column
        self.msg = msg
        super().__init__(f"syntax error at line {line}, column {column}: {msg}")

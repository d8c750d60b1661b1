"""Exception hierarchy shared by all madic modules."""


class MadicError(Exception):
    """Base class for all library errors."""


class DomainMismatchError(MadicError):
    """Operands live over different coefficient fields or variable universes."""


class CapacityError(MadicError):
    """Input exceeds a hard capacity limit (e.g. subset enumeration blow-up)."""


class PrecisionError(MadicError):
    """Working precision too low to certify the requested result."""


class HypothesisError(MadicError):
    """A mathematical precondition of an operation is violated.

    Carries enough context (the measured quantity) for the caller to report
    what failed.
    """

    def __init__(self, message, measured=None):
        super().__init__(message)
        self.measured = measured


class UnsupportedInstanceError(MadicError):
    """No available solver strategy applies to the given instance."""


class ParseError(MadicError):
    """Malformed polynomial / series / problem-file text."""

    def __init__(self, message, line=None, column=None):
        if line is not None:
            message = f"line {line}, col {column}: {message}"
        super().__init__(message)
        self.line = line
        self.column = column

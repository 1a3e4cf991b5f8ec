"""Exception hierarchy shared by every envarium module."""


class EnvariumError(Exception):
    """Base class for all errors raised by envarium."""


class ValidationError(EnvariumError, ValueError):
    """An argument violates a documented precondition."""


class SizeError(ValidationError):
    """A register size is outside the supported range."""


class QubitIndexError(ValidationError, IndexError):
    """A qubit index does not exist in the register."""


class ParseError(EnvariumError, ValueError):
    """A circuit source could not be parsed.

    Carries the 1-based ``line`` number (0 when the problem is not tied to a
    single line) and a human-readable ``reason``.
    """

    def __init__(self, line: int, reason: str):
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}")


class NotEnvariantError(EnvariumError):
    """The reduced state of S is not preserved, so no assisting unitary exists."""

    def __init__(self, residual_condition: float, tol: float):
        self.residual_condition = residual_condition
        self.tol = tol
        super().__init__(
            f"reduced state not preserved: residual {residual_condition:.3e} > tol {tol:.1e}"
        )


class UnknownExperimentError(EnvariumError, LookupError):
    """No built-in experiment with the requested name."""

"""Shared exception types.

Two error families matter for the CLI exit-code contract: validation
errors (bad input, violated preconditions, desk-scale caps) map to exit
code 2, numerical-ambiguity errors (rank decisions without a spectral
gap, non-converged iterations) map to exit code 3.
"""


class AtlasError(Exception):
    """Base class for all package errors."""


class ValidationError(AtlasError):
    """Invalid input or violated precondition."""


class DeskScaleError(ValidationError):
    """A request exceeded a documented desk-scale cap."""


class NumericalAmbiguityError(AtlasError):
    """A numerical predicate could not be decided at the configured gap."""


class ConvergenceError(NumericalAmbiguityError):
    """An iterative scheme did not converge within its iteration budget."""

    def __init__(self, message: str, iterations: int):
        super().__init__(f"{message} (after {iterations} iterations)")
        self.iterations = iterations

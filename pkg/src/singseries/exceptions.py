"""Exception types shared across the package.

Every failure mode that callers are expected to handle gets its own class;
plain ValueError/ArithmeticError never escape the public API directly.
"""


class DomainError(ValueError):
    """Argument lies outside the supported evaluation region."""


class PoleError(DomainError):
    """Evaluation requested exactly at a pole."""


class IllConditionedError(ArithmeticError):
    """Evaluation too close to a pole or a zero of a denominator factor."""


class NumericalConsistencyError(ArithmeticError):
    """An internal cross-check failed; indicates a bug, not bad input."""


class SequencingError(ValueError):
    """Stream values did not continue contiguously from the current frontier."""


class PreconditionError(ValueError):
    """A documented call precondition was violated."""


class ResourceLimitError(RuntimeError):
    """Requested size exceeds the configured memory budget."""


class RefinementError(RuntimeError):
    """Newton refinement of a zero seed failed to converge."""


class MultiplicityWarning(UserWarning):
    """A refined zero failed the simple-zero assertion |zeta'(rho)| > 1e-3."""

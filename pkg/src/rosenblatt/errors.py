"""Exception types shared across the package.

The CLI maps these onto exit codes: bad arguments and domain violations
exit with 2, numerical failures with 3.
"""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class ResourceLimitError(RuntimeError):
    """A computation would exceed a configured size or iteration cap."""


class NumericalError(RuntimeError):
    """A numerical routine failed to reach the requested accuracy."""


class EmbeddingError(NumericalError):
    """Circulant embedding produced a significantly negative eigenvalue."""

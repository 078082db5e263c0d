"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain where an operation is defined."""


class ResourceError(RuntimeError):
    """A computation would exceed its configured work budget."""


class FitError(ValueError):
    """Degenerate input to a least-squares or bound fit."""

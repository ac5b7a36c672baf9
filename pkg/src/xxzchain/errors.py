"""Exception types shared across the package."""


class DomainError(ValueError):
    """Input outside an operation's documented domain."""


class ResourceCapError(RuntimeError):
    """Requested computation exceeds a configured size cap."""


class NumericError(RuntimeError):
    """A numerical routine could not deliver a trustworthy result."""

"""Semantic exceptions shared across the package."""


class DomainError(ValueError):
    """An input violates a documented precondition or invariant."""


class ResourceError(RuntimeError):
    """A request would exceed a configured size/evaluation cap."""

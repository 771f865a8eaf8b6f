"""Exception types shared across the package."""

from __future__ import annotations


class OrbichiError(Exception):
    """Base class for every error raised by this package."""


class InputError(OrbichiError):
    """An input document or CLI argument failed validation.

    ``path`` locates the first offending value, e.g. ``action.matrices[1][0][0]``.
    """

    def __init__(self, path: str, message: str):
        self.path = path
        self.message = message
        super().__init__(f"{path}: {message}" if path else message)


class GroupValidationError(OrbichiError):
    """A multiplication table violates a group axiom.

    ``axiom`` is one of ``shape``, ``identity``, ``latin``, ``inverses``,
    ``associativity``.
    """

    def __init__(self, axiom: str, message: str):
        self.axiom = axiom
        super().__init__(message)


class ModelValidationError(OrbichiError):
    """An action map is not a homomorphism or is otherwise malformed."""


class SizeCapExceeded(OrbichiError):
    """A group construction would exceed the configured size cap."""


class ConsistencyError(OrbichiError):
    """An internal exactness invariant failed; the computation must abort."""


class UsageError(OrbichiError):
    """An operation was called with incompatible arguments."""

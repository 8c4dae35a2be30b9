"""Exception hierarchy shared across the package."""


class TworepsError(Exception):
    """Base class for all library errors."""


class ValidationError(TworepsError):
    """Structurally malformed input: bad permutation, broken action table,
    mismatched groups, unparseable JSON payloads."""


class NonCocycleError(TworepsError):
    """A 2-cochain that was required to satisfy the cocycle identity does not.

    Carries the least failing triple/component when known.
    """

    def __init__(self, message, triple=None, component=None):
        super().__init__(message)
        self.triple = triple
        self.component = component


class SizeCapError(TworepsError):
    """A configured resource cap (group order, matrix size, search space)
    was exceeded."""

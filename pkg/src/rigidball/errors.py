"""Exception types raised by the library."""


class RigidballError(Exception):
    """Base class for all library errors."""


class DomainError(RigidballError, ValueError):
    """An argument lies outside the domain of the operation."""


class NoSignChange(RigidballError):
    """A bracketing search found no sign change."""


class RootNotBracketed(NoSignChange):
    """A polynomial has no sign change on the interval it must have a root in."""


class NonConvergence(RigidballError):
    """An iterative method hit its iteration cap."""


class PreconditionError(RigidballError, ValueError):
    """Input data violates a documented precondition (e.g. div h != 0)."""

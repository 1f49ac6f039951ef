"""Exception hierarchy shared by every solver and generator."""


class CmcError(Exception):
    """Base class for all errors raised by :mod:`cmcut`."""


class InvalidInputError(CmcError, ValueError):
    """Malformed instance, assignment or number list."""


class StructureError(CmcError, ValueError):
    """The graph does not have the shape an operation requires (e.g. not a tree)."""


class LimitExceededError(CmcError):
    """An exhaustive routine was asked to enumerate more than its configured limit."""


class ResourceError(CmcError):
    """A dynamic program would exceed its configured state budget."""


class UnsupportedError(CmcError):
    """The operation is not defined for this instance (e.g. repair with 4+ terminals)."""


class InfeasibleError(CmcError):
    """No connected multiway cut exists for the instance."""


class InternalConsistencyError(CmcError, AssertionError):
    """A solver produced data that contradicts its own invariants."""

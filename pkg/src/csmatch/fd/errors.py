"""Errors raised while building or solving a finite-domain problem."""


class FdError(Exception):
    """Base class for solver model errors."""


class EmptyDomainError(FdError):
    """A variable was declared with no values."""


class DuplicateIdError(FdError):
    """A variable id was registered twice in one problem."""


class UnknownVariableError(FdError):
    """A constraint referenced a variable not registered in this problem."""


class DuplicateObjectiveError(FdError):
    """set_minimize was called twice."""


class NoObjectiveError(FdError):
    """solve_optimal was called without an objective."""


class ModelError(FdError):
    """The problem is malformed (bad operator, no variables, ...)."""

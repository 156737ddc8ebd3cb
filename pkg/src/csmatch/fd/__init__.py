"""A small finite-domain constraint solver.

Integer variables over finite domains, element constraints, comparisons,
reified conditions, equivalences, and weighted-sum objectives, with
complete deterministic all-solutions enumeration and minimization by
enumerate-and-sort.
"""

from .engine import available_backends, default_backend
from .errors import (
    DuplicateIdError,
    DuplicateObjectiveError,
    EmptyDomainError,
    FdError,
    ModelError,
    NoObjectiveError,
    UnknownVariableError,
)
from .model import (
    Condition,
    Problem,
    Solution,
    SumTerm,
    Var,
    check_assignment,
    compares,
    distance,
    element_hits,
    evaluate_condition,
    evaluate_constraint,
    extend_with_auxiliaries,
    linear,
    new_problem,
)

__all__ = [
    "Condition",
    "DuplicateIdError",
    "DuplicateObjectiveError",
    "EmptyDomainError",
    "FdError",
    "ModelError",
    "NoObjectiveError",
    "Problem",
    "Solution",
    "SumTerm",
    "UnknownVariableError",
    "Var",
    "available_backends",
    "check_assignment",
    "compares",
    "default_backend",
    "distance",
    "element_hits",
    "evaluate_condition",
    "evaluate_constraint",
    "extend_with_auxiliaries",
    "linear",
    "new_problem",
]

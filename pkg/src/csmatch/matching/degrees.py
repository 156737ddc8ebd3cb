"""Matching degrees for scalar and feature-list properties.

Feature lists grade on the sets involved: P (provided), R (required), and
S = P intersect R, found here by a tiny constraint problem per check: an
index variable over the provided positions, a candidate variable over the
required codes, and one element constraint linking them.  Every required
item weighs the same.
"""

from __future__ import annotations

import enum

from .. import fd
from ..catalog import Kind, PropertySchema, RequestConstraint, effective_operator


class MatchingDegree(enum.Enum):
    SUPER = "SUPER"
    EXACT = "EXACT"
    PARTIAL = "PARTIAL"
    FAIL = "FAIL"
    NOSPEC = "NOSPEC"


def feature_degree(provided_size: int, required_size: int, solution_size: int) -> MatchingDegree:
    """Degree from set sizes; provided_size == 0 means no specification."""
    if provided_size == 0:
        return MatchingDegree.NOSPEC
    if solution_size == 0:
        return MatchingDegree.FAIL
    if required_size > solution_size:
        return MatchingDegree.PARTIAL
    if provided_size == solution_size:
        return MatchingDegree.EXACT
    return MatchingDegree.SUPER


def match_feature_list(
    provided: frozenset | set | None,
    required: frozenset | set,
    backend: str | None = None,
) -> tuple[frozenset, MatchingDegree]:
    """Solution set and degree for one feature-list check.

    ``provided`` may be None (provider said nothing) or empty; both grade
    NOSPEC.  ``required`` must be non-empty.
    """
    if not required:
        raise ValueError("required feature set must be non-empty")
    if not provided:
        return frozenset(), MatchingDegree.NOSPEC
    provided_codes = sorted(provided)
    problem = fd.new_problem()
    index = problem.add_variable("providedIndex", 0, len(provided_codes) - 1)
    candidate = problem.add_variable("candidate", values=sorted(required))
    problem.post_element(provided_codes, index, "=", candidate)
    solutions = problem.solve_all(backend)
    matched = frozenset(s["candidate"] for s in solutions)
    return matched, feature_degree(len(provided), len(required), len(matched))


def degree_of_scalar(
    spec: int | None, constraint: RequestConstraint, prop: PropertySchema
) -> MatchingDegree:
    """Scalar degree: NOSPEC when unspecified, EXACT when the effective
    operator holds, FAIL otherwise.  Scalars have no partial or super grade."""
    if prop.kind is Kind.FEATURE_LIST:
        raise ValueError("use match_feature_list for feature lists")
    if spec is None:
        return MatchingDegree.NOSPEC
    return (
        MatchingDegree.EXACT
        if fd.model.eval_op(spec, effective_operator(prop, constraint), constraint.value)
        else MatchingDegree.FAIL
    )

"""The matchmaking pipeline: solve the constraint models, grade every
service, and rank.

The ranking covers every catalog service, including infeasible ones (they
are flagged, not dropped), so an over-constrained request still yields a
complete comparison to relax from.
"""

from __future__ import annotations

from ..catalog import Catalog, Kind, Mode, ObjectiveMode, ServiceRequest, effective_operator
from .. import fd
from .degrees import MatchingDegree, degree_of_scalar, match_feature_list
from .models import (
    INDEX_VAR,
    build_model_hard,
    build_objective_model,
    split_constraints,
)
from .report import POINTS, MatchRanking, PropertyResult, score, sort_ranking


def match(
    catalog: Catalog,
    request: ServiceRequest,
    *,
    strict_missing: bool = False,
    backend: str | None = None,
) -> MatchRanking:
    """Rank every service in the catalog against the request.

    Hard scalar feasibility and soft violation sums come from the
    constraint models; per-property grades and the feature-list solution
    sets from their own checks.  ``strict_missing`` turns a missing spec
    under a hard constraint into infeasibility instead of a zero-point
    NOSPEC.
    """
    n = len(catalog.services)
    if n == 0:
        return MatchRanking(reports=())
    hard, soft, _features = split_constraints(catalog, request)

    feasible_ids: set[int] = set()
    covered: frozenset[int] = frozenset(range(n))
    if hard:
        built = build_model_hard(catalog, request)
        covered = built.covered
        feasible_ids = {s[INDEX_VAR] for s in built.problem.solve_all(backend)}

    solver_violation: dict[int, int] = {}
    if soft:
        built = build_objective_model(catalog, request)
        for solution in built.problem.solve_optimal(backend):
            solver_violation.setdefault(solution[INDEX_VAR], solution.objective_value)

    reports = []
    for svc in catalog.services:
        results = []
        for c in request.constraints:
            prop = catalog.property_schema(c.property_id)
            spec = svc.spec(c.property_id)
            if prop.kind is Kind.FEATURE_LIST:
                matched, degree = match_feature_list(spec, c.value, backend)
                results.append(
                    PropertyResult(
                        property_id=c.property_id,
                        degree=degree,
                        points=POINTS[degree],
                        violation=0,
                        solution_set=tuple(sorted(matched)),
                    )
                )
                continue
            degree = degree_of_scalar(spec, c, prop)
            if c.mode is Mode.HARD:
                results.append(
                    PropertyResult(
                        property_id=c.property_id,
                        degree=degree,
                        points=POINTS[degree],
                        violation=0,
                    )
                )
            else:
                results.append(
                    PropertyResult(
                        property_id=c.property_id,
                        degree=degree,
                        points=0,
                        violation=_soft_violation(catalog, request, c, spec),
                    )
                )
        scalar_feasibility = None
        if hard and svc.service_id in covered:
            scalar_feasibility = svc.service_id in feasible_ids
        reports.append(
            score(
                svc.service_id,
                svc.name,
                results,
                request,
                strict_missing=strict_missing,
                total_violation=solver_violation.get(svc.service_id),
                scalar_feasibility=scalar_feasibility,
            )
        )
    return sort_ranking(reports)


def _soft_violation(catalog, request, constraint, spec) -> int:
    """Direct per-property violation, mirroring the solver's objective."""
    prop = catalog.property_schema(constraint.property_id)
    weight = constraint.weight
    if request.objective_mode is ObjectiveMode.BOOLEAN:
        satisfied = spec is not None and fd.model.eval_op(
            spec, effective_operator(prop, constraint), constraint.value
        )
        return 0 if satisfied else weight
    column = catalog.known_column(constraint.property_id)
    spread = max(column) - min(column) if column else 0
    distance = abs(spec - constraint.value) if spec is not None else spread
    if not request.normalize:
        return weight * distance
    distances = [
        abs(v - constraint.value) if v is not None else spread
        for v in catalog.column(constraint.property_id)
    ]
    worst = max(distances)
    if worst == 0:
        return 0
    return weight * ((2000 * distance + worst) // (2 * worst))

"""Brute-force reference matcher.

Grades every service against every constraint by direct evaluation: plain
comparisons, plain set intersection, plain sums.  No constraint solver is
involved anywhere, so this is the independent check for the model-driven
pipeline; the two must agree field for field.  Policy formulas are
deliberately restated here rather than imported.
"""

from __future__ import annotations

from ..catalog import Catalog, Direction, Kind, Mode, ObjectiveMode, ServiceRequest, Tendency
from .degrees import MatchingDegree
from .report import MatchRanking, MatchReport, PropertyResult

_POINTS = {
    MatchingDegree.SUPER: 3,
    MatchingDegree.EXACT: 2,
    MatchingDegree.PARTIAL: 1,
    MatchingDegree.FAIL: 0,
    MatchingDegree.NOSPEC: 0,
}


def oracle_match(
    catalog: Catalog, request: ServiceRequest, *, strict_missing: bool = False
) -> MatchRanking:
    reports = []
    for svc in catalog.services:
        results = []
        feasible = True
        total_points = 0
        total_violation = 0
        for c in request.constraints:
            prop = catalog.property_schema(c.property_id)
            spec = svc.spec(c.property_id)
            if prop.kind is Kind.FEATURE_LIST:
                provided = spec if spec else frozenset()
                solution = frozenset(provided) & c.value
                if not provided:
                    degree = MatchingDegree.NOSPEC
                elif not solution:
                    degree = MatchingDegree.FAIL
                elif len(c.value) > len(solution):
                    degree = MatchingDegree.PARTIAL
                elif len(provided) == len(solution):
                    degree = MatchingDegree.EXACT
                else:
                    degree = MatchingDegree.SUPER
                points = _POINTS[degree]
                total_points += points
                if degree is MatchingDegree.FAIL:
                    feasible = False
                if strict_missing and degree is MatchingDegree.NOSPEC:
                    feasible = False
                results.append(
                    PropertyResult(
                        property_id=c.property_id,
                        degree=degree,
                        points=points,
                        violation=0,
                        solution_set=tuple(sorted(solution)),
                    )
                )
                continue

            operator = _effective_operator(prop, c)
            satisfied = spec is not None and _holds(spec, operator, c.value)
            if spec is None:
                degree = MatchingDegree.NOSPEC
            elif satisfied:
                degree = MatchingDegree.EXACT
            else:
                degree = MatchingDegree.FAIL
            if c.mode is Mode.HARD:
                points = _POINTS[degree]
                total_points += points
                if degree is MatchingDegree.FAIL:
                    feasible = False
                if strict_missing and degree is MatchingDegree.NOSPEC:
                    feasible = False
                results.append(
                    PropertyResult(
                        property_id=c.property_id, degree=degree, points=points, violation=0
                    )
                )
            else:
                violation = _violation(catalog, request, c, spec, satisfied)
                total_violation += violation
                results.append(
                    PropertyResult(
                        property_id=c.property_id, degree=degree, points=0, violation=violation
                    )
                )
        reports.append(
            MatchReport(
                service_id=svc.service_id,
                name=svc.name,
                property_results=tuple(results),
                total_points=total_points,
                total_violation=total_violation,
                final_score=total_points - total_violation,
                hard_feasible=feasible,
            )
        )
    reports.sort(
        key=lambda r: (not r.hard_feasible, -r.final_score, r.total_violation, r.service_id)
    )
    return MatchRanking(reports=tuple(reports))


def _holds(left: int, operator: str, right: int) -> bool:
    if operator == "=":
        return left == right
    if operator == "<=":
        return left <= right
    return left >= right


def _effective_operator(prop, constraint) -> str:
    if prop.tendency is Tendency.REQUESTER_DEFINED:
        return ">=" if constraint.direction is Direction.HIGH else "<="
    if prop.kind in (Kind.DISCRETE, Kind.ENUMERATION):
        return "="
    return "<=" if prop.tendency is Tendency.LOW else ">="


def _violation(catalog, request, constraint, spec, satisfied) -> int:
    weight = constraint.weight
    if request.objective_mode is ObjectiveMode.BOOLEAN:
        return 0 if satisfied else weight
    known = [v for v in catalog.column(constraint.property_id) if v is not None]
    spread = max(known) - min(known) if known else 0
    distance = abs(spec - constraint.value) if spec is not None else spread
    if not request.normalize:
        return weight * distance
    per_service = [
        abs(v - constraint.value) if v is not None else spread
        for v in catalog.column(constraint.property_id)
    ]
    worst = max(per_service)
    if worst == 0:
        return 0
    return weight * ((2000 * distance + worst) // (2 * worst))

"""Per-service match reports and the final ranking.

Ranking points for hard constraints follow the degree scheme
SUPER=3, EXACT=2, PARTIAL=1, FAIL=0, NOSPEC=0; soft constraints contribute
weighted violations instead, and the final score is points minus
violations.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..catalog import Mode, ServiceRequest
from .degrees import MatchingDegree

POINTS = {
    MatchingDegree.SUPER: 3,
    MatchingDegree.EXACT: 2,
    MatchingDegree.PARTIAL: 1,
    MatchingDegree.FAIL: 0,
    MatchingDegree.NOSPEC: 0,
}


@dataclass(frozen=True)
class PropertyResult:
    property_id: str
    degree: MatchingDegree
    points: int
    violation: int
    solution_set: tuple[int, ...] | None = None  # feature lists only


@dataclass(frozen=True)
class MatchReport:
    service_id: int
    name: str
    property_results: tuple[PropertyResult, ...]
    total_points: int
    total_violation: int
    final_score: int
    hard_feasible: bool


@dataclass(frozen=True)
class MatchRanking:
    reports: tuple[MatchReport, ...]

    def feasible(self) -> tuple[MatchReport, ...]:
        return tuple(r for r in self.reports if r.hard_feasible)


def score(
    service_id: int,
    name: str,
    results: Sequence[PropertyResult],
    request: ServiceRequest,
    *,
    strict_missing: bool = False,
    total_violation: int | None = None,
    scalar_feasibility: bool | None = None,
) -> MatchReport:
    """Assemble one service's report from its per-property results.

    ``total_violation`` lets the caller install the solver's violation sum;
    the default is the sum over the per-property results.
    ``scalar_feasibility`` overrides the degree-based feasibility check for
    scalar hard constraints (the solver's verdict); feature-list failures
    always count.
    """
    total_points = sum(r.points for r in results)
    violation = total_violation if total_violation is not None else sum(
        r.violation for r in results
    )
    feasible = True
    for r in results:
        constraint = request.constraint_for(r.property_id)
        if constraint is None or constraint.mode is not Mode.HARD:
            continue
        is_feature = r.solution_set is not None
        if not is_feature and scalar_feasibility is not None:
            continue  # solver verdict applied below
        if r.degree is MatchingDegree.FAIL:
            feasible = False
        elif strict_missing and r.degree is MatchingDegree.NOSPEC:
            feasible = False
    if scalar_feasibility is not None and not scalar_feasibility:
        feasible = False
    return MatchReport(
        service_id=service_id,
        name=name,
        property_results=tuple(results),
        total_points=total_points,
        total_violation=violation,
        final_score=total_points - violation,
        hard_feasible=feasible,
    )


def ranking_key(report: MatchReport) -> tuple:
    """Feasible first, then score descending, violation ascending, id."""
    return (not report.hard_feasible, -report.final_score, report.total_violation, report.service_id)


def sort_ranking(reports: Sequence[MatchReport]) -> MatchRanking:
    return MatchRanking(reports=tuple(sorted(reports, key=ranking_key)))

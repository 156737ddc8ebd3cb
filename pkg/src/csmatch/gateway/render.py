"""Document and table rendering for rankings and service summaries."""

from __future__ import annotations

from ..catalog import Catalog, Kind, ServiceRequest, request_to_document, unscale_value
from ..matching import MatchRanking, MatchReport

DEGREE_GLYPHS = {
    "SUPER": "++",
    "EXACT": "=",
    "PARTIAL": "~",
    "FAIL": "x",
    "NOSPEC": "?",
}


def service_summary(catalog: Catalog, service_id: int) -> dict:
    """Raw display values: scalars unscaled, enum codes as labels."""
    svc = catalog.services[service_id]
    specs = {}
    for prop in catalog.schema:
        value = svc.spec(prop.property_id)
        if value is None:
            specs[prop.property_id] = None
        elif prop.kind is Kind.FEATURE_LIST:
            specs[prop.property_id] = [prop.label_of(code) for code in sorted(value)]
        elif prop.kind is Kind.ENUMERATION:
            specs[prop.property_id] = prop.label_of(value)
        else:
            specs[prop.property_id] = unscale_value(value, prop.scale)
    return {"service_id": svc.service_id, "name": svc.name, "specs": specs}


def schema_document(catalog: Catalog) -> list[dict]:
    out = []
    for prop in catalog.schema:
        entry = {
            "id": prop.property_id,
            "display_name": prop.display_name,
            "kind": prop.kind.value,
            "tendency": prop.tendency.value,
            "unit": prop.unit,
            "scale": prop.scale,
        }
        if prop.enum_values is not None:
            entry["enum_values"] = list(prop.enum_values)
        out.append(entry)
    return out


def report_document(catalog: Catalog, report: MatchReport) -> dict:
    properties = []
    for r in report.property_results:
        prop = catalog.property_schema(r.property_id)
        entry = {
            "property": r.property_id,
            "degree": r.degree.value,
            "points": r.points,
            "violation": r.violation,
        }
        if r.solution_set is not None:
            entry["solution_set"] = [prop.label_of(code) for code in r.solution_set]
        properties.append(entry)
    return {
        "service_id": report.service_id,
        "name": report.name,
        "hard_feasible": report.hard_feasible,
        "total_points": report.total_points,
        "total_violation": report.total_violation,
        "final_score": report.final_score,
        "properties": properties,
    }


def match_response_document(
    catalog: Catalog, request: ServiceRequest, ranking: MatchRanking, timing_ms: int
) -> dict:
    return {
        "request_echo": request_to_document(request, catalog),
        "ranking": [report_document(catalog, r) for r in ranking.reports],
        "timing_ms": timing_ms,
    }


def ranking_table(catalog: Catalog, request: ServiceRequest, ranking: MatchRanking) -> str:
    """Fixed-width comparison table with one degree glyph per property."""
    property_ids = [c.property_id for c in request.constraints]
    headers = ["rank", "service", "feasible", "score", "violation", *property_ids]
    rows = []
    for rank, report in enumerate(ranking.reports, start=1):
        degree_by_pid = {r.property_id: DEGREE_GLYPHS[r.degree.value] for r in report.property_results}
        rows.append(
            [
                str(rank),
                report.name,
                "yes" if report.hard_feasible else "NO",
                str(report.final_score),
                str(report.total_violation),
                *[degree_by_pid.get(pid, "") for pid in property_ids],
            ]
        )
    widths = [max(len(h), *(len(row[i]) for row in rows)) if rows else len(h) for i, h in enumerate(headers)]
    lines = [
        "  ".join(h.ljust(widths[i]) for i, h in enumerate(headers)),
        "  ".join("-" * widths[i] for i in range(len(headers))),
    ]
    for row in rows:
        lines.append("  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)))
    return "\n".join(lines)

"""CLI and HTTP exposure of the matchmaking engine."""

from .http import create_app
from .render import (
    match_response_document,
    ranking_table,
    report_document,
    schema_document,
    service_summary,
)

__all__ = [
    "create_app",
    "match_response_document",
    "ranking_table",
    "report_document",
    "schema_document",
    "service_summary",
]

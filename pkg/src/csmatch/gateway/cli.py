"""Command-line interface.

Exit codes: 0 success (match: at least one feasible service), 1 validation
failure, 2 I/O or startup failure, 3 over-constrained request (no feasible
service).  Diagnostics go to stderr; `validate` lists violations on stdout
as its primary output.
"""

from __future__ import annotations

import json
import logging
import os
import socket
import sys
import time
from pathlib import Path

import click

from ..catalog import (
    Catalog,
    ParseError,
    ServiceRequest,
    ValidationError,
    load_catalog,
    load_request,
)
from ..matching import match as run_match
from .render import match_response_document, ranking_table

_LOG_LEVELS = {"error": logging.ERROR, "warn": logging.WARNING, "info": logging.INFO, "debug": logging.DEBUG}

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_IO = 2
EXIT_OVERCONSTRAINED = 3


def _setup_logging() -> None:
    level = _LOG_LEVELS.get(os.environ.get("CSM_LOG", "warn").lower(), logging.WARNING)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")


def _read(path: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        click.echo(f"cannot read {path}: {exc.strerror or exc}", err=True)
        raise SystemExit(EXIT_IO)


def _load_catalog_or_exit(path: str) -> Catalog:
    try:
        return load_catalog(_read(path))
    except (ParseError, ValidationError) as exc:
        click.echo(f"invalid catalog {path}:", err=True)
        click.echo(str(exc), err=True)
        raise SystemExit(EXIT_VALIDATION)


def _load_request_or_exit(path: str, catalog: Catalog) -> ServiceRequest:
    try:
        return load_request(_read(path), catalog)
    except (ParseError, ValidationError) as exc:
        click.echo(f"invalid request {path}:", err=True)
        click.echo(str(exc), err=True)
        raise SystemExit(EXIT_VALIDATION)


@click.group()
def main() -> None:
    """QoS service matchmaking over JSON catalogs."""
    _setup_logging()


@main.command(name="match")
@click.option("--catalog", "catalog_path", required=True, help="catalog document path")
@click.option("--request", "request_path", required=True, help="request document path")
@click.option("--output", type=click.Choice(["table", "json"]), default="table")
@click.option("--strict-missing", is_flag=True, help="missing specs on hard constraints disqualify")
@click.option("--normalize-diff", is_flag=True, help="normalize difference violations to 0..1000 per property")
def match_command(
    catalog_path: str, request_path: str, output: str, strict_missing: bool, normalize_diff: bool
) -> None:
    """Rank catalog services against a request."""
    catalog = _load_catalog_or_exit(catalog_path)
    request = _load_request_or_exit(request_path, catalog)
    if normalize_diff:
        request = ServiceRequest(
            constraints=request.constraints,
            objective_mode=request.objective_mode,
            normalize=True,
        )
    started = time.perf_counter()
    ranking = run_match(catalog, request, strict_missing=strict_missing)
    timing_ms = int((time.perf_counter() - started) * 1000)
    if output == "json":
        document = match_response_document(catalog, request, ranking, timing_ms)
        click.echo(json.dumps(document, indent=2, ensure_ascii=False))
    else:
        click.echo(ranking_table(catalog, request, ranking))
    if not any(r.hard_feasible for r in ranking.reports):
        raise SystemExit(EXIT_OVERCONSTRAINED)


@main.command(name="validate")
@click.option("--catalog", "catalog_path", required=True)
@click.option("--request", "request_path", default=None)
def validate_command(catalog_path: str, request_path: str | None) -> None:
    """Check documents; list every violation, one per line."""
    issues: list[str] = []
    catalog = None
    try:
        catalog = load_catalog(_read(catalog_path))
    except ParseError as exc:
        issues.append(f"catalog: {exc}")
    except ValidationError as exc:
        issues.extend(f"catalog {path}: {message}" for path, message in exc.issues)
    if request_path is not None and catalog is not None:
        try:
            load_request(_read(request_path), catalog)
        except ParseError as exc:
            issues.append(f"request: {exc}")
        except ValidationError as exc:
            issues.extend(f"request {path}: {message}" for path, message in exc.issues)
    for line in issues:
        click.echo(line)
    if issues:
        raise SystemExit(EXIT_VALIDATION)


@main.command(name="serve")
@click.option("--catalog", "catalog_path", required=True)
@click.option("--port", type=int, default=8000)
@click.option("--host", default="127.0.0.1")
@click.option("--strict-missing", is_flag=True)
def serve_command(catalog_path: str, port: int, host: str, strict_missing: bool) -> None:
    """Serve the HTTP API over an immutable catalog."""
    import uvicorn

    from .http import create_app

    try:
        catalog = load_catalog(_read(catalog_path))
    except (ParseError, ValidationError) as exc:
        click.echo(f"invalid catalog {catalog_path}:", err=True)
        click.echo(str(exc), err=True)
        raise SystemExit(EXIT_IO)
    probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    # match uvicorn's bind semantics: TIME_WAIT leftovers must not count as busy
    probe.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
    try:
        probe.bind((host, port))
    except OSError as exc:
        click.echo(f"cannot bind {host}:{port}: {exc.strerror or exc}", err=True)
        raise SystemExit(EXIT_IO)
    finally:
        probe.close()
    app = create_app(catalog, strict_missing=strict_missing)
    log_level = os.environ.get("CSM_LOG", "warning").lower()
    if log_level == "warn":
        log_level = "warning"
    uvicorn.run(app, host=host, port=port, log_level=log_level)


if __name__ == "__main__":
    main()

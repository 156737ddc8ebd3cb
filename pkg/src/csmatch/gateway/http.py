"""HTTP service over an immutable catalog.

Each match request constructs private solver state, so concurrent requests
need no coordination.  Validation failures come back as 422 with one
detail entry per issue.
"""

from __future__ import annotations

import json
import logging
import time

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from ..catalog import Catalog, ParseError, ValidationError, load_request
from ..matching import match
from .render import match_response_document, schema_document, service_summary

log = logging.getLogger("csmatch.gateway")


def create_app(catalog: Catalog, *, strict_missing: bool = False) -> FastAPI:
    app = FastAPI(title="csmatch", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok"}

    @app.get("/api/properties")
    def properties() -> list:
        return schema_document(catalog)

    @app.get("/api/services")
    def services() -> list:
        return [service_summary(catalog, svc.service_id) for svc in catalog.services]

    @app.get("/api/services/{service_id}")
    def service(service_id: int):
        if not 0 <= service_id < len(catalog.services):
            return JSONResponse(
                status_code=404, content={"detail": f"no service with id {service_id}"}
            )
        return service_summary(catalog, service_id)

    @app.post("/api/match")
    async def run_match(request: Request):
        body = await request.body()
        try:
            service_request = load_request(body, catalog)
        except ParseError as exc:
            return JSONResponse(status_code=422, content={"detail": [{"message": str(exc)}]})
        except ValidationError as exc:
            detail = [{"path": path, "message": message} for path, message in exc.issues]
            return JSONResponse(status_code=422, content={"detail": detail})
        started = time.perf_counter()
        ranking = match(catalog, service_request, strict_missing=strict_missing)
        timing_ms = int((time.perf_counter() - started) * 1000)
        log.info("matched %d services in %dms", len(ranking.reports), timing_ms)
        return match_response_document(catalog, service_request, ranking, timing_ms)

    return app

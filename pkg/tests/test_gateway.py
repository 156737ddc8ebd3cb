"""Gateway: CLI exit-code contract, HTTP endpoints, transport equivalence."""

import json
import subprocess
import sys
from pathlib import Path

import pytest
from fastapi.testclient import TestClient

import csmatch.catalog as cat
from csmatch.gateway import create_app

FIXTURES = Path(__file__).parent.parent / "fixtures"
CATALOG = FIXTURES / "dbapp_catalog.json"


def run_cli(*args: str) -> subprocess.CompletedProcess:
    return subprocess.run(
        [sys.executable, "-m", "csmatch.gateway.cli", *args],
        capture_output=True,
        text=True,
        timeout=60,
    )


@pytest.fixture(scope="module")
def catalog():
    return cat.load_catalog(CATALOG.read_bytes())


@pytest.fixture(scope="module")
def client(catalog):
    return TestClient(create_app(catalog))


class TestCliMatch:
    def test_overconstrained_exit_3_table_lists_all(self):
        proc = run_cli(
            "match", "--catalog", str(CATALOG), "--request", str(FIXTURES / "dbapp_request_hard.json")
        )
        assert proc.returncode == 3
        lines = [l for l in proc.stdout.splitlines() if l.startswith(("1", "2", "3"))]
        assert len(lines) == 3

    def test_feasible_exit_0(self):
        proc = run_cli(
            "match", "--catalog", str(CATALOG), "--request", str(FIXTURES / "dbapp_request_soft.json")
        )
        assert proc.returncode == 0

    def test_missing_catalog_exit_2_names_path(self):
        proc = run_cli("match", "--catalog", "/nonexistent/cat.json", "--request", str(CATALOG))
        assert proc.returncode == 2
        assert "/nonexistent/cat.json" in proc.stderr

    def test_json_output_parses_as_match_response(self):
        proc = run_cli(
            "match",
            "--catalog",
            str(CATALOG),
            "--request",
            str(FIXTURES / "dbapp_request_soft.json"),
            "--output",
            "json",
        )
        doc = json.loads(proc.stdout)
        assert set(doc) == {"request_echo", "ranking", "timing_ms"}
        assert len(doc["ranking"]) == 3
        assert doc["timing_ms"] >= 0

    def test_validation_failure_exit_1(self, tmp_path):
        bad = tmp_path / "req.json"
        bad.write_text(json.dumps({"constraints": [], "objective": "boolean"}))
        proc = run_cli("match", "--catalog", str(CATALOG), "--request", str(bad))
        assert proc.returncode == 1
        assert "constraints" in proc.stderr


class TestCliValidate:
    def test_valid_fixture_silent_success(self):
        proc = run_cli("validate", "--catalog", str(CATALOG))
        assert proc.returncode == 0
        assert proc.stdout == ""

    def test_single_error_single_line(self, tmp_path):
        doc = json.loads(CATALOG.read_text())
        doc["services"][0]["specs"]["unknown_prop"] = 1
        bad = tmp_path / "cat.json"
        bad.write_text(json.dumps(doc))
        proc = run_cli("validate", "--catalog", str(bad))
        assert proc.returncode == 1
        assert len(proc.stdout.strip().splitlines()) == 1

    def test_two_errors_two_lines_stable_order(self, tmp_path):
        doc = json.loads(CATALOG.read_text())
        doc["services"][0]["specs"]["bad_a"] = 1
        doc["services"][1]["specs"]["bad_b"] = 2
        bad = tmp_path / "cat.json"
        bad.write_text(json.dumps(doc))
        first = run_cli("validate", "--catalog", str(bad))
        second = run_cli("validate", "--catalog", str(bad))
        assert first.returncode == 1
        assert len(first.stdout.strip().splitlines()) == 2
        assert first.stdout == second.stdout

    def test_request_validated_too(self, tmp_path):
        bad = tmp_path / "req.json"
        bad.write_text(
            json.dumps(
                {
                    "constraints": [
                        {"property": "version", "operator": "gte", "value": 5.6, "mode": "hard"}
                    ],
                    "objective": "boolean",
                }
            )
        )
        proc = run_cli("validate", "--catalog", str(CATALOG), "--request", str(bad))
        assert proc.returncode == 1
        assert "operator" in proc.stdout


class TestHttpApi:
    def test_health(self, client):
        assert client.get("/health").json() == {"status": "ok"}

    def test_properties(self, client):
        doc = client.get("/api/properties").json()
        assert [p["id"] for p in doc][:2] == ["version", "response_time"]
        assert doc[6]["enum_values"][0] == "explorer"

    def test_services_summaries(self, client):
        doc = client.get("/api/services").json()
        assert len(doc) == 3
        assert doc[0]["specs"]["version"] == 5.5
        assert doc[0]["specs"]["availability"] == 99.99
        assert doc[2]["specs"]["pricing"] == "per hour"

    def test_single_service_and_404(self, client):
        assert client.get("/api/services/1").json()["name"] == "App X aaS by Provider #2"
        assert client.get("/api/services/9").status_code == 404

    def test_match_valid(self, client):
        body = json.loads((FIXTURES / "dbapp_request_soft.json").read_text())
        response = client.post("/api/match", json=body)
        assert response.status_code == 200
        doc = response.json()
        assert [r["service_id"] for r in doc["ranking"]] == [1, 2, 0]

    def test_match_invalid_body_422_with_details(self, client):
        body = {
            "constraints": [
                {"property": "version", "operator": "gte", "value": 5.6, "mode": "hard"}
            ],
            "objective": "boolean",
        }
        response = client.post("/api/match", json=body)
        assert response.status_code == 422
        detail = response.json()["detail"]
        assert any("operator" in d.get("path", "") for d in detail)

    def test_statelessness(self, client):
        body = json.loads((FIXTURES / "dbapp_request_hard.json").read_text())
        first = client.post("/api/match", json=body).json()
        second = client.post("/api/match", json=body).json()
        assert first["ranking"] == second["ranking"]
        assert first["request_echo"] == second["request_echo"]


class TestTransportEquivalence:
    @pytest.mark.parametrize(
        "request_name",
        ["dbapp_request_hard.json", "dbapp_request_soft.json", "dbapp_request_version_diff.json"],
    )
    def test_cli_json_equals_http(self, client, request_name):
        proc = run_cli(
            "match",
            "--catalog",
            str(CATALOG),
            "--request",
            str(FIXTURES / request_name),
            "--output",
            "json",
        )
        cli_doc = json.loads(proc.stdout)
        body = json.loads((FIXTURES / request_name).read_text())
        http_doc = client.post("/api/match", json=body).json()
        assert cli_doc["ranking"] == http_doc["ranking"]
        assert cli_doc["request_echo"] == http_doc["request_echo"]

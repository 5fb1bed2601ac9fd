"""HTTP surface: routes, status codes, and byte-stable payloads."""

import json

import pytest
from fastapi.testclient import TestClient

from ddchaos.reporting import TRACE_HEADER
from ddchaos.service import create_app


@pytest.fixture(scope="module")
def client():
    with TestClient(create_app()) as c:
        yield c


def test_health(client):
    r = client.get("/health")
    assert r.status_code == 200
    assert r.json() == {"status": "ok"}


def test_scenarios_listing(client):
    r = client.get("/scenarios")
    assert r.status_code == 200
    rows = r.json()["scenarios"]
    assert len(rows) >= 18
    assert all(set(row) == {"name", "summary"} for row in rows)


def test_describe_route(client):
    r = client.get("/scenarios/sunce")
    assert r.status_code == 200
    body = r.json()
    assert body["name"] == "two-speed-forward-shifts"
    assert "b1 = 2" in body["description"]


def test_describe_unknown_is_404(client):
    r = client.get("/scenarios/nonexistent")
    assert r.status_code == 404
    assert "unknown scenario" in r.json()["error"]


def test_run_route_reports_claims(client):
    r = client.post("/scenarios/shared-upper-split-lower/run", json={})
    assert r.status_code == 200
    body = r.json()
    assert body["all_match"] is True
    assert body["seed"] == 20240717


def test_run_route_accepts_overrides(client):
    r = client.post(
        "/scenarios/shared-upper-split-lower/run", json={"delta": 0.0}
    )
    assert r.status_code == 200
    assert r.json()["parameters"]["delta"] == 0.0


def test_run_unknown_scenario_404(client):
    r = client.post("/scenarios/nope/run", json={})
    assert r.status_code == 404


def test_run_is_byte_deterministic(client):
    a = client.post("/scenarios/jump-shift-chain/run", json={})
    b = client.post("/scenarios/jump-shift-chain/run", json={})
    assert a.status_code == b.status_code == 200
    assert a.content == b.content


def test_trace_route_returns_csv(client):
    r = client.get(
        "/scenarios/alternating-diagonals/trace", params={"horizon": 200}
    )
    assert r.status_code == 200
    assert r.headers["content-type"].startswith("text/csv")
    assert r.text.splitlines()[0] == TRACE_HEADER


def test_trace_route_plot_table(client):
    r = client.get(
        "/scenarios/alternating-diagonals/trace",
        params={"horizon": 200, "table": "plot"},
    )
    assert r.status_code == 200
    assert r.text.splitlines()[0].startswith("k,upper_density_1")


def test_trace_route_rejects_unknown_table(client):
    r = client.get(
        "/scenarios/alternating-diagonals/trace",
        params={"horizon": 200, "table": "wat"},
    )
    assert r.status_code == 400


def test_density_route(client):
    r = client.post(
        "/density", json={"kind": "exact", "progressions": [[1, 3]]}
    )
    assert r.status_code == 200
    assert r.json()["density_fraction"] == "1/3"


def test_density_route_bad_kind_400(client):
    r = client.post("/density", json={"kind": "wat"})
    assert r.status_code == 400


def test_classify_route(client):
    r = client.post(
        "/classify",
        json={
            "scenario": "uniform-weight-shifts",
            "vector": [[80, 1.0]],
            "condition": 3,
            "horizon": 60,
        },
    )
    assert r.status_code == 200
    body = r.json()
    assert body["condition"] == 3
    assert isinstance(body["holds"], bool)


def test_classify_unknown_scenario_404(client):
    r = client.post(
        "/classify", json={"scenario": "nope", "vector": [[1, 1.0]]}
    )
    assert r.status_code == 404


def test_reports_render_with_fixed_field_order(client):
    r = client.post("/scenarios/shared-upper-split-lower/run", json={})
    keys = list(json.loads(r.content))
    assert keys == [
        "scenario",
        "summary",
        "parameters",
        "seed",
        "claims",
        "all_match",
        "notes",
    ]

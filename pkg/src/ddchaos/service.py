"""HTTP facade over the scenario registry.

Every JSON body is rendered by the canonical serializer, so identical
requests produce byte-identical responses; the CLI passes those bytes
through untouched.
"""

from __future__ import annotations

from fastapi import FastAPI, Query
from fastapi.responses import PlainTextResponse, Response
from pydantic import BaseModel, ConfigDict

from . import scenarios
from .reporting import canonical_json, format_trace_csv, plot_tables


class RunRequest(BaseModel):
    horizon: int | None = None
    delta: float | None = None
    sigma: float | None = None
    eps: float | None = None
    seed: int = scenarios.DEFAULT_SEED


class DensityRequest(BaseModel):
    model_config = ConfigDict(extra="allow")

    kind: str


class ClassifyRequest(BaseModel):
    model_config = ConfigDict(extra="allow")

    scenario: str


def _json(payload, status_code: int = 200) -> Response:
    return Response(
        content=canonical_json(payload),
        media_type="application/json",
        status_code=status_code,
    )


def create_app() -> FastAPI:
    app = FastAPI(title="ddchaos", docs_url=None, redoc_url=None)

    @app.get("/health")
    def health() -> Response:
        return _json({"status": "ok"})

    @app.get("/scenarios")
    def scenario_list() -> Response:
        return _json({"scenarios": scenarios.list_scenarios()})

    @app.get("/scenarios/{name}")
    def describe(name: str) -> Response:
        try:
            return _json(scenarios.describe_scenario(name))
        except scenarios.UnknownScenarioError:
            return _json({"error": f"unknown scenario: {name}"}, 404)

    @app.post("/scenarios/{name}/run")
    def run(name: str, body: RunRequest | None = None) -> Response:
        req = body or RunRequest()
        overrides = {
            k: getattr(req, k) for k in ("horizon", "delta", "sigma", "eps")
        }
        try:
            report = scenarios.run_scenario(name, overrides, seed=req.seed)
        except scenarios.UnknownScenarioError:
            return _json({"error": f"unknown scenario: {name}"}, 404)
        except ValueError as exc:
            return _json({"error": str(exc)}, 400)
        return _json(report)

    @app.get("/scenarios/{name}/trace")
    def trace(
        name: str,
        horizon: int | None = Query(default=None),
        sigma: float | None = Query(default=None),
        eps: float | None = Query(default=None),
        table: str = Query(default="sets"),
    ) -> Response:
        overrides = {"horizon": horizon, "sigma": sigma, "eps": eps}
        try:
            bundle = scenarios.scenario_trace(name, overrides)
        except scenarios.UnknownScenarioError:
            return _json({"error": f"unknown scenario: {name}"}, 404)
        except ValueError as exc:
            return _json({"error": str(exc)}, 400)
        if table == "plot":
            text = plot_tables(bundle)
        elif table == "sets":
            text = format_trace_csv(bundle)
        else:
            return _json({"error": f"unknown table kind: {table}"}, 400)
        return PlainTextResponse(text, media_type="text/csv")

    @app.post("/density")
    def density(body: DensityRequest) -> Response:
        try:
            return _json(scenarios.density_report(body.model_dump()))
        except (ValueError, KeyError, TypeError) as exc:
            return _json({"error": f"bad set literal: {exc}"}, 400)

    @app.post("/classify")
    def classify(body: ClassifyRequest) -> Response:
        try:
            return _json(scenarios.classify_report(body.model_dump()))
        except scenarios.UnknownScenarioError as exc:
            return _json({"error": f"unknown scenario: {exc.args[0]}"}, 404)
        except (ValueError, KeyError, TypeError) as exc:
            return _json({"error": f"bad classify request: {exc}"}, 400)

    return app


app = create_app()

"""HTTP surface: one endpoint per command, wrapping the shared handlers.

Requests carry the graph as MGF text; responses use the same report schema
the CLI prints ({command, input_hash, verdict, witness?, certificate?,
budget_used}), plus the exit code the CLI would have returned.
"""
from __future__ import annotations

from typing import Any, Optional

from fastapi import FastAPI
from pydantic import BaseModel, Field

from .handlers import CommandResult, run_command


class GraphRequest(BaseModel):
    mgf: str = Field(description="graph document in MGF format")
    budget: Optional[int] = None


class SzkRequest(GraphRequest):
    k: int = 5


class OrientRequest(GraphRequest):
    k: int = 5
    beta: list[int]


class CircularRequest(GraphRequest):
    t: int = 2


class Enumerate4vRequest(BaseModel):
    min_edges: int = 12
    max_edges: int = 13
    mu_max: int = 4
    require_trees: int = 4
    jobs: int = 1


class Report(BaseModel):
    command: str
    input_hash: Optional[str] = None
    verdict: Any = None
    witness: Any = None
    certificate: Any = None
    budget_used: int = 0
    cached: Optional[bool] = None
    error: Optional[str] = None
    exit_code: int


def _to_report(result: CommandResult) -> Report:
    return Report(**result.report, exit_code=result.exit_code)


def create_app() -> FastAPI:
    app = FastAPI(title="betaorient", version="0.1.0")

    @app.get("/v1/health")
    def health() -> dict:
        return {"status": "ok"}

    def graph_endpoint(command: str):
        def run(req: GraphRequest) -> Report:
            opts = {"budget": req.budget}
            return _to_report(run_command(command, req.mgf, opts))

        return run

    for command in ("weight", "contractible", "reduce", "discharge", "scan", "trees"):
        app.post(f"/v1/{command}", response_model=Report)(graph_endpoint(command))

    @app.post("/v1/szk", response_model=Report)
    def szk(req: SzkRequest) -> Report:
        return _to_report(run_command("szk", req.mgf, {"k": req.k, "budget": req.budget}))

    @app.post("/v1/orient", response_model=Report)
    def orient(req: OrientRequest) -> Report:
        opts = {"k": req.k, "beta": req.beta, "budget": req.budget}
        return _to_report(run_command("orient", req.mgf, opts))

    @app.post("/v1/mod-orient", response_model=Report)
    def mod_orient(req: SzkRequest) -> Report:
        return _to_report(
            run_command("mod-orient", req.mgf, {"k": req.k, "budget": req.budget})
        )

    @app.post("/v1/circular", response_model=Report)
    def circular(req: CircularRequest) -> Report:
        return _to_report(run_command("circular", req.mgf, {"t": req.t, "budget": req.budget}))

    @app.post("/v1/asf", response_model=Report)
    def asf(req: GraphRequest) -> Report:
        return _to_report(run_command("asf", req.mgf, {"budget": req.budget}))

    @app.post("/v1/enumerate4v", response_model=Report)
    def enumerate4v(req: Enumerate4vRequest) -> Report:
        return _to_report(run_command("enumerate4v", None, req.model_dump()))

    return app


app = create_app()

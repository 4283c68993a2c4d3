"""FastAPI application wrapping the handler functions.

Stateless: every request carries its whole state; malformed payloads give
400, domain errors 422, internal invariant breaches 500.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from . import handlers as H
from . import models as M


def create_app() -> FastAPI:
    app = FastAPI(title="superclus", version="0.1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(RequestValidationError)
    async def malformed(request: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=400,
            content={"error": "MalformedRequest", "detail": str(exc.errors()[:3])},
        )

    @app.exception_handler(H.DomainError)
    async def domain_error(request: Request, exc: H.DomainError):
        return JSONResponse(
            status_code=422, content={"error": "DomainError", "detail": str(exc)}
        )

    @app.exception_handler(H.InternalInvariantError)
    async def invariant_error(request: Request, exc: H.InternalInvariantError):
        return JSONResponse(
            status_code=500,
            content={"error": "InternalInvariantError", "detail": str(exc)},
        )

    @app.get("/healthz")
    def healthz():
        return {"status": "ok"}

    @app.post("/validate", response_model=M.ValidateResponse)
    def validate(req: M.ValidateRequest):
        return H.validate(req)

    @app.post("/allowed", response_model=M.AllowedResponse)
    def allowed(req: M.AllowedRequest):
        return H.allowed(req)

    @app.post("/mutate", response_model=M.MutateResponse)
    def mutate(req: M.MutateRequest):
        return H.mutate(req)

    @app.post("/mutate-quiver", response_model=M.QuiverMutateResponse)
    def mutate_quiver(req: M.QuiverMutateRequest):
        return H.mutate_quiver(req)

    @app.post("/omega", response_model=M.OmegaResponse)
    def omega(req: M.OmegaRequest):
        return H.omega(req)

    @app.post("/frieze", response_model=M.FriezeResponse)
    def frieze(req: M.FriezeRequest):
        return H.build_frieze(req)

    @app.post("/sequence", response_model=M.SequenceResponse)
    def sequence(req: M.SequenceRequest):
        return H.sequence(req)

    @app.post("/explore", response_model=M.ExploreResponse)
    def explore(req: M.ExploreRequest):
        return H.explore(req)

    @app.post("/cyclic", response_model=M.CyclicResponse)
    def cyclic(req: M.CyclicRequest):
        return H.cyclic(req)

    return app


app = create_app()

"""FastAPI service exposing the library operations over HTTP.

Routes mirror the CLI verbs one-to-one and delegate to the shared
handlers; all payloads are JSON tagged with {"schema": "soper/1"}.
"""

from __future__ import annotations

from typing import Any, Optional

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from . import handlers
from .handlers import DomainError
from .serialize import ParseError


class MapRequest(BaseModel):
    n: int = Field(default=4, ge=1, le=63)
    map: dict[str, Any]


class ConnectionRequest(BaseModel):
    n: int = Field(default=4, ge=1, le=63)
    connection: dict[str, Any]


class CoordsRequest(BaseModel):
    n: int = Field(default=4, ge=1, le=63)
    connection: dict[str, Any]
    map: Optional[dict[str, Any]] = None
    to_infinity: bool = False


class GaugeRequest(BaseModel):
    n: int = Field(default=4, ge=1, le=63)
    connection: dict[str, Any]
    gauge: dict[str, Any]


class SystemRequest(BaseModel):
    n: int = Field(default=4, ge=1, le=63)
    system: dict[str, Any]
    m: Optional[int] = None
    threads: Optional[int] = None


def _call(handler, payload, **kw):
    try:
        return handler(payload, **kw)
    except ParseError as exc:
        raise HTTPException(status_code=422, detail=str(exc))
    except DomainError as exc:
        raise HTTPException(status_code=400, detail=str(exc))


def create_app():
    app = FastAPI(title="soper", version="0.1.0")

    @app.get("/v1/health")
    def health():
        return {"schema": handlers.SCHEMA, "status": "ok"}

    @app.post("/v1/schwarzian")
    def schwarzian(req: MapRequest):
        return _call(handlers.handle_schwarzian, req.model_dump())

    @app.post("/v1/canonicalize")
    def canonicalize(req: ConnectionRequest):
        return _call(handlers.handle_canonicalize, req.model_dump())

    @app.post("/v1/square")
    def square(req: ConnectionRequest):
        return _call(handlers.handle_square, req.model_dump())

    @app.post("/v1/coords")
    def coords(req: CoordsRequest):
        return _call(handlers.handle_coords, req.model_dump())

    @app.post("/v1/gauge")
    def gauge(req: GaugeRequest):
        return _call(handlers.handle_gauge, req.model_dump())

    @app.post("/v1/gaudin/build")
    def gaudin_build(req: SystemRequest):
        return _call(handlers.handle_gaudin_build, req.model_dump())

    @app.post("/v1/gaudin/infinity")
    def gaudin_infinity(req: SystemRequest):
        return _call(handlers.handle_infinity, req.model_dump())

    @app.post("/v1/bethe/solve")
    def bethe_solve(req: SystemRequest):
        return _call(handlers.handle_bethe_solve, req.model_dump(),
                     threads=req.threads)

    @app.post("/v1/bethe/check")
    def bethe_check(req: SystemRequest):
        return _call(handlers.handle_bethe_check, req.model_dump())

    @app.post("/v1/bethe/potential")
    def bethe_potential(req: SystemRequest):
        return _call(handlers.handle_bethe_potential, req.model_dump())

    return app


app = create_app()

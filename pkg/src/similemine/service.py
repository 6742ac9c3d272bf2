"""HTTP API over the simile store.

Public endpoints: alphabetical browse, stem-folded search, submission
(rate limited, pending until approved) and corpus stats. Curation
endpoints (approve/reject/edit, pending queue) require a bearer token
from /api/login. Every error body is ``{"code": ..., "message": ...}``.
"""

from __future__ import annotations

import os
import time
from collections import deque
from contextlib import asynccontextmanager

from fastapi import Depends, FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel
from starlette.exceptions import HTTPException as StarletteHTTPException

from .corpus import (
    IllegalTransitionError,
    NotASimileError,
    NotFoundError,
    SimileStore,
)

MAX_PHRASE_LEN = 200


class ApiError(Exception):
    def __init__(self, status: int, code: str, message: str, extra: dict | None = None):
        self.status = status
        self.code = code
        self.message = message
        self.extra = extra or {}


class SubmitBody(BaseModel):
    phrase: str
    contributor: str | None = None


class LoginBody(BaseModel):
    username: str
    password: str


class EditBody(BaseModel):
    display_form: str


class RateLimiter:
    """Sliding-window per-client limit; limit <= 0 disables it."""

    def __init__(self, per_minute: int):
        self.per_minute = per_minute
        self._hits: dict[str, deque[float]] = {}

    def check(self, client: str) -> bool:
        if self.per_minute <= 0:
            return True
        now = time.monotonic()
        window = self._hits.setdefault(client, deque())
        while window and now - window[0] > 60.0:
            window.popleft()
        if len(window) >= self.per_minute:
            return False
        window.append(now)
        return True


def create_app(store: SimileStore, static_dir: str | None = None,
               rate_limit_per_min: int = 10, session_ttl_minutes: int = 720) -> FastAPI:
    @asynccontextmanager
    async def lifespan(app: FastAPI):
        yield
        store.close()  # flushes the writer queue on graceful shutdown

    app = FastAPI(title="similemine", docs_url=None, redoc_url=None, lifespan=lifespan)
    limiter = RateLimiter(rate_limit_per_min)

    @app.exception_handler(ApiError)
    async def on_api_error(request: Request, exc: ApiError):
        body = {"code": exc.code, "message": exc.message}
        body.update(exc.extra)
        return JSONResponse(status_code=exc.status, content=body)

    @app.exception_handler(RequestValidationError)
    async def on_validation_error(request: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=422,
            content={"code": "invalid_request", "message": str(exc.errors()[:1])},
        )

    @app.exception_handler(StarletteHTTPException)
    async def on_http_error(request: Request, exc: StarletteHTTPException):
        codes = {404: "not_found", 405: "method_not_allowed"}
        return JSONResponse(
            status_code=exc.status_code,
            content={"code": codes.get(exc.status_code, "error"),
                     "message": str(exc.detail)},
        )

    def require_session(request: Request) -> dict:
        header = request.headers.get("authorization", "")
        token = header.removeprefix("Bearer ").strip()
        session = store.get_session(token) if token else None
        if session is None:
            raise ApiError(401, "unauthorized", "a valid curator session is required")
        return session

    @app.get("/api/similes")
    def list_similes(page: int = 1, page_size: int = 20, sort: str = "alpha"):
        if page < 1 or page_size < 1 or page_size > 100:
            raise ApiError(422, "invalid_request", "page and page_size must be positive")
        if sort != "alpha":
            raise ApiError(422, "invalid_request", f"unknown sort {sort!r}")
        records, total = store.approved_page(page, page_size)
        return {
            "items": [r.to_dict() for r in records],
            "page": page,
            "page_size": page_size,
            "total": total,
            "total_pages": (total + page_size - 1) // page_size,
        }

    @app.get("/api/similes/search")
    def search_similes(q: str):
        return {"query": q, "items": [r.to_dict() for r in store.search(q)]}

    @app.post("/api/similes", status_code=201)
    def submit_simile(body: SubmitBody, request: Request):
        client = request.client.host if request.client else "unknown"
        if not limiter.check(client):
            raise ApiError(429, "rate_limited", "too many submissions, slow down")
        phrase = body.phrase.strip()
        if not phrase or len(phrase) > MAX_PHRASE_LEN:
            raise ApiError(422, "invalid_request",
                           f"phrase must be 1..{MAX_PHRASE_LEN} characters")
        try:
            result = store.upsert(phrase, "manual", submitter=body.contributor)
        except NotASimileError:
            raise ApiError(422, "not_a_simile",
                           "the phrase must contain a connector (kao / ko / k'o)")
        if not result.created:
            raise ApiError(409, "duplicate", "this simile is already in the corpus",
                           {"existing": result.record.to_dict()})
        return {
            "record": result.record.to_dict(),
            "notice": "saved; it will not be visible until a curator approves it",
        }

    @app.post("/api/login")
    def login(body: LoginBody):
        role = store.verify_user(body.username, body.password)
        if role is None:
            raise ApiError(401, "unauthorized", "bad username or password")
        return store.create_session(body.username, role, session_ttl_minutes)

    @app.post("/api/similes/{record_id}/approve")
    def approve(record_id: int, session: dict = Depends(require_session)):
        return {"record": _set_status(record_id, "approved", session).to_dict()}

    @app.post("/api/similes/{record_id}/reject")
    def reject(record_id: int, session: dict = Depends(require_session)):
        return {"record": _set_status(record_id, "rejected", session).to_dict()}

    def _set_status(record_id: int, status: str, session: dict):
        try:
            return store.set_status(record_id, status, session["user"])
        except NotFoundError:
            raise ApiError(404, "not_found", f"no record {record_id}")
        except IllegalTransitionError as exc:
            raise ApiError(409, "illegal_transition", str(exc),
                           {"current_status": exc.current_status})

    @app.put("/api/similes/{record_id}")
    def edit(record_id: int, body: EditBody, session: dict = Depends(require_session)):
        form = body.display_form.strip()
        if not form or len(form) > MAX_PHRASE_LEN:
            raise ApiError(422, "invalid_request",
                           f"display_form must be 1..{MAX_PHRASE_LEN} characters")
        try:
            record = store.edit(record_id, form, session["user"])
        except NotFoundError:
            raise ApiError(404, "not_found", f"no record {record_id}")
        except NotASimileError:
            raise ApiError(422, "not_a_simile",
                           "the phrase must contain a connector (kao / ko / k'o)")
        except IllegalTransitionError as exc:
            raise ApiError(409, "illegal_transition", str(exc),
                           {"current_status": exc.current_status})
        return {"record": record.to_dict(store.revisions(record_id))}

    @app.get("/api/pending")
    def pending(session: dict = Depends(require_session)):
        records = store.list_records("pending")
        return {"items": [r.to_dict(store.revisions(r.id)) for r in records]}

    @app.get("/api/stats")
    def stats():
        return store.stats()

    if static_dir and os.path.isdir(static_dir):
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app


def serve(config: dict, store: SimileStore) -> None:
    """Run uvicorn until interrupted. Config keys: port, static_dir, rate_limit."""
    import uvicorn

    app = create_app(
        store,
        static_dir=config.get("static_dir"),
        rate_limit_per_min=int(config.get("rate_limit", 10)),
        session_ttl_minutes=int(config.get("session_ttl_minutes", 720)),
    )
    uvicorn.run(app, host=config.get("host", "127.0.0.1"), port=int(config.get("port", 8000)),
                log_level="warning")

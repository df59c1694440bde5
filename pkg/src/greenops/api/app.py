"""Application factory: wires configuration, store, auth, media, and the
scheduler into a FastAPI app and owns the error-to-status mapping."""
from __future__ import annotations

from contextlib import asynccontextmanager

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import FileResponse, JSONResponse
from starlette.exceptions import HTTPException as StarletteHTTPException

from ..auth import AuthService
from ..config import AppConfig
from ..errors import (
    AppError,
    ConflictInUse,
    EmptyFile,
    Forbidden,
    IllegalTransition,
    ImportIntoNonEmpty,
    NotFound,
    SeedRefused,
    TooLarge,
    Unauthenticated,
    UniquenessViolation,
    UnknownVersion,
    UnsupportedType,
    UnsupportedVersion,
    ValidationFailed,
    WeakPassword,
)
from ..media import MediaStore
from ..scheduler import HealthScheduler, SchedulerConfig
from ..store import Store
from .common import AppCtx
from . import accounts, greening, workflow

_STATUS_RULES: tuple[tuple[type, int], ...] = (
    (ValidationFailed, 400),
    (WeakPassword, 400),
    (EmptyFile, 400),
    (UnsupportedType, 400),
    (TooLarge, 400),
    (Unauthenticated, 401),
    (Forbidden, 403),
    (NotFound, 404),
    (UniquenessViolation, 409),
    (ConflictInUse, 409),
    (IllegalTransition, 409),
    (ImportIntoNonEmpty, 409),
    (SeedRefused, 409),
    (UnknownVersion, 409),
    (UnsupportedVersion, 409),
)

_HTTP_CODES = {
    400: "BAD_REQUEST",
    401: "UNAUTHENTICATED",
    403: "FORBIDDEN",
    404: "NOT_FOUND",
    405: "METHOD_NOT_ALLOWED",
}


def status_for(error: AppError) -> int:
    for error_type, status in _STATUS_RULES:
        if isinstance(error, error_type):
            return status
    return 500


def create_app(config: AppConfig | None = None, *, store: Store | None = None) -> FastAPI:
    config = (config or AppConfig()).validated()
    if store is None:
        store = Store(
            mode=config.store_mode,
            path=config.data_dir if config.store_mode == "file" else None,
        )
    ctx = AppCtx(
        config=config,
        store=store,
        auth=AuthService(store, config.token_secret, config.hash_iterations),
        media=MediaStore(config.uploads_dir, config.max_upload_bytes),
        scheduler=HealthScheduler(
            store,
            SchedulerConfig(
                interval_seconds=config.scheduler_interval_seconds,
                stale_threshold_days=config.stale_days_threshold,
                enabled=config.scheduler_enabled,
            ),
        ),
    )

    @asynccontextmanager
    async def lifespan(app: FastAPI):
        ctx.scheduler.start()
        yield
        ctx.scheduler.stop()

    app = FastAPI(title="greenops", lifespan=lifespan)
    app.state.ctx = ctx
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(AppError)
    async def on_app_error(request: Request, exc: AppError):
        return JSONResponse(
            status_code=status_for(exc), content={"code": exc.code, "message": exc.message}
        )

    @app.exception_handler(RequestValidationError)
    async def on_request_validation(request: Request, exc: RequestValidationError):
        detail = "; ".join(
            f"{'.'.join(str(part) for part in err.get('loc', ()))}: {err.get('msg', 'invalid')}"
            for err in exc.errors()
        )
        return JSONResponse(
            status_code=400,
            content={"code": "VALIDATION_FAILED", "message": detail or "invalid request"},
        )

    @app.exception_handler(StarletteHTTPException)
    async def on_http_error(request: Request, exc: StarletteHTTPException):
        code = _HTTP_CODES.get(exc.status_code, "HTTP_ERROR")
        return JSONResponse(
            status_code=exc.status_code, content={"code": code, "message": str(exc.detail)}
        )

    @app.get("/healthz")
    async def healthz():
        return {"status": "ok", "schema_version": ctx.store.schema_version}

    @app.get("/uploads/{name}")
    async def serve_upload(name: str):
        path = ctx.media.open_path(name)
        media_type = {
            ".jpg": "image/jpeg",
            ".jpeg": "image/jpeg",
            ".png": "image/png",
        }.get(path.suffix.lower(), "application/octet-stream")
        return FileResponse(path, media_type=media_type)

    app.include_router(accounts.router)
    app.include_router(greening.router)
    app.include_router(workflow.router)
    return app

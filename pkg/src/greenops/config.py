"""Runtime configuration.

Settings resolve in three layers, later layers winning: a JSON config
file, ``GREENOPS_*`` environment variables, then explicit overrides
(normally CLI flags). Every field has a workable default so the service
can start with no configuration at all.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, fields
from pathlib import Path

from .errors import ValidationFailed

ENV_PREFIX = "GREENOPS_"


@dataclass(frozen=True)
class AppConfig:
    host: str = "127.0.0.1"
    port: int = 8000
    store_mode: str = "memory"          # "memory" or "file"
    data_dir: str = "./data"
    uploads_dir: str = "./data/uploads"
    token_secret: str = "dev-secret-change-me"
    hash_iterations: int = 120_000
    max_upload_bytes: int = 5 * 1024 * 1024
    stale_days_threshold: int = 30
    scheduler_enabled: bool = False
    scheduler_interval_seconds: int = 24 * 60 * 60
    log_level: str = "info"

    def validated(self) -> "AppConfig":
        errors = []
        if not 0 < self.port < 65536:
            errors.append(("port", "must be in 1..65535"))
        if self.store_mode not in ("memory", "file"):
            errors.append(("store_mode", "must be 'memory' or 'file'"))
        if self.hash_iterations < 1:
            errors.append(("hash_iterations", "must be positive"))
        if self.max_upload_bytes < 1:
            errors.append(("max_upload_bytes", "must be positive"))
        if self.stale_days_threshold < 1:
            errors.append(("stale_days_threshold", "must be positive"))
        if self.scheduler_interval_seconds < 1:
            errors.append(("scheduler_interval_seconds", "must be positive"))
        if not self.token_secret:
            errors.append(("token_secret", "must not be empty"))
        if errors:
            raise ValidationFailed(errors)
        return self


_FIELD_TYPES = {f.name: f.type for f in fields(AppConfig)}


def _coerce(name: str, raw: object):
    target = _FIELD_TYPES[name]
    if isinstance(raw, str):
        if target in ("int", int):
            try:
                return int(raw)
            except ValueError:
                raise ValidationFailed([(name, f"expected an integer, got {raw!r}")]) from None
        if target in ("bool", bool):
            lowered = raw.strip().lower()
            if lowered in ("1", "true", "yes", "on"):
                return True
            if lowered in ("0", "false", "no", "off"):
                return False
            raise ValidationFailed([(name, f"expected a boolean, got {raw!r}")])
    return raw


def load_config(
    config_file: str | os.PathLike | None = None,
    environ: dict | None = None,
    overrides: dict | None = None,
) -> AppConfig:
    environ = os.environ if environ is None else environ
    values: dict = {}

    if config_file is not None:
        path = Path(config_file)
        if not path.is_file():
            raise ValidationFailed([("config", f"config file {path} does not exist")])
        try:
            doc = json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise ValidationFailed([("config", f"invalid JSON in {path}: {exc}")]) from exc
        if not isinstance(doc, dict):
            raise ValidationFailed([("config", "config file must hold a JSON object")])
        for key, value in doc.items():
            if key not in _FIELD_TYPES:
                raise ValidationFailed([("config", f"unknown setting {key!r}")])
            values[key] = _coerce(key, value)

    for name in _FIELD_TYPES:
        raw = environ.get(ENV_PREFIX + name.upper())
        if raw is not None:
            values[name] = _coerce(name, raw)

    for key, value in (overrides or {}).items():
        if value is None:
            continue
        if key not in _FIELD_TYPES:
            raise ValidationFailed([("config", f"unknown setting {key!r}")])
        values[key] = _coerce(key, value)

    return AppConfig(**values).validated()

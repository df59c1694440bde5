"""Uploaded image handling.

Files land under a single uploads directory with generated names of the
form ``<uuid4>_<sanitized original name>`` and are served back under the
``/uploads/`` URL prefix. Only JPEG and PNG payloads are accepted, and a
configurable byte cap (5 MiB by default) keeps uploads bounded.
"""
from __future__ import annotations

import os
import re
import uuid
from pathlib import Path

from .errors import EmptyFile, NotFound, TooLarge, UnsupportedType

URL_PREFIX = "/uploads/"
DEFAULT_MAX_BYTES = 5 * 1024 * 1024
ALLOWED_CONTENT_TYPES = {"image/jpeg": ".jpg", "image/png": ".png"}

_UNSAFE = re.compile(r"[^A-Za-z0-9._-]+")


def sanitize_filename(name: str | None) -> str:
    """Flatten a client-supplied name into one safe path segment.

    Directory separators become underscores, dot segments are dropped, and
    anything outside a conservative character set is replaced. A name that
    sanitizes to nothing becomes ``upload``.
    """
    segments = [
        part
        for part in re.split(r"[/\\]+", name or "")
        if part not in ("", ".", "..")
    ]
    flat = _UNSAFE.sub("_", "_".join(segments)).lstrip(".")
    return flat or "upload"


class MediaStore:
    def __init__(self, root: str | os.PathLike, max_bytes: int = DEFAULT_MAX_BYTES):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self.max_bytes = max_bytes

    def save(self, filename: str | None, content_type: str | None, data: bytes) -> str:
        """Persist one upload and return its public URL path."""
        if content_type not in ALLOWED_CONTENT_TYPES:
            raise UnsupportedType(f"unsupported content type {content_type!r}")
        if not data:
            raise EmptyFile("uploaded file is empty")
        if len(data) > self.max_bytes:
            raise TooLarge(f"file exceeds the {self.max_bytes} byte limit")
        stored = f"{uuid.uuid4()}_{sanitize_filename(filename)}"
        (self.root / stored).write_bytes(data)
        return URL_PREFIX + stored

    def open_path(self, stored_name: str) -> Path:
        """Resolve a stored name back to a file, refusing anything that
        would escape the uploads directory."""
        candidate = (self.root / stored_name).resolve()
        if candidate.parent != self.root.resolve() or not candidate.is_file():
            raise NotFound("upload", stored_name)
        return candidate

    def exists(self, public_path: str) -> bool:
        if not public_path.startswith(URL_PREFIX):
            return False
        try:
            self.open_path(public_path[len(URL_PREFIX) :])
        except NotFound:
            return False
        return True

    def remove(self, public_path: str) -> None:
        """Best-effort removal, used to roll back uploads when the record
        they belong to fails validation."""
        if not public_path.startswith(URL_PREFIX):
            return
        try:
            self.open_path(public_path[len(URL_PREFIX) :]).unlink()
        except NotFound:
            pass

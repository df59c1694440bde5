"""Shared plumbing for the HTTP layer: the per-app context, bearer-token
authentication dependencies, a forgiving body/form reader that accumulates
field errors, and entity presenters.

Handlers return plain JSON-native dicts wrapped in JSONResponse; there is
deliberately no response-model machinery on the hot paths.
"""
from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from typing import Any

from fastapi import Depends, Request

from .. import codec
from ..auth import AuthService
from ..config import AppConfig
from ..domain import Role, UserAccount, role_satisfies
from ..errors import FieldErrorList, Forbidden, Unauthenticated, ValidationFailed
from ..media import MediaStore
from ..scheduler import HealthScheduler
from ..store import Filter, Page, PageRequest, Store
from ..times import parse_timestamp


@dataclass
class AppCtx:
    config: AppConfig
    store: Store
    auth: AuthService
    media: MediaStore
    scheduler: HealthScheduler


def ctx_of(request: Request) -> AppCtx:
    return request.app.state.ctx


def bearer_token(request: Request) -> str:
    header = request.headers.get("authorization")
    if not header or not header.startswith("Bearer "):
        raise Unauthenticated("missing bearer token")
    return header[len("Bearer ") :]


def authenticate(request: Request) -> UserAccount:
    return ctx_of(request).auth.authenticate(bearer_token(request))


def require(*roles: Role):
    """Dependency factory: authenticate, then check the role requirement.

    With several roles, satisfying any one suffices; ADMIN satisfies all
    requirements through the role lattice. ``require()`` means any
    authenticated account.
    """

    def dependency(request: Request) -> UserAccount:
        account = authenticate(request)
        if roles and not any(role_satisfies(account.role, r) for r in roles):
            wanted = " or ".join(r.value for r in roles)
            raise Forbidden(f"requires role {wanted}")
        return account

    return Depends(dependency)


def maybe_authenticate(request: Request) -> UserAccount | None:
    """Like authenticate, but returns None when no token is supplied
    (used by registration, which is open except for creating admins)."""
    if not request.headers.get("authorization"):
        return None
    return authenticate(request)


# -- request parsing ---------------------------------------------------------


async def read_json(request: Request) -> dict:
    try:
        doc = await request.json()
    except Exception:
        raise ValidationFailed([("body", "must be a JSON object")]) from None
    if not isinstance(doc, dict):
        raise ValidationFailed([("body", "must be a JSON object")])
    return doc


class Body:
    """Field extractor over a JSON object or a form-data mapping.

    Each accessor records an error instead of raising, so a bad request
    reports every problem at once; call ``finish()`` after the last field.
    With ``coerce=True`` (form data) numeric and boolean fields are parsed
    from their string representation.
    """

    def __init__(self, doc: dict, *, coerce: bool = False):
        self.doc = doc
        self.coerce = coerce
        self.errors = FieldErrorList()

    def _raw(self, field: str, required: bool) -> Any:
        value = self.doc.get(field)
        if value is None and required:
            self.errors.append((field, "is required"))
        return value

    def str_(self, field: str, *, required: bool = False, default: str | None = None):
        value = self._raw(field, required)
        if value is None:
            return default
        if not isinstance(value, str):
            self.errors.append((field, "must be a string"))
            return default
        return value

    def int_(self, field: str, *, required: bool = False, default: int | None = None):
        value = self._raw(field, required)
        if value is None:
            return default
        if self.coerce and isinstance(value, str):
            try:
                return int(value)
            except ValueError:
                self.errors.append((field, "must be an integer"))
                return default
        if not isinstance(value, int) or isinstance(value, bool):
            self.errors.append((field, "must be an integer"))
            return default
        return value

    def bool_(self, field: str, *, required: bool = False, default: bool | None = None):
        value = self._raw(field, required)
        if value is None:
            return default
        if self.coerce and isinstance(value, str):
            lowered = value.lower()
            if lowered in ("true", "1"):
                return True
            if lowered in ("false", "0"):
                return False
            self.errors.append((field, "must be a boolean"))
            return default
        if not isinstance(value, bool):
            self.errors.append((field, "must be a boolean"))
            return default
        return value

    def float_(self, field: str, *, required: bool = False, default: float | None = None):
        value = self._raw(field, required)
        if value is None:
            return default
        if self.coerce and isinstance(value, str):
            try:
                return float(value)
            except ValueError:
                self.errors.append((field, "must be a number"))
                return default
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            self.errors.append((field, "must be a number"))
            return default
        return float(value)

    def decimal_(self, field: str, *, required: bool = False, default: Decimal | None = None):
        value = self._raw(field, required)
        if value is None:
            return default
        try:
            return Decimal(str(value))
        except InvalidOperation:
            self.errors.append((field, "must be a decimal number"))
            return default

    def enum_(self, enum_type, field: str, *, required: bool = False, default=None):
        value = self._raw(field, required)
        if value is None:
            return default
        try:
            return enum_type(value)
        except ValueError:
            allowed = ", ".join(member.value for member in enum_type)
            self.errors.append((field, f"must be one of: {allowed}"))
            return default

    def timestamp_(self, field: str, *, required: bool = False, default=None):
        value = self._raw(field, required)
        if value is None:
            return default
        try:
            return parse_timestamp(str(value))
        except ValueError:
            self.errors.append((field, "must be an ISO-8601 timestamp"))
            return default

    def str_list(self, field: str, *, required: bool = False) -> tuple[str, ...]:
        value = self._raw(field, required)
        if value is None:
            return ()
        if not isinstance(value, list) or any(not isinstance(item, str) for item in value):
            self.errors.append((field, "must be an array of strings"))
            return ()
        return tuple(value)

    def reject_unknown(self, *allowed: str) -> None:
        for key in self.doc:
            if key not in allowed:
                self.errors.append((key, "is not a recognized field"))

    def finish(self) -> None:
        if self.errors:
            raise ValidationFailed(self.errors)


def page_request(request: Request) -> PageRequest:
    params = request.query_params
    values = {}
    for key, attr in (("page", "page"), ("pageSize", "page_size")):
        raw = params.get(key)
        if raw is None:
            continue
        try:
            values[attr] = int(raw)
        except ValueError:
            raise ValidationFailed([(key, "must be an integer")]) from None
    return PageRequest(**values)


def int_param(request: Request, key: str) -> int | None:
    raw = request.query_params.get(key)
    if raw is None:
        return None
    try:
        return int(raw)
    except ValueError:
        raise ValidationFailed([(key, "must be an integer")]) from None


# -- presentation ------------------------------------------------------------


def present(record) -> dict:
    return codec.encode(record)


def present_account(account: UserAccount) -> dict:
    doc = codec.encode(account)
    del doc["password_hash"]
    return doc


def present_page(page: Page, present_fn=present) -> dict:
    return {
        "items": [present_fn(item) for item in page.items],
        "total_count": page.total_count,
        "page": page.page,
        "page_size": page.page_size,
    }


def manual_page(records: list, page: PageRequest, present_fn=present) -> dict:
    """Page envelope for handler-sorted collections that bypass the store's
    default ascending-id ordering."""
    start = (page.page - 1) * page.page_size
    return {
        "items": [present_fn(item) for item in records[start : start + page.page_size]],
        "total_count": len(records),
        "page": page.page,
        "page_size": page.page_size,
    }


def keyword_filter(request: Request, **extra) -> Filter:
    flt = Filter(keyword=request.query_params.get("keyword"))
    for field, value in extra.items():
        if value is not None:
            flt.exact[field] = value
    return flt

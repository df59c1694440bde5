"""Account endpoints: registration, login, the current-account view, password
changes, and the staff directories.

Registration is open for gardener and supplier accounts; creating another
admin requires an admin token, so the very first admin comes from seeding
(or from a store bootstrapped out of band).
"""
from __future__ import annotations

from fastapi import Request
from fastapi.responses import JSONResponse
from fastapi import APIRouter

from ..domain import Role
from ..errors import Forbidden
from .common import (
    Body,
    ctx_of,
    maybe_authenticate,
    page_request,
    present,
    present_account,
    present_page,
    read_json,
    require,
)

router = APIRouter()


@router.post("/api/auth/register", status_code=201)
async def register(request: Request):
    ctx = ctx_of(request)
    b = Body(await read_json(request))
    username = b.str_("username", required=True) or ""
    password = b.str_("password", required=True) or ""
    role = b.enum_(Role, "role", default=Role.GARDENER)
    email = b.str_("email")
    phone = b.str_("phone")
    profile_name = b.str_("real_name")
    b.finish()
    if role is Role.ADMIN:
        actor = maybe_authenticate(request)
        if actor is None or actor.role is not Role.ADMIN:
            raise Forbidden("creating an admin account requires an admin token")
    account = ctx.auth.register(
        username, password, role, email=email, phone=phone, profile_name=profile_name
    )
    return JSONResponse(present_account(account), status_code=201)


@router.post("/api/auth/login")
async def login(request: Request):
    ctx = ctx_of(request)
    b = Body(await read_json(request))
    username = b.str_("username", required=True) or ""
    password = b.str_("password", required=True) or ""
    b.finish()
    token, account = ctx.auth.login(username, password)
    return JSONResponse({"token": token, "account": present_account(account)})


@router.get("/api/auth/me")
async def me(request: Request, account=require()):
    ctx = ctx_of(request)
    doc = {"account": present_account(account), "profile": None}
    if account.role is Role.GARDENER:
        profile = ctx.store.find_one("gardener", lambda g: g.account_id == account.id)
        doc["profile"] = present(profile) if profile else None
    elif account.role is Role.SUPPLIER:
        profile = ctx.store.find_one("supplier", lambda s: s.account_id == account.id)
        doc["profile"] = present(profile) if profile else None
    return JSONResponse(doc)


@router.post("/api/auth/change-password")
async def change_password(request: Request, account=require()):
    ctx = ctx_of(request)
    b = Body(await read_json(request))
    old = b.str_("old_password", required=True) or ""
    new = b.str_("new_password", required=True) or ""
    b.finish()
    updated = ctx.auth.change_password(account, old, new)
    return JSONResponse(present_account(updated))


@router.get("/api/gardeners")
async def list_gardeners(request: Request, account=require(Role.ADMIN)):
    ctx = ctx_of(request)
    return JSONResponse(present_page(ctx.store.query("gardener", None, page_request(request))))


@router.get("/api/suppliers")
async def list_suppliers(request: Request, account=require(Role.ADMIN)):
    ctx = ctx_of(request)
    return JSONResponse(present_page(ctx.store.query("supplier", None, page_request(request))))

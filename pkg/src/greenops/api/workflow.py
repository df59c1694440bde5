"""Endpoints for maintenance plans and tasks, feedback, purchase and supply
pipelines, attendance, announcements, the manual job trigger, and generic
photo uploads.

All state transitions funnel through the pure functions in
``greenops.domain.transitions`` inside ``store.mutate``, which makes each
transition an atomic compare-and-set: under concurrent accepts of the same
task exactly one caller wins.
"""
from __future__ import annotations

from dataclasses import replace

from fastapi import APIRouter, Request
from fastapi.responses import JSONResponse, Response
from starlette.datastructures import UploadFile

from ..domain import (
    Announcement,
    AttendanceRecord,
    AuditStatus,
    Feedback,
    FeedbackReply,
    MaintenancePlan,
    MaintenanceTask,
    PurchaseApplication,
    PurchaseStatus,
    Role,
    SubjectKind,
    SubjectRef,
    SupplyApplication,
    TaskEvent,
    TaskKind,
    TaskStatus,
    improve_health,
    transition_purchase,
    transition_task,
)
from ..errors import ConflictInUse, Forbidden, IllegalTransition, NotFound, ValidationFailed
from ..store import SUBJECT_KIND_TABLE, Filter
from ..times import parse_date, today_utc, utc_now
from .common import (
    Body,
    ctx_of,
    int_param,
    manual_page,
    page_request,
    present,
    present_page,
    read_json,
    require,
)

router = APIRouter()

SUPPLY_INFO_MAX = 100


def _gardener_profile(ctx, account, *, required: bool = True):
    profile = ctx.store.find_one("gardener", lambda g: g.account_id == account.id)
    if profile is None and required and account.role is Role.GARDENER:
        raise Forbidden("no gardener profile is linked to this account")
    return profile


def _supplier_profile(ctx, account):
    return ctx.store.find_one("supplier", lambda s: s.account_id == account.id)


# -- maintenance plans ---------------------------------------------------------


@router.post("/api/plans", status_code=201)
async def create_plan(request: Request, account=require(Role.ADMIN)):
    ctx = ctx_of(request)
    b = Body(await read_json(request))
    plan = MaintenancePlan(
        id=0,
        title=b.str_("title", required=True) or "",
        created_by=account.id,
        description=b.str_("description"),
    )
    b.finish()
    return JSONResponse(present(ctx.store.insert("maintenance_plan", plan)), status_code=201)


@router.get("/api/plans")
async def list_plans(request: Request, account=require(Role.ADMIN, Role.GARDENER)):
    ctx = ctx_of(request)
    page = page_request(request)
    if account.role is Role.ADMIN:
        return JSONResponse(present_page(ctx.store.query("maintenance_plan", None, page)))
    profile = _gardener_profile(ctx, account)
    own_plan_ids = {
        task.plan_id
        for task in ctx.store.find(
            "maintenance_task", lambda t: t.assignee_gardener_id == profile.id
        )
    }
    plans = [p for p in ctx.store.list_all("maintenance_plan") if p.id in own_plan_ids]
    return JSONResponse(manual_page(plans, page))


@router.get("/api/plans/{plan_id:int}")
async def get_plan(plan_id: int, request: Request, account=require(Role.ADMIN, Role.GARDENER)):
    return JSONResponse(present(ctx_of(request).store.get("maintenance_plan", plan_id)))


@router.put("/api/plans/{plan_id:int}")
async def update_plan(plan_id: int, request: Request, account=require(Role.ADMIN)):
    ctx = ctx_of(request)
    doc = await read_json(request)
    b = Body(doc)
    changes = {}
    if "title" in doc:
        changes["title"] = b.str_("title", required=True)
    if "description" in doc:
        changes["description"] = b.str_("description")
    b.finish()
    if not changes:
        raise ValidationFailed([("body", "no updatable fields given")])
    return JSONResponse(present(ctx.store.update("maintenance_plan", plan_id, changes)))


@router.delete("/api/plans/{plan_id:int}", status_code=204)
async def delete_plan(plan_id: int, request: Request, account=require(Role.ADMIN)):
    ctx_of(request).store.delete("maintenance_plan", plan_id)
    return Response(status_code=204)


@router.post("/api/plans/{plan_id:int}/tasks", status_code=201)
async def create_task(plan_id: int, request: Request, account=require(Role.ADMIN)):
    ctx = ctx_of(request)
    ctx.store.get("maintenance_plan", plan_id)
    b = Body(await read_json(request))
    kind = b.enum_(TaskKind, "kind", required=True)
    subject_kind = b.enum_(SubjectKind, "subject_kind", required=True)
    subject_id = b.int_("subject_id", required=True)
    assignee_id = b.int_("assignee_gardener_id", required=True)
    scheduled_at = b.timestamp_("scheduled_at", required=True)
    location = b.str_("location", required=True)
    required_tools = b.str_("required_tools")
    b.finish()

    ctx.store.get(SUBJECT_KIND_TABLE[subject_kind], subject_id)
    try:
        ctx.store.get("gardener", assignee_id)
    except NotFound:
        # A real id that is not a gardener is a role problem (400); an id
        # unknown everywhere is a missing resource (404).
        try:
            ctx.store.get("user_account", assignee_id)
        except NotFound:
            raise NotFound("gardener", assignee_id) from None
        raise ValidationFailed(
            [("assignee_gardener_id", "must reference a gardener")]
        ) from None

    task = MaintenanceTask(
        id=0,
        plan_id=plan_id,
        kind=kind,
        subject=SubjectRef(kind=subject_kind, subject_id=subject_id),
        assignee_gardener_id=assignee_id,
        scheduled_at=scheduled_at,
        location=location or "",
        required_tools=required_tools,
    )
    with ctx.store.batch():
        stored = ctx.store.insert("maintenance_task", task)
        plan = ctx.store.get("maintenance_plan", plan_id)
        ctx.store.update("maintenance_plan", plan_id, {"task_ids": plan.task_ids + (stored.id,)})
    return JSONResponse(present(stored), status_code=201)


# -- tasks ----------------------------------------------------------------------


@router.get("/api/tasks")
async def list_tasks(request: Request, account=require(Role.ADMIN, Role.GARDENER)):
    ctx = ctx_of(request)
    flt = Filter()
    status_raw = request.query_params.get("status")
    if status_raw is not None:
        try:
            flt.status = TaskStatus(status_raw)
        except ValueError:
            raise ValidationFailed([("status", "is not a valid task status")]) from None
    if account.role is Role.ADMIN:
        assignee = int_param(request, "assignee")
        if assignee is not None:
            flt.exact["assignee_gardener_id"] = assignee
    else:
        profile = _gardener_profile(ctx, account)
        flt.exact["assignee_gardener_id"] = profile.id
    page = ctx.store.query("maintenance_task", flt, page_request(request))
    return JSONResponse(present_page(page))


@router.get("/api/tasks/{task_id:int}")
async def get_task(task_id: int, request: Request, account=require(Role.ADMIN, Role.GARDENER)):
    ctx = ctx_of(request)
    task = ctx.store.get("maintenance_task", task_id)
    if account.role is Role.GARDENER:
        profile = _gardener_profile(ctx, account)
        if task.assignee_gardener_id != profile.id:
            raise Forbidden("tasks are visible to their assignee and admins only")
    return JSONResponse(present(task))


@router.post("/api/tasks/{task_id:int}/accept")
async def accept_task(task_id: int, request: Request, account=require(Role.GARDENER, Role.ADMIN)):
    ctx = ctx_of(request)
    profile = _gardener_profile(ctx, account)
    task = ctx.store.mutate(
        "maintenance_task",
        task_id,
        lambda t: transition_task(
            t,
            TaskEvent.ACCEPT,
            account.role,
            actor_gardener_id=profile.id if profile else None,
        ),
    )
    return JSONResponse(present(task))


@router.post("/api/tasks/{task_id:int}/complete")
async def complete_task(
    task_id: int, request: Request, account=require(Role.GARDENER, Role.ADMIN)
):
    ctx = ctx_of(request)
    b = Body(await read_json(request))
    photos = b.str_list("photos", required=True)
    notes = b.str_("notes", required=True) or ""
    b.finish()
    if len(photos) < 1:
        raise ValidationFailed([("photos", "at least one completion photo is required")])
    missing = [p for p in photos if not ctx.media.exists(p)]
    if missing:
        raise ValidationFailed([("photos", f"unknown photo paths: {', '.join(missing)}")])
    if not 1 <= len(notes) <= 2000:
        raise ValidationFailed([("notes", "must be 1..2000 characters")])
    profile = _gardener_profile(ctx, account)
    task = ctx.store.mutate(
        "maintenance_task",
        task_id,
        lambda t: transition_task(
            t,
            TaskEvent.SUBMIT_COMPLETION,
            account.role,
            actor_gardener_id=profile.id if profile else None,
            photos=photos,
            notes=notes,
        ),
    )
    return JSONResponse(present(task))


@router.post("/api/tasks/{task_id:int}/review")
async def review_task(task_id: int, request: Request, account=require(Role.ADMIN)):
    ctx = ctx_of(request)
    b = Body(await read_json(request))
    approve = b.bool_("approve", required=True)
    comment = b.str_("comment")
    b.finish()
    now = utc_now()
    event = TaskEvent.APPROVE if approve else TaskEvent.REJECT
    with ctx.store.batch():
        task = ctx.store.mutate(
            "maintenance_task",
            task_id,
            lambda t: transition_task(t, event, account.role, comment=comment),
        )
        if approve:
            # Approved work counts as maintenance: subject recovers one
            # health level and its staleness clock restarts.
            table = SUBJECT_KIND_TABLE[task.subject.kind]
            subject = ctx.store.get(table, task.subject.subject_id)
            ctx.store.update(
                table,
                subject.id,
                {"health": improve_health(subject.health), "last_maintained_at": now},
            )
    return JSONResponse(present(task))


# -- feedback ---------------------------------------------------------------------


@router.post("/api/feedback", status_code=201)
async def create_feedback(
    request: Request, account=require(Role.GARDENER, Role.SUPPLIER)
):
    ctx = ctx_of(request)
    b = Body(await read_json(request))
    feedback = Feedback(
        id=0,
        title=b.str_("title", required=True) or "",
        content=b.str_("content", required=True) or "",
        submitter_id=account.id,
        created_at=utc_now(),
    )
    b.finish()
    return JSONResponse(present(ctx.store.insert("feedback", feedback)), status_code=201)


@router.get("/api/feedback")
async def list_feedback(request: Request, account=require()):
    ctx = ctx_of(request)
    page = page_request(request)
    if account.role is Role.ADMIN:
        return JSONResponse(present_page(ctx.store.query("feedback", None, page)))
    own = ctx.store.find("feedback", lambda f: f.submitter_id == account.id)
    return JSONResponse(manual_page(list(own), page))


@router.post("/api/feedback/{feedback_id:int}/reply")
async def reply_feedback(feedback_id: int, request: Request, account=require(Role.ADMIN)):
    ctx = ctx_of(request)
    b = Body(await read_json(request))
    text = b.str_("text", required=True) or ""
    b.finish()
    reply = FeedbackReply(admin_id=account.id, text=text, at=utc_now())
    updated = ctx.store.update("feedback", feedback_id, {"reply": reply})
    return JSONResponse(present(updated))


# -- purchases ----------------------------------------------------------------------


@router.post("/api/purchases", status_code=201)
async def create_purchase(request: Request, account=require(Role.ADMIN)):
    ctx = ctx_of(request)
    b = Body(await read_json(request))
    purchase = PurchaseApplication(
        id=0,
        resource_name=b.str_("resource_name", required=True) or "",
        quantity=b.int_("quantity", required=True) or 0,
        unit_price=b.int_("unit_price", required=True) or 0,
    )
    b.finish()
    return JSONResponse(
        present(ctx.store.insert("purchase_application", purchase)), status_code=201
    )


@router.get("/api/purchases")
async def list_purchases(request: Request, account=require(Role.ADMIN, Role.SUPPLIER)):
    ctx = ctx_of(request)
    flt = Filter()
    status_raw = request.query_params.get("status")
    if status_raw is not None:
        try:
            flt.status = PurchaseStatus(status_raw)
        except ValueError:
            raise ValidationFailed([("status", "is not a valid purchase status")]) from None
    page = ctx.store.query("purchase_application", flt, page_request(request))
    return JSONResponse(present_page(page))


@router.get("/api/purchases/{purchase_id:int}")
async def get_purchase(
    purchase_id: int, request: Request, account=require(Role.ADMIN, Role.SUPPLIER)
):
    return JSONResponse(present(ctx_of(request).store.get("purchase_application", purchase_id)))


@router.put("/api/purchases/{purchase_id:int}")
async def update_purchase(purchase_id: int, request: Request, account=require(Role.ADMIN)):
    ctx = ctx_of(request)
    doc = await read_json(request)
    b = Body(doc)
    changes = {}
    if "resource_name" in doc:
        changes["resource_name"] = b.str_("resource_name", required=True)
    if "quantity" in doc:
        changes["quantity"] = b.int_("quantity", required=True)
    if "unit_price" in doc:
        changes["unit_price"] = b.int_("unit_price", required=True)
    b.finish()
    if not changes:
        raise ValidationFailed([("body", "no updatable fields given")])
    current = ctx.store.get("purchase_application", purchase_id)
    if current.status is not PurchaseStatus.PENDING:
        raise ConflictInUse("only PENDING purchase applications can be modified")
    return JSONResponse(present(ctx.store.update("purchase_application", purchase_id, changes)))


@router.put("/api/purchases/{purchase_id:int}/status")
async def transition_purchase_status(
    purchase_id: int, request: Request, account=require(Role.ADMIN, Role.SUPPLIER)
):
    ctx = ctx_of(request)
    b = Body(await read_json(request))
    target = b.enum_(PurchaseStatus, "status", required=True)
    b.finish()
    profile = _supplier_profile(ctx, account) if account.role is Role.SUPPLIER else None

    def apply(purchase):
        moved = transition_purchase(purchase, target, account.role)
        if target is PurchaseStatus.ACCEPTED and profile is not None:
            moved = replace(moved, supplier_id=profile.id)
        return moved

    return JSONResponse(present(ctx.store.mutate("purchase_application", purchase_id, apply)))


@router.delete("/api/purchases/{purchase_id:int}", status_code=204)
async def delete_purchase(purchase_id: int, request: Request, account=require(Role.ADMIN)):
    ctx = ctx_of(request)
    purchase = ctx.store.get("purchase_application", purchase_id)
    if purchase.status not in (PurchaseStatus.PENDING, PurchaseStatus.REJECTED):
        raise ConflictInUse(
            f"a {purchase.status.value} purchase application cannot be deleted"
        )
    ctx.store.delete("purchase_application", purchase_id)
    return Response(status_code=204)


@router.post("/api/purchases/{purchase_id:int}/feedback")
async def purchase_feedback(purchase_id: int, request: Request, account=require(Role.ADMIN)):
    ctx = ctx_of(request)
    b = Body(await read_json(request))
    note = b.str_("note", required=True) or ""
    b.finish()

    def apply(purchase):
        if purchase.status is not PurchaseStatus.DELIVERED:
            raise ConflictInUse("feedback applies to DELIVERED purchase applications only")
        joined = note if purchase.feedback_note is None else purchase.feedback_note + "\n" + note
        return replace(purchase, feedback_note=joined)

    return JSONResponse(present(ctx.store.mutate("purchase_application", purchase_id, apply)))


# -- supplies ----------------------------------------------------------------------


@router.post("/api/supplies", status_code=201)
async def submit_supply(request: Request, account=require(Role.SUPPLIER)):
    ctx = ctx_of(request)
    b = Body(await read_json(request))
    supply = SupplyApplication(
        id=0,
        username=b.str_("username", required=True) or "",
        real_name=b.str_("real_name", required=True) or "",
        phone=b.str_("phone", required=True) or "",
        product_name=b.str_("product_name", required=True) or "",
        quantity=b.int_("quantity", required=True) or 0,
        created_at=utc_now(),
    )
    b.finish()
    return JSONResponse(present(ctx.store.insert("supply_application", supply)), status_code=201)


@router.get("/api/supplies")
async def list_supplies(request: Request, account=require(Role.ADMIN, Role.SUPPLIER)):
    ctx = ctx_of(request)
    flt = Filter()
    status_raw = request.query_params.get("status")
    if status_raw is not None:
        try:
            flt.status = AuditStatus(status_raw)
        except ValueError:
            raise ValidationFailed([("status", "is not a valid audit status")]) from None
    if account.role is Role.SUPPLIER:
        flt.exact["username"] = account.username
    page = ctx.store.query("supply_application", flt, page_request(request))
    return JSONResponse(present_page(page))


@router.post("/api/supplies/{supply_id:int}/audit")
async def audit_supply(supply_id: int, request: Request, account=require(Role.ADMIN)):
    ctx = ctx_of(request)
    b = Body(await read_json(request))
    approve = b.bool_("approve", required=True)
    b.finish()
    verdict = AuditStatus.APPROVED if approve else AuditStatus.REJECTED

    def apply(supply):
        if supply.audit_status is not AuditStatus.PENDING:
            raise IllegalTransition("this application has already been audited")
        return replace(supply, audit_status=verdict)

    with ctx.store.batch():
        supply = ctx.store.mutate("supply_application", supply_id, apply)
        if approve:
            _record_supply_information(ctx, supply)
    return JSONResponse(present(supply))


def _record_supply_information(ctx, supply):
    """Append the approved product to the supplier profile, newest last,
    clamped to the column width (oldest text is dropped first)."""
    account = ctx.store.find_one("user_account", lambda a: a.username == supply.username)
    if account is None:
        return
    profile = ctx.store.find_one("supplier", lambda s: s.account_id == account.id)
    if profile is None:
        return
    summary = f"{supply.product_name} x{supply.quantity}"
    joined = summary if not profile.supply_information else (
        profile.supply_information + "; " + summary
    )
    ctx.store.update("supplier", profile.id, {"supply_information": joined[-SUPPLY_INFO_MAX:]})


# -- attendance ---------------------------------------------------------------------


@router.post("/api/attendance/sign-in", status_code=201)
async def sign_in(request: Request, account=require(Role.GARDENER)):
    ctx = ctx_of(request)
    now = utc_now()
    record = AttendanceRecord(
        id=0, account_id=account.id, sign_in_date=today_utc(), sign_in_time=now
    )
    return JSONResponse(present(ctx.store.insert("attendance_record", record)), status_code=201)


@router.get("/api/attendance")
async def list_attendance(request: Request, account=require(Role.ADMIN, Role.GARDENER)):
    ctx = ctx_of(request)
    wanted_account = int_param(request, "account")
    if account.role is not Role.ADMIN:
        if wanted_account is not None and wanted_account != account.id:
            raise Forbidden("attendance records are visible to their owner and admins only")
        wanted_account = account.id
    bounds = {}
    for key in ("from", "to"):
        raw = request.query_params.get(key)
        if raw is not None:
            try:
                bounds[key] = parse_date(raw)
            except ValueError:
                raise ValidationFailed([(key, "must be an ISO date (YYYY-MM-DD)")]) from None

    def matches(record):
        if wanted_account is not None and record.account_id != wanted_account:
            return False
        if "from" in bounds and record.sign_in_date < bounds["from"]:
            return False
        if "to" in bounds and record.sign_in_date > bounds["to"]:
            return False
        return True

    records = list(ctx.store.find("attendance_record", matches))
    return JSONResponse(manual_page(records, page_request(request)))


# -- announcements --------------------------------------------------------------------


@router.post("/api/announcements", status_code=201)
async def create_announcement(request: Request, account=require(Role.ADMIN)):
    ctx = ctx_of(request)
    b = Body(await read_json(request))
    announcement = Announcement(
        id=0,
        title=b.str_("title", required=True) or "",
        body=b.str_("body", required=True) or "",
        published_at=utc_now(),
        pinned=b.bool_("pinned", default=False),
    )
    b.finish()
    return JSONResponse(present(ctx.store.insert("announcement", announcement)), status_code=201)


@router.get("/api/announcements")
async def list_announcements(request: Request, account=require()):
    ctx = ctx_of(request)
    records = sorted(
        ctx.store.list_all("announcement"),
        key=lambda a: (not a.pinned, -a.published_at.timestamp(), a.id),
    )
    return JSONResponse(manual_page(records, page_request(request)))


@router.delete("/api/announcements/{announcement_id:int}", status_code=204)
async def delete_announcement(
    announcement_id: int, request: Request, account=require(Role.ADMIN)
):
    ctx_of(request).store.delete("announcement", announcement_id)
    return Response(status_code=204)


# -- jobs and uploads ----------------------------------------------------------------


@router.post("/api/admin/jobs/health-check")
async def trigger_health_check(request: Request, account=require(Role.ADMIN)):
    ctx = ctx_of(request)
    report, flagged = ctx.scheduler.run_once()
    doc = present(report)
    doc["scanned"] = dict(report.scanned)
    return JSONResponse({"report": doc, "overdue_flagged": flagged})


@router.post("/api/uploads", status_code=201)
async def upload_file(request: Request, account=require()):
    ctx = ctx_of(request)
    form = await request.form()
    upload = form.get("file")
    if not isinstance(upload, UploadFile):
        raise ValidationFailed([("file", "multipart file field 'file' is required")])
    data = await upload.read()
    path = ctx.media.save(upload.filename, upload.content_type, data)
    return JSONResponse({"path": path}, status_code=201)

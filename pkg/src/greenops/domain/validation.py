"""Field-level validation for every domain entity.

`validate` is a pure function: it returns the complete list of violated
constraints as (field, reason) pairs and never raises. Referential checks
(does this species_id exist?) belong to the store, which has the data.
"""
from __future__ import annotations

from datetime import date
from decimal import Decimal

from ..errors import FieldErrorList
from . import entities as e

MAX_QUANTITY = 2**31 - 1
MAX_AREA = Decimal(10) ** 8


def validate(entity, *, today: date | None = None) -> FieldErrorList:
    """Return every violated invariant of ``entity``; empty list means ok.

    ``today`` anchors date checks (hire dates may not lie in the future);
    it defaults to the current UTC date.
    """
    validator = _VALIDATORS.get(type(entity))
    if validator is None:
        raise TypeError(f"no validator for {type(entity).__name__}")
    errors = FieldErrorList()
    if getattr(entity, "id", 0) < 0:
        errors.append(("id", "must be >= 0"))
    validator(entity, errors, today)
    return errors


def _req_str(errors, field, value, max_len, min_len=1):
    if not isinstance(value, str) or not (min_len <= len(value) <= max_len):
        errors.append((field, f"must be a string of {min_len}..{max_len} characters"))


def _opt_str(errors, field, value, max_len):
    if value is not None and (not isinstance(value, str) or len(value) > max_len):
        errors.append((field, f"must be at most {max_len} characters"))


def _email(errors, field, value):
    _opt_str(errors, field, value, 100)
    if isinstance(value, str) and len(value) <= 100 and "@" not in value:
        errors.append((field, "must contain '@'"))


def _plant_fields(p, errors):
    _req_str(errors, "name", p.name, 50)
    _req_str(errors, "category", p.category, 20)
    if not (0 <= p.quantity <= MAX_QUANTITY):
        errors.append(("quantity", f"must be in 0..{MAX_QUANTITY}"))
    _req_str(errors, "planting_area", p.planting_area, 128)
    _opt_str(errors, "maintenance_note", p.maintenance_note, 256)
    if p.species_id is not None and p.species_id < 1:
        errors.append(("species_id", "must be >= 1"))
    for i, entry in enumerate(p.maintenance_history):
        if not entry.text:
            errors.append((f"maintenance_history[{i}]", "entry text must be non-empty"))


def _user_account(a: e.UserAccount, errors, today):
    _req_str(errors, "username", a.username, 50)
    _req_str(errors, "password_hash", a.password_hash, 128)
    _email(errors, "email", a.email)
    _opt_str(errors, "phone", a.phone, 20)


def _gardener(g: e.Gardener, errors, today):
    _req_str(errors, "name", g.name, 50)
    _req_str(errors, "phone", g.phone, 20)
    _email(errors, "email", g.email)
    _opt_str(errors, "responsible_area", g.responsible_area, 128)
    if today is None:
        from ..times import today_utc

        today = today_utc()
    if g.hire_date > today:
        errors.append(("hire_date", "must not be in the future"))
    if g.account_id < 1:
        errors.append(("account_id", "must reference an account"))


def _supplier(s: e.Supplier, errors, today):
    _req_str(errors, "name", s.name, 50)
    _req_str(errors, "phone", s.phone, 20)
    _opt_str(errors, "supply_information", s.supply_information, 100)
    if s.account_id < 1:
        errors.append(("account_id", "must reference an account"))


def _tree(t: e.Tree, errors, today):
    _plant_fields(t, errors)


def _flower(f: e.Flower, errors, today):
    _plant_fields(f, errors)
    _opt_str(errors, "bloom_period", f.bloom_period, 50)


def _tree_species(s: e.TreeSpecies, errors, today):
    _req_str(errors, "name", s.name, 50)
    _opt_str(errors, "family", s.family, 50)
    _opt_str(errors, "characteristics", s.characteristics, 256)
    _opt_str(errors, "suitable_environment", s.suitable_environment, 256)


def _flower_species(s: e.FlowerSpecies, errors, today):
    _req_str(errors, "common_name", s.common_name, 50)
    _opt_str(errors, "family", s.family, 50)
    _opt_str(errors, "colors", s.colors, 100)
    _opt_str(errors, "flowering_period", s.flowering_period, 100)
    _opt_str(errors, "description", s.description, 256)


def _geo_point(p: e.GeoPoint, errors, today):
    if not -180 <= p.longitude <= 180:
        errors.append(("longitude", "must be within [-180, 180]"))
    if not -90 <= p.latitude <= 90:
        errors.append(("latitude", "must be within [-90, 90]"))


def _green_space(g: e.GreenSpace, errors, today):
    _req_str(errors, "name", g.name, 50)
    area = g.area_sq_m
    if not isinstance(area, Decimal) or not area.is_finite() or not (0 <= area < MAX_AREA):
        errors.append(("area_sq_m", "must be a decimal in [0, 10^8)"))
    elif -area.as_tuple().exponent > 2:
        errors.append(("area_sq_m", "must have at most 2 fraction digits"))
    _geo_point(g.location, errors, today)
    if g.responsible_gardener_id is not None and g.responsible_gardener_id < 1:
        errors.append(("responsible_gardener_id", "must be >= 1"))
    _opt_str(errors, "maintenance_note", g.maintenance_note, 256)


def _task(t: e.MaintenanceTask, errors, today):
    if t.plan_id < 1:
        errors.append(("plan_id", "must reference a plan"))
    if t.assignee_gardener_id < 1:
        errors.append(("assignee_gardener_id", "must reference a gardener"))
    if t.subject.subject_id < 1:
        errors.append(("subject.subject_id", "must be >= 1"))
    _req_str(errors, "location", t.location, 256)
    _opt_str(errors, "required_tools", t.required_tools, 256)
    _opt_str(errors, "completion_notes", t.completion_notes, 2000)
    if t.status in (e.TaskStatus.PENDING,) and (t.completion_photos or t.completion_notes):
        errors.append(("completion_photos", "only settable once work has started"))


def _plan(p: e.MaintenancePlan, errors, today):
    _req_str(errors, "title", p.title, 100)
    _opt_str(errors, "description", p.description, 2000)
    if p.created_by < 1:
        errors.append(("created_by", "must reference an account"))


def _feedback(f: e.Feedback, errors, today):
    _req_str(errors, "title", f.title, 100)
    _req_str(errors, "content", f.content, 2000)
    if f.submitter_id < 1:
        errors.append(("submitter_id", "must reference an account"))
    if f.reply is not None and not f.reply.text:
        errors.append(("reply.text", "must be non-empty"))


def _purchase(p: e.PurchaseApplication, errors, today):
    _req_str(errors, "resource_name", p.resource_name, 50)
    if p.quantity < 1:
        errors.append(("quantity", "must be >= 1"))
    if p.unit_price < 0:
        errors.append(("unit_price", "must be >= 0"))
    if p.supplier_id is not None and p.supplier_id < 1:
        errors.append(("supplier_id", "must be >= 1"))


def _supply(s: e.SupplyApplication, errors, today):
    _req_str(errors, "username", s.username, 50)
    _req_str(errors, "real_name", s.real_name, 50)
    _req_str(errors, "phone", s.phone, 20)
    _req_str(errors, "product_name", s.product_name, 50)
    if s.quantity < 1:
        errors.append(("quantity", "must be >= 1"))


def _attendance(a: e.AttendanceRecord, errors, today):
    if a.account_id < 1:
        errors.append(("account_id", "must reference an account"))


def _announcement(a: e.Announcement, errors, today):
    _req_str(errors, "title", a.title, 100)
    _req_str(errors, "body", a.body, 4000)


def _report(r: e.HealthCheckReport, errors, today):
    for d in r.downgraded:
        if abs(d.old.rank - d.new.rank) != 1:
            errors.append(("downgraded", f"{d.kind} {d.entity_id}: must move exactly one level"))


_VALIDATORS = {
    e.UserAccount: _user_account,
    e.Gardener: _gardener,
    e.Supplier: _supplier,
    e.Tree: _tree,
    e.Flower: _flower,
    e.TreeSpecies: _tree_species,
    e.FlowerSpecies: _flower_species,
    e.GeoPoint: _geo_point,
    e.GreenSpace: _green_space,
    e.MaintenanceTask: _task,
    e.MaintenancePlan: _plan,
    e.Feedback: _feedback,
    e.PurchaseApplication: _purchase,
    e.SupplyApplication: _supply,
    e.AttendanceRecord: _attendance,
    e.Announcement: _announcement,
    e.HealthCheckReport: _report,
}

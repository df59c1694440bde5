"""Embedded persistence for all domain kinds.

A Store keeps one table per entity kind, assigns monotonically increasing
ids (never reused, even after deletes), enforces uniqueness and
referential guards, and supports two modes:

* ``memory`` - everything lives in process, used by tests and loadtests.
* ``file``   - the full state is rewritten atomically (tmp + rename) into
  ``<path>/store.json`` after every committed write.

All mutations take an internal re-entrant lock, so the store can be shared
across request handlers without any caller-side locking; ``batch()`` groups
several operations into one atomic, all-or-nothing commit.
"""
from __future__ import annotations

import json
import os
import threading
from contextlib import contextmanager
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Callable, Iterator

from . import codec
from .domain import entities as ent
from .domain.validation import validate
from .errors import (
    ConflictInUse,
    ImportIntoNonEmpty,
    NotFound,
    UniquenessViolation,
    UnknownVersion,
    UnsupportedVersion,
    ValidationFailed,
)
from .times import to_iso, utc_now

SCHEMA_VERSION = 2
SNAPSHOT_FORMAT_VERSION = 1

ACTIVE_TASK_STATUSES = frozenset(
    {ent.TaskStatus.PENDING, ent.TaskStatus.IN_PROGRESS, ent.TaskStatus.AWAITING_REVIEW}
)
PLAN_BLOCKING_STATUSES = frozenset(
    {ent.TaskStatus.IN_PROGRESS, ent.TaskStatus.AWAITING_REVIEW}
)
OPEN_PURCHASE_STATUSES = frozenset(
    {ent.PurchaseStatus.PENDING, ent.PurchaseStatus.ACCEPTED, ent.PurchaseStatus.SHIPPED}
)

SUBJECT_KIND_TABLE = {
    ent.SubjectKind.TREE: "tree",
    ent.SubjectKind.FLOWER: "flower",
    ent.SubjectKind.GREEN_SPACE: "green_space",
}


@dataclass(frozen=True)
class KindSpec:
    name: str
    entity_type: type
    name_field: str | None = None
    status_field: str | None = None
    unique: tuple = ()      # (constraint, error code, key_fn, message_fn)
    refs: tuple = ()        # fn(store, record) -> (field, reason) | None
    delete_guard: Callable | None = None   # fn(store, record) -> reason | None
    on_delete: Callable | None = None      # fn(store, record) -> None, runs inside the lock


def _ref(field_name: str, target_kind: str, *, optional: bool = False):
    def check(store: "Store", record):
        value = getattr(record, field_name)
        if value is None:
            return None if optional else (field_name, "is required")
        if value not in store._tables[target_kind]:
            return (field_name, f"references unknown {target_kind} {value}")
        return None

    return check


def _task_subject_ref(store: "Store", task: ent.MaintenanceTask):
    table = SUBJECT_KIND_TABLE[task.subject.kind]
    if task.subject.subject_id not in store._tables[table]:
        return ("subject", f"references unknown {table} {task.subject.subject_id}")
    return None


def _guard_account(store: "Store", account: ent.UserAccount):
    for kind in ("gardener", "supplier"):
        if any(r.account_id == account.id for r in store._tables[kind].values()):
            return f"account {account.id} is linked to a {kind} profile"
    if any(f.submitter_id == account.id for f in store._tables["feedback"].values()):
        return f"account {account.id} has submitted feedback"
    if any(a.account_id == account.id for a in store._tables["attendance_record"].values()):
        return f"account {account.id} has attendance records"
    return None


def _guard_gardener(store: "Store", gardener: ent.Gardener):
    for task in store._tables["maintenance_task"].values():
        if task.assignee_gardener_id == gardener.id and task.status in ACTIVE_TASK_STATUSES:
            return f"gardener {gardener.id} has an active task ({task.status.value})"
    for space in store._tables["green_space"].values():
        if space.responsible_gardener_id == gardener.id:
            return f"gardener {gardener.id} is responsible for green space {space.id}"
    return None


def _guard_supplier(store: "Store", supplier: ent.Supplier):
    for p in store._tables["purchase_application"].values():
        if p.supplier_id == supplier.id and p.status in OPEN_PURCHASE_STATUSES:
            return f"supplier {supplier.id} has an open purchase application {p.id}"
    return None


def _guard_subject(subject_kind: ent.SubjectKind):
    def guard(store: "Store", record):
        for task in store._tables["maintenance_task"].values():
            if (
                task.subject.kind is subject_kind
                and task.subject.subject_id == record.id
                and task.status in ACTIVE_TASK_STATUSES
            ):
                return f"{subject_kind.value.lower()} {record.id} has an active task {task.id}"
        return None

    return guard


def _guard_species(plant_kind: str):
    def guard(store: "Store", species):
        for plant in store._tables[plant_kind].values():
            if plant.species_id == species.id:
                return f"species {species.id} is referenced by {plant_kind} {plant.id}"
        return None

    return guard


def _guard_plan(store: "Store", plan: ent.MaintenancePlan):
    for task in store._tables["maintenance_task"].values():
        if task.plan_id == plan.id and task.status in PLAN_BLOCKING_STATUSES:
            return f"plan {plan.id} has a task in {task.status.value}"
    return None


def _cascade_plan_tasks(store: "Store", plan: ent.MaintenancePlan):
    doomed = [t.id for t in store._tables["maintenance_task"].values() if t.plan_id == plan.id]
    for task_id in doomed:
        del store._tables["maintenance_task"][task_id]


REGISTRY: dict[str, KindSpec] = {
    spec.name: spec
    for spec in (
        KindSpec(
            "user_account",
            ent.UserAccount,
            name_field="username",
            unique=(
                (
                    "user_account.username",
                    "USERNAME_TAKEN",
                    lambda r: r.username,
                    lambda r: f"username {r.username!r} is already taken",
                ),
            ),
            delete_guard=_guard_account,
        ),
        KindSpec(
            "gardener",
            ent.Gardener,
            name_field="name",
            refs=(_ref("account_id", "user_account"),),
            delete_guard=_guard_gardener,
        ),
        KindSpec(
            "supplier",
            ent.Supplier,
            name_field="name",
            refs=(_ref("account_id", "user_account"),),
            delete_guard=_guard_supplier,
        ),
        KindSpec(
            "tree",
            ent.Tree,
            name_field="name",
            status_field="health",
            refs=(_ref("species_id", "tree_species", optional=True),),
            delete_guard=_guard_subject(ent.SubjectKind.TREE),
        ),
        KindSpec(
            "flower",
            ent.Flower,
            name_field="name",
            status_field="health",
            refs=(_ref("species_id", "flower_species", optional=True),),
            delete_guard=_guard_subject(ent.SubjectKind.FLOWER),
        ),
        KindSpec(
            "tree_species",
            ent.TreeSpecies,
            name_field="name",
            unique=(
                (
                    "tree_species.name",
                    "SPECIES_NAME_EXISTS",
                    lambda r: r.name,
                    lambda r: f"tree species named {r.name!r} already exists",
                ),
            ),
            delete_guard=_guard_species("tree"),
        ),
        KindSpec(
            "flower_species",
            ent.FlowerSpecies,
            name_field="common_name",
            unique=(
                (
                    "flower_species.common_name",
                    "SPECIES_NAME_EXISTS",
                    lambda r: r.common_name,
                    lambda r: f"flower species named {r.common_name!r} already exists",
                ),
            ),
            delete_guard=_guard_species("flower"),
        ),
        KindSpec(
            "green_space",
            ent.GreenSpace,
            name_field="name",
            status_field="health",
            unique=(
                (
                    "green_space.name",
                    "GREEN_SPACE_NAME_EXISTS",
                    lambda r: r.name,
                    lambda r: "The name of the green space already exists",
                ),
            ),
            refs=(_ref("responsible_gardener_id", "gardener", optional=True),),
            delete_guard=_guard_subject(ent.SubjectKind.GREEN_SPACE),
        ),
        KindSpec(
            "maintenance_plan",
            ent.MaintenancePlan,
            name_field="title",
            refs=(_ref("created_by", "user_account"),),
            delete_guard=_guard_plan,
            on_delete=_cascade_plan_tasks,
        ),
        KindSpec(
            "maintenance_task",
            ent.MaintenanceTask,
            name_field="location",
            status_field="status",
            refs=(
                _ref("plan_id", "maintenance_plan"),
                _ref("assignee_gardener_id", "gardener"),
                _task_subject_ref,
            ),
        ),
        KindSpec(
            "feedback",
            ent.Feedback,
            name_field="title",
            refs=(_ref("submitter_id", "user_account"),),
        ),
        KindSpec(
            "purchase_application",
            ent.PurchaseApplication,
            name_field="resource_name",
            status_field="status",
            refs=(_ref("supplier_id", "supplier", optional=True),),
        ),
        KindSpec(
            "supply_application",
            ent.SupplyApplication,
            name_field="product_name",
            status_field="audit_status",
            unique=(
                (
                    "supply_application.pending_phone",
                    "DUPLICATE_PENDING_PHONE",
                    lambda r: r.phone if r.audit_status is ent.AuditStatus.PENDING else None,
                    lambda r: "There is already a pending application for this cell phone number.",
                ),
            ),
        ),
        KindSpec(
            "attendance_record",
            ent.AttendanceRecord,
            unique=(
                (
                    "attendance_record.account_day",
                    "ALREADY_SIGNED_IN",
                    lambda r: (r.account_id, r.sign_in_date),
                    lambda r: f"account {r.account_id} already signed in on {r.sign_in_date}",
                ),
            ),
            refs=(_ref("account_id", "user_account"),),
        ),
        KindSpec("announcement", ent.Announcement, name_field="title"),
        KindSpec("health_check_report", ent.HealthCheckReport),
    )
}

KINDS = tuple(REGISTRY)


@dataclass(frozen=True)
class PageRequest:
    page: int = 1
    page_size: int = 10

    def __post_init__(self):
        errors = []
        if not isinstance(self.page, int) or self.page < 1:
            errors.append(("page", "must be an integer >= 1"))
        if not isinstance(self.page_size, int) or not 1 <= self.page_size <= 100:
            errors.append(("pageSize", "must be an integer in 1..100"))
        if errors:
            raise ValidationFailed(errors)


@dataclass(frozen=True)
class Page:
    items: tuple
    total_count: int
    page: int
    page_size: int


@dataclass
class Filter:
    """Conjunctive filter: keyword is a case-insensitive substring match on
    the kind's name field; ``exact`` matches fields verbatim; ``contains``
    does case-insensitive substring on arbitrary string fields; ``status``
    matches the kind's status field."""

    keyword: str | None = None
    exact: dict = field(default_factory=dict)
    contains: dict = field(default_factory=dict)
    status: object = None

    def matches(self, spec: KindSpec, record) -> bool:
        if self.keyword is not None:
            name = getattr(record, spec.name_field) if spec.name_field else ""
            if self.keyword.lower() not in name.lower():
                return False
        for fname, wanted in self.exact.items():
            if getattr(record, fname, None) != wanted:
                return False
        for fname, needle in self.contains.items():
            value = getattr(record, fname, None)
            if not isinstance(value, str) or needle.lower() not in value.lower():
                return False
        if self.status is not None:
            if spec.status_field is None:
                return False
            if getattr(record, spec.status_field) is not self.status:
                return False
        return True


class Store:
    def __init__(self, mode: str = "memory", path: str | os.PathLike | None = None):
        if mode not in ("memory", "file"):
            raise ValueError(f"unknown store mode {mode!r}")
        if mode == "file" and path is None:
            raise ValueError("file mode requires a path")
        self._mode = mode
        self._dir = Path(path) if path is not None else None
        self._lock = threading.RLock()
        self._tables: dict[str, dict[int, object]] = {k: {} for k in KINDS}
        self._next_ids: dict[str, int] = {k: 1 for k in KINDS}
        self._schema_version = SCHEMA_VERSION
        self._batch_depth = 0
        if mode == "file":
            self._dir.mkdir(parents=True, exist_ok=True)
            if self._state_path.exists():
                self._load_file()
            else:
                self._persist()

    @property
    def mode(self) -> str:
        return self._mode

    @property
    def schema_version(self) -> int:
        return self._schema_version

    @property
    def _state_path(self) -> Path:
        return self._dir / "store.json"

    # -- transactions ------------------------------------------------------

    @contextmanager
    def batch(self) -> Iterator["Store"]:
        """Group writes into one atomic commit; on error nothing is kept."""
        with self._lock:
            outermost = self._batch_depth == 0
            if outermost:
                backup_tables = {k: dict(t) for k, t in self._tables.items()}
                backup_next = dict(self._next_ids)
            self._batch_depth += 1
            try:
                yield self
            except BaseException:
                self._batch_depth -= 1
                if outermost:
                    self._tables = backup_tables
                    self._next_ids = backup_next
                raise
            self._batch_depth -= 1
            if outermost:
                self._persist()

    # -- core operations ---------------------------------------------------

    def insert(self, kind: str, record):
        spec = REGISTRY[kind]
        with self._lock:
            record = replace(record, id=self._next_ids[kind])
            self._check(spec, record)
            self._tables[kind][record.id] = record
            self._next_ids[kind] += 1
            self._persist()
            return record

    def get(self, kind: str, entity_id: int):
        with self._lock:
            record = self._tables[kind].get(entity_id)
            if record is None:
                raise NotFound(kind, entity_id)
            return record

    def update(self, kind: str, entity_id: int, changes: dict):
        spec = REGISTRY[kind]
        if "id" in changes:
            raise ValidationFailed([("id", "is immutable")])
        with self._lock:
            current = self.get(kind, entity_id)
            try:
                updated = replace(current, **changes)
            except TypeError as exc:
                raise ValidationFailed([("changes", str(exc))]) from exc
            self._check(spec, updated, exclude_id=entity_id)
            self._tables[kind][entity_id] = updated
            self._persist()
            return updated

    def mutate(self, kind: str, entity_id: int, fn: Callable):
        """Atomic read-modify-write: ``fn`` receives the current record and
        returns the replacement. This is the compare-and-set primitive state
        transitions run through."""
        spec = REGISTRY[kind]
        with self._lock:
            current = self.get(kind, entity_id)
            updated = fn(current)
            if updated.id != entity_id:
                raise ValidationFailed([("id", "is immutable")])
            self._check(spec, updated, exclude_id=entity_id)
            self._tables[kind][entity_id] = updated
            self._persist()
            return updated

    def delete(self, kind: str, entity_id: int) -> None:
        spec = REGISTRY[kind]
        with self._lock:
            record = self.get(kind, entity_id)
            if spec.delete_guard is not None:
                reason = spec.delete_guard(self, record)
                if reason is not None:
                    raise ConflictInUse(reason)
            if spec.on_delete is not None:
                spec.on_delete(self, record)
            del self._tables[kind][entity_id]
            self._persist()

    def query(self, kind: str, flt: Filter | None = None, page: PageRequest | None = None) -> Page:
        spec = REGISTRY[kind]
        flt = flt or Filter()
        page = page or PageRequest()
        with self._lock:
            matching = sorted(
                (r for r in self._tables[kind].values() if flt.matches(spec, r)),
                key=lambda r: r.id,
            )
        start = (page.page - 1) * page.page_size
        items = tuple(matching[start : start + page.page_size])
        return Page(items=items, total_count=len(matching), page=page.page, page_size=page.page_size)

    def list_all(self, kind: str) -> tuple:
        with self._lock:
            return tuple(sorted(self._tables[kind].values(), key=lambda r: r.id))

    def find(self, kind: str, predicate: Callable) -> tuple:
        with self._lock:
            return tuple(
                sorted((r for r in self._tables[kind].values() if predicate(r)), key=lambda r: r.id)
            )

    def find_one(self, kind: str, predicate: Callable):
        found = self.find(kind, predicate)
        return found[0] if found else None

    def count(self, kind: str) -> int:
        with self._lock:
            return len(self._tables[kind])

    def counts(self) -> dict[str, int]:
        with self._lock:
            return {kind: len(table) for kind, table in self._tables.items()}

    def is_empty(self) -> bool:
        return all(count == 0 for count in self.counts().values())

    # -- validation helpers --------------------------------------------------

    def _check(self, spec: KindSpec, record, exclude_id: int | None = None):
        errors = validate(record)
        if record.id < 1:
            errors.append(("id", "must be >= 1 once stored"))
        for ref in spec.refs:
            problem = ref(self, record)
            if problem is not None:
                errors.append(problem)
        if errors:
            raise ValidationFailed(errors)
        for constraint, code, key_fn, message_fn in spec.unique:
            key = key_fn(record)
            if key is None:
                continue
            for other in self._tables[spec.name].values():
                if other.id != record.id and other.id != exclude_id and key_fn(other) == key:
                    raise UniquenessViolation(constraint, message_fn(record), code)

    # -- file persistence ----------------------------------------------------

    def _raw_state(self) -> dict:
        return {
            "schema_version": self._schema_version,
            "next_ids": dict(self._next_ids),
            "tables": {
                kind: {str(r.id): codec.encode(r) for r in self.list_all(kind)}
                for kind in KINDS
            },
        }

    def _adopt_raw_state(self, raw: dict) -> None:
        version = raw.get("schema_version")
        if not isinstance(version, int):
            raise UnknownVersion("store metadata is missing a schema version")
        if version > SCHEMA_VERSION:
            raise UnknownVersion(
                f"store schema version {version} is newer than supported {SCHEMA_VERSION}"
            )
        while version < SCHEMA_VERSION:
            raw = MIGRATIONS[version](raw)
            version += 1
        tables: dict[str, dict[int, object]] = {k: {} for k in KINDS}
        for kind in KINDS:
            entity_type = REGISTRY[kind].entity_type
            for id_text, doc in raw.get("tables", {}).get(kind, {}).items():
                record = codec.decode(entity_type, doc)
                tables[kind][int(id_text)] = record
        next_ids = {k: 1 for k in KINDS}
        for kind, value in raw.get("next_ids", {}).items():
            if kind in next_ids:
                next_ids[kind] = int(value)
        for kind in KINDS:
            top = max(tables[kind], default=0)
            next_ids[kind] = max(next_ids[kind], top + 1)
        self._tables = tables
        self._next_ids = next_ids
        self._schema_version = SCHEMA_VERSION

    def _load_file(self) -> None:
        with self._state_path.open(encoding="utf-8") as fp:
            raw = json.load(fp)
        self._adopt_raw_state(raw)
        self._persist()

    def _persist(self) -> None:
        if self._mode != "file" or self._batch_depth > 0:
            return
        tmp = self._state_path.with_suffix(".tmp")
        with tmp.open("w", encoding="utf-8") as fp:
            json.dump(self._raw_state(), fp, sort_keys=True)
        os.replace(tmp, self._state_path)

    def migrate(self) -> int:
        """Bring file state up to the current schema (idempotent)."""
        with self._lock:
            if self._mode == "file" and self._state_path.exists():
                self._load_file()
            return self._schema_version

    # -- snapshots -------------------------------------------------------------

    def export_snapshot(self, path: str | os.PathLike) -> None:
        with self._lock:
            raw = self._raw_state()
        lines = [
            json.dumps(
                {
                    "format_version": SNAPSHOT_FORMAT_VERSION,
                    "exported_at": to_iso(utc_now()),
                    "schema_version": raw["schema_version"],
                },
                sort_keys=True,
            )
        ]
        for kind in KINDS:
            docs = raw["tables"][kind]
            lines.append(
                json.dumps(
                    {"kind": kind, "next_id": raw["next_ids"][kind], "count": len(docs)},
                    sort_keys=True,
                )
            )
            for id_key in sorted(docs, key=int):
                lines.append(json.dumps(docs[id_key], sort_keys=True))
        Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")

    def import_snapshot(self, path: str | os.PathLike) -> None:
        with self._lock:
            if not self.is_empty():
                raise ImportIntoNonEmpty("snapshot import requires an empty store")
            text = Path(path).read_text(encoding="utf-8")
            lines = [line for line in text.splitlines() if line.strip()]
            if not lines:
                raise UnsupportedVersion("snapshot file is empty")
            header = json.loads(lines[0])
            if header.get("format_version") != SNAPSHOT_FORMAT_VERSION:
                raise UnsupportedVersion(
                    f"unsupported snapshot format version {header.get('format_version')!r}"
                )
            raw = {
                "schema_version": header.get("schema_version", SCHEMA_VERSION),
                "next_ids": {},
                "tables": {},
            }
            cursor = 1
            while cursor < len(lines):
                section = json.loads(lines[cursor])
                cursor += 1
                kind, count = section["kind"], section["count"]
                raw["next_ids"][kind] = section["next_id"]
                docs = {}
                for _ in range(count):
                    doc = json.loads(lines[cursor])
                    cursor += 1
                    docs[str(doc["id"])] = doc
                raw["tables"][kind] = docs
            self._adopt_raw_state(raw)
            self._persist()

    def table_dumps(self) -> str:
        """Canonical text dump of every table plus id counters, for
        byte-level comparisons in tests and snapshot verification."""
        with self._lock:
            raw = self._raw_state()
        out = []
        for kind in KINDS:
            out.append(f"== {kind} next_id={raw['next_ids'][kind]}")
            for id_key in sorted(raw["tables"][kind], key=int):
                out.append(json.dumps(raw["tables"][kind][id_key], sort_keys=True))
        return "\n".join(out) + "\n"


def _migrate_1_to_2(raw: dict) -> dict:
    """Version 1 stored tree species distribution as one comma-joined
    string; version 2 stores a proper list."""
    for doc in raw.get("tables", {}).get("tree_species", {}).values():
        value = doc.get("distribution")
        if isinstance(value, str):
            doc["distribution"] = [part.strip() for part in value.split(",") if part.strip()]
    raw["schema_version"] = 2
    return raw


MIGRATIONS: dict[int, Callable[[dict], dict]] = {1: _migrate_1_to_2}

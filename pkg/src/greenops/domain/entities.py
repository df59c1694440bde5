"""Domain model: entities, enumerations, and value objects.

Everything in this module is an immutable value (frozen dataclasses).
State changes go through the functions in `greenops.domain.transitions`,
which take a value and return a new one, so records can be shared freely
between threads.

Ids are assigned by the store; 0 marks a record that has not been
inserted yet.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from datetime import date, datetime
from decimal import Decimal

EntityId = int


class Role(enum.Enum):
    ADMIN = "ADMIN"
    GARDENER = "GARDENER"
    SUPPLIER = "SUPPLIER"


class HealthStatus(enum.Enum):
    """Condition scale, ordered HEALTHY > NEEDS_ATTENTION > SICK > DEAD.

    DEAD is only reachable by an explicit manual set; the automated
    health check floors at SICK.
    """

    HEALTHY = "HEALTHY"
    NEEDS_ATTENTION = "NEEDS_ATTENTION"
    SICK = "SICK"
    DEAD = "DEAD"

    @property
    def rank(self) -> int:
        return _HEALTH_RANK[self]


_HEALTH_RANK = {
    HealthStatus.DEAD: 0,
    HealthStatus.SICK: 1,
    HealthStatus.NEEDS_ATTENTION: 2,
    HealthStatus.HEALTHY: 3,
}
HEALTH_BY_RANK = {rank: status for status, rank in _HEALTH_RANK.items()}


class TaskStatus(enum.Enum):
    PENDING = "PENDING"
    IN_PROGRESS = "IN_PROGRESS"
    AWAITING_REVIEW = "AWAITING_REVIEW"
    COMPLETED = "COMPLETED"
    REJECTED = "REJECTED"


class TaskKind(enum.Enum):
    WATERING = "WATERING"
    FERTILIZING = "FERTILIZING"
    PRUNING = "PRUNING"
    WEEDING = "WEEDING"
    MOWING = "MOWING"
    OTHER = "OTHER"


class SubjectKind(enum.Enum):
    TREE = "TREE"
    FLOWER = "FLOWER"
    GREEN_SPACE = "GREEN_SPACE"


class PurchaseStatus(enum.Enum):
    PENDING = "PENDING"
    ACCEPTED = "ACCEPTED"
    SHIPPED = "SHIPPED"
    DELIVERED = "DELIVERED"
    REJECTED = "REJECTED"


class AuditStatus(enum.Enum):
    PENDING = "PENDING"
    APPROVED = "APPROVED"
    REJECTED = "REJECTED"


@dataclass(frozen=True, slots=True)
class UserAccount:
    id: EntityId
    username: str
    password_hash: str
    role: Role
    email: str | None = None
    phone: str | None = None


@dataclass(frozen=True, slots=True)
class Gardener:
    id: EntityId
    name: str
    phone: str
    hire_date: date
    account_id: EntityId
    email: str | None = None
    responsible_area: str | None = None


@dataclass(frozen=True, slots=True)
class Supplier:
    id: EntityId
    name: str
    phone: str
    account_id: EntityId
    supply_information: str | None = None


@dataclass(frozen=True, slots=True)
class HistoryEntry:
    at: datetime
    text: str


@dataclass(frozen=True, slots=True)
class Tree:
    id: EntityId
    name: str
    category: str
    quantity: int
    planting_area: str
    created_at: datetime
    maintenance_note: str | None = None
    species_id: EntityId | None = None
    health: HealthStatus = HealthStatus.HEALTHY
    image_url: str | None = None
    last_maintained_at: datetime | None = None
    health_marked_at: datetime | None = None
    maintenance_history: tuple[HistoryEntry, ...] = ()


@dataclass(frozen=True, slots=True)
class Flower:
    id: EntityId
    name: str
    category: str
    quantity: int
    planting_area: str
    created_at: datetime
    maintenance_note: str | None = None
    species_id: EntityId | None = None
    health: HealthStatus = HealthStatus.HEALTHY
    image_url: str | None = None
    last_maintained_at: datetime | None = None
    health_marked_at: datetime | None = None
    maintenance_history: tuple[HistoryEntry, ...] = ()
    bloom_period: str | None = None


@dataclass(frozen=True, slots=True)
class TreeSpecies:
    id: EntityId
    name: str
    family: str | None = None
    characteristics: str | None = None
    suitable_environment: str | None = None
    distribution: tuple[str, ...] = ()


@dataclass(frozen=True, slots=True)
class FlowerSpecies:
    id: EntityId
    common_name: str
    family: str | None = None
    colors: str | None = None
    flowering_period: str | None = None
    description: str | None = None
    image_url: str | None = None


@dataclass(frozen=True, slots=True)
class GeoPoint:
    longitude: float
    latitude: float


@dataclass(frozen=True, slots=True)
class GreenSpace:
    id: EntityId
    name: str
    area_sq_m: Decimal
    location: GeoPoint
    created_at: datetime
    responsible_gardener_id: EntityId | None = None
    health: HealthStatus = HealthStatus.HEALTHY
    image_urls: tuple[str, ...] = ()
    maintenance_note: str | None = None
    last_maintained_at: datetime | None = None
    health_marked_at: datetime | None = None
    maintenance_history: tuple[HistoryEntry, ...] = ()


@dataclass(frozen=True, slots=True)
class SubjectRef:
    kind: SubjectKind
    subject_id: EntityId


@dataclass(frozen=True, slots=True)
class MaintenanceTask:
    id: EntityId
    plan_id: EntityId
    kind: TaskKind
    subject: SubjectRef
    assignee_gardener_id: EntityId
    scheduled_at: datetime
    location: str
    required_tools: str | None = None
    status: TaskStatus = TaskStatus.PENDING
    completion_photos: tuple[str, ...] = ()
    completion_notes: str | None = None
    review_comment: str | None = None
    overdue: bool = False


@dataclass(frozen=True, slots=True)
class MaintenancePlan:
    id: EntityId
    title: str
    created_by: EntityId
    description: str | None = None
    task_ids: tuple[EntityId, ...] = ()


@dataclass(frozen=True, slots=True)
class FeedbackReply:
    admin_id: EntityId
    text: str
    at: datetime


@dataclass(frozen=True, slots=True)
class Feedback:
    id: EntityId
    title: str
    content: str
    submitter_id: EntityId
    created_at: datetime
    reply: FeedbackReply | None = None


@dataclass(frozen=True, slots=True)
class PurchaseApplication:
    id: EntityId
    resource_name: str
    quantity: int
    unit_price: int
    status: PurchaseStatus = PurchaseStatus.PENDING
    supplier_id: EntityId | None = None
    feedback_note: str | None = None


@dataclass(frozen=True, slots=True)
class SupplyApplication:
    id: EntityId
    username: str
    real_name: str
    phone: str
    product_name: str
    quantity: int
    created_at: datetime
    audit_status: AuditStatus = AuditStatus.PENDING


@dataclass(frozen=True, slots=True)
class AttendanceRecord:
    id: EntityId
    account_id: EntityId
    sign_in_date: date
    sign_in_time: datetime


@dataclass(frozen=True, slots=True)
class Announcement:
    id: EntityId
    title: str
    body: str
    published_at: datetime
    pinned: bool = False


@dataclass(frozen=True, slots=True)
class Downgrade:
    kind: str
    entity_id: EntityId
    old: HealthStatus
    new: HealthStatus


@dataclass(frozen=True, slots=True)
class HealthCheckReport:
    id: EntityId
    run_at: datetime
    scanned: tuple[tuple[str, int], ...]
    downgraded: tuple[Downgrade, ...] = ()

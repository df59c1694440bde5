"""State machines and health rules.

All functions are pure: they take a value plus an event and return a new
value, raising Forbidden or IllegalTransition when the caller or source
state is wrong. The role check runs first, so an unauthorized caller
learns nothing about the record's state.
"""
from __future__ import annotations

import enum
from dataclasses import replace
from datetime import datetime

from ..errors import Forbidden, IllegalTransition
from .entities import (
    HEALTH_BY_RANK,
    HealthStatus,
    MaintenanceTask,
    PurchaseApplication,
    PurchaseStatus,
    Role,
    TaskStatus,
)


def role_satisfies(actual: Role, required: Role) -> bool:
    """ADMIN dominates the role lattice; other roles only satisfy themselves."""
    return actual is Role.ADMIN or actual is required


class TaskEvent(enum.Enum):
    ACCEPT = "ACCEPT"
    SUBMIT_COMPLETION = "SUBMIT_COMPLETION"
    APPROVE = "APPROVE"
    REJECT = "REJECT"


TASK_TRANSITIONS: dict[tuple[TaskStatus, TaskEvent], TaskStatus] = {
    (TaskStatus.PENDING, TaskEvent.ACCEPT): TaskStatus.IN_PROGRESS,
    (TaskStatus.IN_PROGRESS, TaskEvent.SUBMIT_COMPLETION): TaskStatus.AWAITING_REVIEW,
    (TaskStatus.AWAITING_REVIEW, TaskEvent.APPROVE): TaskStatus.COMPLETED,
    (TaskStatus.AWAITING_REVIEW, TaskEvent.REJECT): TaskStatus.IN_PROGRESS,
}

TASK_EVENT_ROLE: dict[TaskEvent, Role] = {
    TaskEvent.ACCEPT: Role.GARDENER,
    TaskEvent.SUBMIT_COMPLETION: Role.GARDENER,
    TaskEvent.APPROVE: Role.ADMIN,
    TaskEvent.REJECT: Role.ADMIN,
}


def transition_task(
    task: MaintenanceTask,
    event: TaskEvent,
    actor_role: Role,
    *,
    actor_gardener_id: int | None = None,
    photos: tuple[str, ...] = (),
    notes: str | None = None,
    comment: str | None = None,
) -> MaintenanceTask:
    """Apply one lifecycle event and return the updated task.

    Gardener events additionally demand that ``actor_gardener_id`` matches
    the task's assignee; admins may act on any task.
    """
    required = TASK_EVENT_ROLE[event]
    if not role_satisfies(actor_role, required):
        raise Forbidden(f"{event.value} requires role {required.value}")
    if (
        actor_role is Role.GARDENER
        and event in (TaskEvent.ACCEPT, TaskEvent.SUBMIT_COMPLETION)
        and actor_gardener_id is not None
        and actor_gardener_id != task.assignee_gardener_id
    ):
        raise Forbidden("only the assigned gardener may act on this task")
    new_status = TASK_TRANSITIONS.get((task.status, event))
    if new_status is None:
        raise IllegalTransition(f"{event.value} is not legal from {task.status.value}")
    if event is TaskEvent.ACCEPT:
        return replace(task, status=new_status, overdue=False)
    if event is TaskEvent.SUBMIT_COMPLETION:
        return replace(
            task, status=new_status, completion_photos=tuple(photos), completion_notes=notes
        )
    if event is TaskEvent.REJECT:
        return replace(task, status=new_status, review_comment=comment)
    return replace(task, status=new_status, review_comment=comment)


PURCHASE_TRANSITIONS: set[tuple[PurchaseStatus, PurchaseStatus]] = {
    (PurchaseStatus.PENDING, PurchaseStatus.ACCEPTED),
    (PurchaseStatus.PENDING, PurchaseStatus.REJECTED),
    (PurchaseStatus.ACCEPTED, PurchaseStatus.SHIPPED),
    (PurchaseStatus.SHIPPED, PurchaseStatus.DELIVERED),
}

PURCHASE_TARGET_ROLE: dict[PurchaseStatus, Role] = {
    PurchaseStatus.ACCEPTED: Role.SUPPLIER,
    PurchaseStatus.SHIPPED: Role.SUPPLIER,
    PurchaseStatus.DELIVERED: Role.ADMIN,
    PurchaseStatus.REJECTED: Role.ADMIN,
}


def transition_purchase(
    purchase: PurchaseApplication, target: PurchaseStatus, actor_role: Role
) -> PurchaseApplication:
    required = PURCHASE_TARGET_ROLE.get(target)
    if required is None:
        raise IllegalTransition(f"{target.value} is not a reachable target")
    if not role_satisfies(actor_role, required):
        raise Forbidden(f"moving to {target.value} requires role {required.value}")
    if (purchase.status, target) not in PURCHASE_TRANSITIONS:
        raise IllegalTransition(f"{purchase.status.value} -> {target.value} is not legal")
    return replace(purchase, status=target)


def evaluate_health(
    current: HealthStatus, days_since_maintenance: int, stale_threshold_days: int
) -> HealthStatus:
    """One level down when maintenance is overdue, floored at SICK.

    DEAD never changes here; it is only reachable by an explicit manual set.
    """
    if days_since_maintenance < 0:
        raise ValueError("days_since_maintenance must be >= 0")
    if stale_threshold_days < 1:
        raise ValueError("stale_threshold_days must be >= 1")
    if current is HealthStatus.DEAD:
        return current
    if days_since_maintenance > stale_threshold_days:
        return HEALTH_BY_RANK[max(HealthStatus.SICK.rank, current.rank - 1)]
    return current


def improve_health(current: HealthStatus) -> HealthStatus:
    """One level up, capped at HEALTHY; DEAD stays DEAD."""
    if current is HealthStatus.DEAD:
        return current
    return HEALTH_BY_RANK[min(HealthStatus.HEALTHY.rank, current.rank + 1)]

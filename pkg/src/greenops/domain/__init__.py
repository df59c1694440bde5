from .entities import (
    Announcement,
    AttendanceRecord,
    AuditStatus,
    Downgrade,
    EntityId,
    Feedback,
    FeedbackReply,
    Flower,
    FlowerSpecies,
    Gardener,
    GeoPoint,
    GreenSpace,
    HealthCheckReport,
    HealthStatus,
    HistoryEntry,
    MaintenancePlan,
    MaintenanceTask,
    PurchaseApplication,
    PurchaseStatus,
    Role,
    SubjectKind,
    SubjectRef,
    Supplier,
    SupplyApplication,
    TaskKind,
    TaskStatus,
    Tree,
    TreeSpecies,
    UserAccount,
)
from .transitions import (
    PURCHASE_TARGET_ROLE,
    PURCHASE_TRANSITIONS,
    TASK_EVENT_ROLE,
    TASK_TRANSITIONS,
    TaskEvent,
    evaluate_health,
    improve_health,
    role_satisfies,
    transition_purchase,
    transition_task,
)
from .validation import validate

__all__ = [
    "Announcement",
    "AttendanceRecord",
    "AuditStatus",
    "Downgrade",
    "EntityId",
    "Feedback",
    "FeedbackReply",
    "Flower",
    "FlowerSpecies",
    "Gardener",
    "GeoPoint",
    "GreenSpace",
    "HealthCheckReport",
    "HealthStatus",
    "HistoryEntry",
    "MaintenancePlan",
    "MaintenanceTask",
    "PURCHASE_TARGET_ROLE",
    "PURCHASE_TRANSITIONS",
    "PurchaseApplication",
    "PurchaseStatus",
    "Role",
    "SubjectKind",
    "SubjectRef",
    "Supplier",
    "SupplyApplication",
    "TASK_EVENT_ROLE",
    "TASK_TRANSITIONS",
    "TaskEvent",
    "TaskKind",
    "TaskStatus",
    "Tree",
    "TreeSpecies",
    "UserAccount",
    "evaluate_health",
    "improve_health",
    "role_satisfies",
    "transition_purchase",
    "transition_task",
    "validate",
]

"""Periodic jobs: the daily health sweep and overdue-task flagging.

Both jobs are plain functions over the store so tests and the admin
trigger endpoint can run them deterministically; the background scheduler
is a thin loop calling the same functions. Runs are serialized by a mutex
and each run commits atomically.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass
from datetime import datetime, timedelta

from .domain import Downgrade, HealthCheckReport, HealthStatus, TaskStatus, evaluate_health
from .store import Store
from .times import utc_now

PLANT_KINDS = ("tree", "flower", "green_space")
DEFAULT_STALE_DAYS = 30
DEFAULT_OVERDUE_GRACE_HOURS = 48


@dataclass(frozen=True)
class SchedulerConfig:
    interval_seconds: int = 24 * 60 * 60
    stale_threshold_days: int = DEFAULT_STALE_DAYS
    enabled: bool = False

    def __post_init__(self):
        if self.interval_seconds < 1:
            raise ValueError("interval_seconds must be >= 1")
        if self.stale_threshold_days < 1:
            raise ValueError("stale_threshold_days must be >= 1")


def _staleness_baseline(record) -> datetime:
    """Most recent of: last maintenance (or creation when never maintained)
    and the last automated downgrade. Counting from the last downgrade is
    what makes back-to-back runs idempotent while still letting a subject
    decline a further level once another full stale period passes."""
    baseline = record.last_maintained_at or record.created_at
    if record.health_marked_at is not None and record.health_marked_at > baseline:
        baseline = record.health_marked_at
    return baseline


def daily_check(
    store: Store, *, now: datetime | None = None, stale_threshold_days: int = DEFAULT_STALE_DAYS
) -> HealthCheckReport:
    """Sweep every tree, flower, and green space, downgrading the health of
    any subject whose last maintenance lies beyond the threshold, and
    persist a report of what happened."""
    now = now or utc_now()
    downgraded: list[Downgrade] = []
    with store.batch():
        scanned = tuple((kind, store.count(kind)) for kind in PLANT_KINDS)
        for kind in PLANT_KINDS:
            for record in store.list_all(kind):
                if record.health is HealthStatus.DEAD:
                    continue
                days = max(0, (now - _staleness_baseline(record)).days)
                new_health = evaluate_health(record.health, days, stale_threshold_days)
                if new_health is not record.health:
                    store.update(kind, record.id, {"health": new_health, "health_marked_at": now})
                    downgraded.append(Downgrade(kind, record.id, record.health, new_health))
        report = HealthCheckReport(id=0, run_at=now, scanned=scanned, downgraded=tuple(downgraded))
        return store.insert("health_check_report", report)


def flag_overdue_tasks(
    store: Store,
    *,
    now: datetime | None = None,
    grace_hours: int = DEFAULT_OVERDUE_GRACE_HOURS,
) -> list[int]:
    """Mark PENDING tasks whose schedule plus grace period has passed.

    The marker is a plain flag, not a status: accepting the task clears it
    and the status machine is unaffected.
    """
    now = now or utc_now()
    grace = timedelta(hours=grace_hours)
    flagged: list[int] = []
    with store.batch():
        for task in store.list_all("maintenance_task"):
            if task.status is TaskStatus.PENDING and not task.overdue:
                if task.scheduled_at + grace < now:
                    store.update("maintenance_task", task.id, {"overdue": True})
                    flagged.append(task.id)
    return flagged


class HealthScheduler:
    """Owns the run mutex and, when enabled, a daemon thread that triggers
    the jobs on a fixed interval."""

    def __init__(self, store: Store, config: SchedulerConfig = SchedulerConfig()):
        self.store = store
        self.config = config
        self._run_lock = threading.Lock()
        self._stop = threading.Event()
        self._thread: threading.Thread | None = None

    def run_once(self, now: datetime | None = None) -> tuple[HealthCheckReport, list[int]]:
        """Run both jobs back to back; concurrent triggers queue up on the
        mutex rather than interleaving."""
        with self._run_lock:
            now = now or utc_now()
            with self.store.batch():
                report = daily_check(
                    self.store, now=now, stale_threshold_days=self.config.stale_threshold_days
                )
                flagged = flag_overdue_tasks(self.store, now=now)
            return report, flagged

    def start(self) -> None:
        if not self.config.enabled or self._thread is not None:
            return
        self._stop.clear()
        self._thread = threading.Thread(target=self._loop, name="health-scheduler", daemon=True)
        self._thread.start()

    def stop(self) -> None:
        self._stop.set()
        if self._thread is not None:
            self._thread.join(timeout=5)
            self._thread = None

    def _loop(self) -> None:
        while not self._stop.wait(self.config.interval_seconds):
            self.run_once()

"""UTC clock helpers. Timestamps are second-precision UTC throughout."""
from __future__ import annotations

from datetime import date, datetime, timezone


def utc_now() -> datetime:
    return datetime.now(timezone.utc).replace(microsecond=0)


def today_utc() -> date:
    return utc_now().date()


def to_iso(value: datetime) -> str:
    return value.isoformat()


def parse_timestamp(text: str) -> datetime:
    dt = datetime.fromisoformat(text.replace("Z", "+00:00"))
    if dt.tzinfo is None:
        dt = dt.replace(tzinfo=timezone.utc)
    return dt.astimezone(timezone.utc).replace(microsecond=0)


def parse_date(text: str) -> date:
    return date.fromisoformat(text)

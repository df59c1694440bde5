"""Serialization between domain values and JSON-safe documents.

Encoding walks a frozen dataclass and produces plain dicts/lists with
enums as their value strings, timestamps/dates as ISO-8601, and Decimals
as strings. Decoding is driven by the dataclass type hints, so the store
and the snapshot format share one canonical representation.
"""
from __future__ import annotations

import dataclasses
import types
import typing
from datetime import date, datetime
from decimal import Decimal
from enum import Enum

from .times import parse_date, parse_timestamp


def encode(value):
    if value is None or isinstance(value, (int, str, bool, float)):
        return value
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, datetime):
        return value.isoformat()
    if isinstance(value, date):
        return value.isoformat()
    if isinstance(value, Decimal):
        return str(value)
    if isinstance(value, (list, tuple)):
        return [encode(item) for item in value]
    if dataclasses.is_dataclass(value):
        return {
            f.name: encode(getattr(value, f.name)) for f in dataclasses.fields(value)
        }
    raise TypeError(f"cannot encode {type(value).__name__}")


def decode(target_type, doc):
    origin = typing.get_origin(target_type)
    if origin in (typing.Union, types.UnionType):
        args = [a for a in typing.get_args(target_type) if a is not type(None)]
        if doc is None:
            return None
        return decode(args[0], doc)
    if origin is tuple:
        args = typing.get_args(target_type)
        if len(args) == 2 and args[1] is Ellipsis:
            return tuple(decode(args[0], item) for item in doc)
        if len(args) != len(doc):
            raise TypeError(f"expected {len(args)} items, got {len(doc)}")
        return tuple(decode(arg, item) for arg, item in zip(args, doc))
    if dataclasses.is_dataclass(target_type):
        hints = typing.get_type_hints(target_type)
        kwargs = {
            f.name: decode(hints[f.name], doc[f.name]) for f in dataclasses.fields(target_type)
        }
        return target_type(**kwargs)
    if isinstance(target_type, type) and issubclass(target_type, Enum):
        return target_type(doc)
    if target_type is datetime:
        return parse_timestamp(doc)
    if target_type is date:
        return parse_date(doc)
    if target_type is Decimal:
        return Decimal(doc)
    if target_type in (int, str, bool, float):
        if target_type is int and isinstance(doc, bool):
            raise TypeError("bool is not an int")
        if not isinstance(doc, target_type) and not (
            target_type is float and isinstance(doc, int)
        ):
            raise TypeError(f"expected {target_type.__name__}, got {type(doc).__name__}")
        return doc
    raise TypeError(f"cannot decode into {target_type!r}")

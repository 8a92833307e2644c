"""JSON report envelopes with a stable layout.

Floats are written with 17 significant digits so every double survives a
round trip; NaN and infinities become ``null``.
"""

from __future__ import annotations

import dataclasses
import hashlib
import json
import math
import os

import numpy as np

from .checks import Check
from .config import Tolerances
from .harness import FuzzReport

SCHEMA_VERSION = "1"

__all__ = ["SCHEMA_VERSION", "dumps", "envelope", "file_digest", "to_jsonable"]


def file_digest(path: str | os.PathLike) -> str:
    with open(path, "rb") as fh:
        return "sha256:" + hashlib.sha256(fh.read()).hexdigest()


def _check_dict(c: Check, slack_tol: float | None) -> dict:
    d = {"id": c.id, "lhs": c.lhs, "rhs": c.rhs, "slack": c.slack}
    if slack_tol is not None:
        d["holds"] = c.holds(slack_tol)
    return d


def to_jsonable(obj, slack_tol: float | None = None):
    """Convert results into plain dicts, lists and scalars."""
    if isinstance(obj, FuzzReport):
        return obj.to_dict()
    if isinstance(obj, Check):
        return _check_dict(obj, slack_tol)
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: to_jsonable(getattr(obj, f.name), slack_tol) for f in dataclasses.fields(obj)}
    if isinstance(obj, np.ndarray):
        return [to_jsonable(x, slack_tol) for x in obj.tolist()]
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(x, slack_tol) for x in obj]
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v, slack_tol) for k, v in obj.items()}
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer, int)):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        return float(obj)
    return obj


def _encode(obj, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if obj is None:
        return "null"
    if obj is True:
        return "true"
    if obj is False:
        return "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        if not math.isfinite(obj):
            return "null"
        return format(obj, ".17g")
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{_encode(str(k), indent, level + 1)}: {_encode(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [pad + _encode(v, indent, level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot encode {type(obj).__name__}")


def dumps(obj, indent: int = 2) -> str:
    return _encode(to_jsonable(obj), indent, 0) + "\n"


def envelope(
    command: str,
    inputs: list[dict],
    tols: Tolerances,
    result,
    verified: bool,
) -> dict:
    return {
        "version": SCHEMA_VERSION,
        "command": command,
        "inputs": inputs,
        "tolerances": tols.as_dict(),
        "result": to_jsonable(result, tols.slack_tol),
        "verified": bool(verified),
    }

"""File formats: CSV probability tables and JSON documents.

Floats are always written with 17 significant digits, which makes every
document re-parse to bit-identical values.
"""
from __future__ import annotations

import csv
import io
import json
import math
import sys
from typing import Any

import numpy as np

from .mvee import RangeEllipsoid
from .qubit import QubitPovm, StateSet


class MalformedInput(ValueError):
    """Unreadable file or a document that violates its schema."""


def read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise MalformedInput(f"cannot read {path}: {exc}") from exc


def parse_table(text: str) -> np.ndarray:
    """Rows = inputs, columns = outcomes; ``#`` lines are comments/headers."""
    rows = []
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    for lineno, rec in enumerate(csv.reader(lines), 1):
        try:
            rows.append([float(x) for x in rec if x.strip() != ""])
        except ValueError as exc:
            raise MalformedInput(f"row {lineno}: {exc}") from exc
    if not rows:
        raise MalformedInput("table has no rows")
    if len({len(r) for r in rows}) != 1 or len(rows[0]) == 0:
        raise MalformedInput("table rows have inconsistent lengths")
    T = np.array(rows)
    if not np.all(np.isfinite(T)):
        raise MalformedInput("table has non-finite entries")
    return T


def read_table(path: str) -> np.ndarray:
    return parse_table(read_text(path))


def format_table(T, header: str | None = None) -> str:
    buf = io.StringIO()
    if header:
        buf.write(f"# {header}\n")
    for row in np.atleast_2d(T):
        buf.write(",".join(_fmt_number(x) for x in row) + "\n")
    return buf.getvalue()


def _fmt_number(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    x = float(x)
    if not math.isfinite(x):
        raise ValueError("cannot serialize a non-finite number")
    s = format(x, ".17g")
    if "." not in s and "e" not in s and "n" not in s:
        s += ".0"
    return s


def dumps(obj: Any, indent: int = 2, _level: int = 0) -> str:
    """JSON text with every float printed to 17 significant digits."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, np.ndarray):
        obj = obj.tolist()
    if obj is None or isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, (bool, np.bool_, int, np.integer, float, np.floating)):
        return _fmt_number(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple, np.ndarray)) for v in obj):
            return "[" + ", ".join(dumps(v, indent, _level + 1) for v in obj) + "]"
        return "[\n" + ",\n".join(pad + dumps(v, indent, _level + 1) for v in obj) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"invalid JSON: {exc}") from exc


def read_json(path: str) -> Any:
    return loads(read_text(path))


def _matrix(value, name: str, shape=None) -> np.ndarray:
    try:
        M = np.array(value, dtype=float)
    except (TypeError, ValueError) as exc:
        raise MalformedInput(f"{name}: not a numeric array") from exc
    if shape is not None and (M.ndim != len(shape) or any(
            s is not None and s != d for s, d in zip(shape, M.shape))):
        raise MalformedInput(f"{name}: expected shape {shape}, got {M.shape}")
    if not np.all(np.isfinite(M)):
        raise MalformedInput(f"{name}: non-finite entries")
    return M


def ellipsoid_to_dict(E: RangeEllipsoid) -> dict:
    return {"n": E.n, "t": E.t.tolist(), "Q": E.Q.tolist()}


def ellipsoid_from_dict(d: dict) -> RangeEllipsoid:
    if not isinstance(d, dict) or "t" not in d or "Q" not in d:
        raise MalformedInput('ellipsoid needs "t" and "Q"')
    t = _matrix(d["t"], "t", (None,))
    Q = _matrix(d["Q"], "Q", (len(t), len(t)))
    if "n" in d and d["n"] != len(t):
        raise MalformedInput('"n" does not match the length of "t"')
    return RangeEllipsoid(t, Q)


def povm_to_dict(P: QubitPovm) -> dict:
    return {"effects": [{"a": e.a, "b": e.b.tolist()} for e in P.effects]}


def povm_from_dict(d: dict) -> QubitPovm:
    if not isinstance(d, dict) or not isinstance(d.get("effects"), list):
        raise MalformedInput('POVM needs an "effects" list')
    a, B = [], []
    for k, eff in enumerate(d["effects"]):
        if not isinstance(eff, dict) or "a" not in eff or "b" not in eff:
            raise MalformedInput(f'effect {k} needs "a" and "b"')
        a.append(float(_matrix(eff["a"], f"effect {k} a", ())))
        B.append(_matrix(eff["b"], f"effect {k} b", (3,)))
    return QubitPovm.from_arrays(a, np.array(B).reshape(len(a), 3))


def states_to_dict(S: StateSet) -> dict:
    return {"bloch": S.bloch.tolist()}


def states_from_dict(d: dict) -> StateSet:
    if not isinstance(d, dict) or "bloch" not in d:
        raise MalformedInput('states need a "bloch" list')
    R = _matrix(d["bloch"], "bloch", (None, 3))
    if R.shape[0] == 0:
        raise MalformedInput("state list is empty")
    try:
        return StateSet(R)
    except ValueError as exc:
        raise MalformedInput(str(exc)) from exc


def projector_from_json(d) -> np.ndarray:
    if isinstance(d, dict):
        d = d.get("projector", d.get("P"))
    return _matrix(d, "projector", (3, 3))


def points_from_text(text: str) -> np.ndarray:
    """2D points from JSON ``{"points": [[x, y], ...]}`` or from CSV."""
    stripped = text.lstrip()
    if stripped.startswith("{") or stripped.startswith("["):
        d = loads(text)
        if isinstance(d, dict):
            d = d.get("points")
        return _matrix(d, "points", (None, 2))
    T = parse_table(text)
    if T.shape[1] != 2:
        raise MalformedInput("points must have two coordinates")
    return T

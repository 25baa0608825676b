"""Point files and report serialization.

Input files are JSON (``{"dimension": n, "points": [[...], ...]}``) or CSV
(one point per row). Entries may be integers, ``"p/q"`` strings or decimal
strings; JSON number literals are parsed exactly as well, never through a
binary float.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional

from .identity import Configuration, DimensionMismatch
from .scalar_linalg import EXACT, format_rational, to_rational


class ParseError(ValueError):
    pass


def _exact_number(text: str) -> Fraction:
    return Fraction(text)


def parse_entry(value: Any) -> Fraction:
    try:
        return to_rational(value)
    except (TypeError, ValueError) as exc:
        raise ParseError(str(exc)) from exc


def parse_point(text: str) -> list[Fraction]:
    """Parse ``"1/4,1/2"`` (or whitespace-separated) coordinates."""
    parts = [t for t in text.replace(",", " ").split() if t]
    if not parts:
        raise ParseError("empty point")
    return [parse_entry(t) for t in parts]


def _load_json(text: str) -> tuple[Optional[int], list[list[Fraction]]]:
    try:
        data = json.loads(text, parse_float=_exact_number, parse_int=int)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    if isinstance(data, list):
        dimension, raw = None, data
    elif isinstance(data, dict) and "points" in data:
        dimension, raw = data.get("dimension"), data["points"]
    else:
        raise ParseError('expected an object with a "points" list')
    if dimension is not None and (not isinstance(dimension, int) or isinstance(dimension, bool)):
        raise ParseError("dimension must be an integer")
    if not isinstance(raw, list) or not all(isinstance(p, list) for p in raw):
        raise ParseError("points must be a list of coordinate lists")
    return dimension, [[parse_entry(x) for x in p] for p in raw]


def _load_csv(text: str) -> tuple[Optional[int], list[list[Fraction]]]:
    rows = [r for r in csv.reader(io.StringIO(text)) if any(c.strip() for c in r)]
    if rows and not _looks_numeric(rows[0]):
        rows = rows[1:]  # header
    points = [[parse_entry(c) for c in r] for r in rows]
    return None, points


def _looks_numeric(row: list[str]) -> bool:
    try:
        for c in row:
            to_rational(c)
    except (ValueError, TypeError):
        return False
    return True


def load_points(path) -> tuple[int, list[list[Fraction]]]:
    """Read a point file; returns the dimension and the exact points."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    if path.suffix.lower() == ".csv":
        dimension, points = _load_csv(text)
    else:
        stripped = text.lstrip()
        if stripped.startswith("{") or stripped.startswith("["):
            dimension, points = _load_json(text)
        else:
            dimension, points = _load_csv(text)
    if not points:
        raise ParseError("no points in file")
    if dimension is None:
        dimension = len(points[0])
    for k, p in enumerate(points):
        if len(p) != dimension:
            raise DimensionMismatch(f"point {k} has {len(p)} coordinates, expected {dimension}")
    return dimension, points


def load_configuration(path, backend: str = EXACT) -> Configuration:
    dimension, points = load_points(path)
    return Configuration(dimension, tuple(points), EXACT).as_backend(backend)


def format_scalar(x):
    if isinstance(x, Fraction):
        return format_rational(x)
    if isinstance(x, int):
        return str(x)
    return x


def config_to_dict(cfg: Configuration) -> dict:
    return {
        "dimension": cfg.dimension,
        "points": [[format_scalar(x) for x in p] for p in cfg.points],
    }


def config_from_dict(data: dict, backend: str = EXACT) -> Configuration:
    points = tuple(tuple(to_rational(x) for x in p) for p in data["points"])
    return Configuration(int(data["dimension"]), points, EXACT).as_backend(backend)


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=False) + "\n"


def write_report(report: dict, path) -> None:
    Path(path).write_text(dumps(report), encoding="utf-8")

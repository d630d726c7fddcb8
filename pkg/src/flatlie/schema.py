"""JSON schemas and loaders for the command-line file formats.

Rationals are written as integers or strings ``"p"`` / ``"p/q"``; floats
are rejected by the schemas.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import jsonschema

from . import metric
from .doubleext import ExtensionData
from .errors import SchemaError
from .milnor import MilnorData

RATIONAL = {
    "oneOf": [
        {"type": "integer"},
        {"type": "string", "pattern": r"^\s*[+-]?\d+(\s*/\s*[+-]?\d+)?\s*$"},
    ]
}
VECTOR = {"type": "array", "items": RATIONAL}
MATRIX = {"type": "array", "items": VECTOR}

METRIC_ALGEBRA = {
    "type": "object",
    "required": ["dim", "metric"],
    "properties": {
        "dim": {"type": "integer", "minimum": 0},
        "basis": {"type": "array", "items": {"type": "string"}},
        "brackets": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["i", "j", "coeffs"],
                "properties": {
                    "i": {"type": "integer", "minimum": 0},
                    "j": {"type": "integer", "minimum": 0},
                    "coeffs": VECTOR,
                },
            },
        },
        "metric": MATRIX,
    },
}

EXTENSION_DATA = {
    "type": "object",
    "required": ["xi", "D"],
    "properties": {"xi": MATRIX, "D": MATRIX, "mu": RATIONAL, "b0": VECTOR},
}

EXTEND_BUNDLE = {
    "type": "object",
    "required": ["base", "data"],
    "properties": {"base": METRIC_ALGEBRA, "data": EXTENSION_DATA},
}

MILNOR_DATA = {
    "type": "object",
    "required": ["p"],
    "properties": {
        "p": {"type": "integer", "minimum": 0},
        "u": {"type": "array", "items": VECTOR},
    },
}


def read_json(path: str | Path) -> Any:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise SchemaError(f"{path}: cannot read ({exc.strerror})") from None
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON: {exc}") from None


def validate(payload: Any, schema: dict, where: str = "input") -> None:
    try:
        jsonschema.validate(payload, schema)
    except jsonschema.ValidationError as exc:
        loc = "/".join(str(p) for p in exc.absolute_path)
        raise SchemaError(f"{where}{'/' + loc if loc else ''}: {exc.message}") from None


def _shape_check(payload: dict, where: str) -> None:
    n = payload["dim"]
    rows = payload["metric"]
    if len(rows) != n or any(len(r) != n for r in rows):
        raise SchemaError(f"{where}: metric must be {n}x{n}")
    for b in payload.get("brackets", []):
        if len(b["coeffs"]) != n or b["i"] >= n or b["j"] >= n:
            raise SchemaError(f"{where}: bracket ({b['i']}, {b['j']}) does not fit dimension {n}")


def metric_algebra_from(payload: Any, where: str = "input") -> metric.MetricLieAlgebra:
    """Validate and build; Jacobi and nondegeneracy failures propagate as
    mathematical errors, not schema errors."""
    validate(payload, METRIC_ALGEBRA, where)
    _shape_check(payload, where)
    return metric.from_json(payload)


def extension_data_from(payload: Any, where: str = "input") -> ExtensionData:
    validate(payload, EXTENSION_DATA, where)
    return ExtensionData.from_json(payload)


def milnor_data_from(payload: Any, where: str = "input") -> MilnorData:
    validate(payload, MILNOR_DATA, where)
    return MilnorData.from_json(payload)

"""JSON persistence helpers shared by every descriptor format.

Every document carries ``schema_version``; unknown fields are rejected with
the dotted path of the offending field so the CLI can point at it.
"""

from __future__ import annotations

import json
from pathlib import Path

SCHEMA_VERSION = 1


class DescriptorError(ValueError):
    """Malformed descriptor; the message names the offending field."""


def check_version(data, expected: int, what: str) -> None:
    if not isinstance(data, dict):
        raise DescriptorError(f"{what}: expected a JSON object, got {type(data).__name__}")
    if "schema_version" not in data:
        raise DescriptorError(f"{what}: field 'schema_version' missing (expected {expected})")
    if data["schema_version"] != expected:
        raise DescriptorError(
            f"{what}: field 'schema_version' is {data['schema_version']!r}, expected schema version {expected}"
        )


def check_fields(data, allowed: set, what: str, required: set | None = None) -> None:
    if not isinstance(data, dict):
        raise DescriptorError(f"{what}: expected a JSON object, got {type(data).__name__}")
    extra = sorted(set(data) - set(allowed))
    if extra:
        raise DescriptorError(f"{what}: unknown field '{extra[0]}'")
    need = allowed if required is None else required
    missing = sorted(set(need) - set(data))
    if missing:
        raise DescriptorError(f"{what}: field '{missing[0]}' missing")


def expect_int(value, field: str, minimum: int | None = None) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise DescriptorError(f"field '{field}': expected an integer, got {value!r}")
    if minimum is not None and value < minimum:
        raise DescriptorError(f"field '{field}': must be >= {minimum}, got {value}")
    return value


def expect_int_list(value, field: str, length: int | None = None) -> tuple:
    if not isinstance(value, list):
        raise DescriptorError(f"field '{field}': expected a list of integers, got {value!r}")
    for i, x in enumerate(value):
        expect_int(x, f"{field}[{i}]")
    if length is not None and len(value) != length:
        raise DescriptorError(f"field '{field}': expected length {length}, got {len(value)}")
    return tuple(value)


def dumps(data) -> str:
    """Canonical, byte-stable JSON text."""
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def load_json(path) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise DescriptorError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DescriptorError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from exc


def write_json(path, data) -> None:
    Path(path).write_text(dumps(data))

"""Plain ``key: value`` report documents with a fixed key order."""
from __future__ import annotations

from typing import Iterable


def format_value(value) -> str:
    if value is None:
        return "none"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, tuple) and all(isinstance(a, int) for a in value):
        return "(" + ",".join(str(a) for a in value) + ")"
    if isinstance(value, (list, tuple)):
        return " ".join(format_value(v) for v in value) if value else "[]"
    return str(value)


def format_report(fields: Iterable[tuple[str, object]]) -> str:
    lines = []
    for key, value in fields:
        if ":" in key or "\n" in key:
            raise ValueError(f"bad report key {key!r}")
        lines.append(f"{key}: {format_value(value)}")
    return "\n".join(lines) + "\n"


def parse_report(text: str) -> dict[str, str]:
    """Inverse of :func:`format_report` at the string level (values stay raw)."""
    out = {}
    for line in text.splitlines():
        if not line.strip():
            continue
        key, _, value = line.partition(": ")
        out[key] = value
    return out

"""Deterministic CSV and JSON rendering for the CLI.

Floats are written in Python's shortest round-trip representation, data
carries no timestamps, and key order is fixed, so identical configurations
produce byte-identical files.  CSV files start with ``# key = value``
metadata lines followed by an RFC-4180-style quoted table; JSON files are a
single object with ``meta`` and ``rows`` keys.
"""

from __future__ import annotations

import csv
import io
import json
import math
import sys
from pathlib import Path

__all__ = ["fmt", "render_csv", "render_json", "write_text"]


def fmt(value) -> str:
    """Shortest round-trip text for a float; passthrough for other scalars."""
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        return repr(value)
    return str(value)


def _flatten_meta(meta: dict, prefix: str = "") -> list[tuple[str, str]]:
    items: list[tuple[str, str]] = []
    for key, value in meta.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            items.extend(_flatten_meta(value, prefix=f"{name}."))
        elif value is None:
            continue
        else:
            items.append((name, fmt(value)))
    return items


def render_csv(meta: dict, header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    for key, value in _flatten_meta(meta):
        buf.write(f"# {key} = {value}\n")
    writer = csv.writer(buf, quoting=csv.QUOTE_MINIMAL, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(v) for v in row])
    return buf.getvalue()


def _sanitize(obj):
    """Replace non-finite floats with None so the JSON stays standard."""
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    if isinstance(obj, dict):
        return {k: _sanitize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_sanitize(v) for v in obj]
    return obj


def render_json(payload: dict) -> str:
    return json.dumps(_sanitize(payload), indent=2, allow_nan=False) + "\n"


def write_text(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")

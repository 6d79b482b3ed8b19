"""CSV emission: UTF-8, LF endings, 17-significant-digit floats.

Floats are rendered with %.17g so every value round-trips through
float() to the identical binary; None renders as an empty cell; a
non-finite number is a bug upstream and raises rather than emitting.
"""

from __future__ import annotations

import math

import numpy as np


def format_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        f = float(value)
        if not math.isfinite(f):
            raise ValueError(f"non-finite value {f!r} in CSV cell")
        return format(f, ".17g")
    text = str(value)
    if any(ch in text for ch in ',"\r\n'):
        raise ValueError(f"cell {text!r} would need quoting; not supported")
    return text


def rows_to_bytes(columns: list[str], rows: list[dict]) -> bytes:
    lines = [",".join(columns)]
    for row in rows:
        lines.append(",".join(format_cell(row[col]) for col in columns))
    return ("\n".join(lines) + "\n").encode("utf-8")


def emit_csv(path: str, columns: list[str], rows: list[dict]) -> bytes:
    """Write the table; returns the exact bytes written."""
    payload = rows_to_bytes(columns, rows)
    try:
        with open(path, "wb") as fh:
            fh.write(payload)
    except OSError as exc:
        raise OSError(f"writing {path}: {exc}") from exc
    return payload

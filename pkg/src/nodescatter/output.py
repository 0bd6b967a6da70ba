"""CSV / JSON table writers with all-or-nothing file output."""

from __future__ import annotations

import io
import json
import os
import sys
import tempfile
from pathlib import Path

import numpy as np

FORMATS = ("csv", "json")


def _cell(value):
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), ".17g")


def render_csv(columns: dict[str, np.ndarray]) -> str:
    """Header plus one line per row, ``.`` decimals, 17 significant digits, LF endings."""
    names = list(columns)
    buf = io.StringIO()
    buf.write(",".join(names) + "\n")
    for row in zip(*(np.asarray(columns[k]).tolist() for k in names)):
        buf.write(",".join(_cell(v) for v in row) + "\n")
    return buf.getvalue()


def render_json(columns: dict[str, np.ndarray]) -> str:
    """Array of objects with the same keys as the CSV header."""
    names = list(columns)
    rows = [dict(zip(names, row)) for row in zip(*(np.asarray(columns[k]).tolist() for k in names))]
    return json.dumps(rows, indent=None, separators=(",", ":")) + "\n"


def render(columns: dict[str, np.ndarray], fmt: str) -> str:
    if fmt == "csv":
        return render_csv(columns)
    if fmt == "json":
        return render_json(columns)
    raise ValueError(f"unknown output format {fmt!r}; expected one of {FORMATS}")


def write_text_atomic(text: str, out) -> None:
    """Write ``text`` to ``out`` via a temporary file and rename; ``-`` means stdout."""
    if out in (None, "-"):
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    path = Path(out)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", suffix=".tmp", dir=path.parent or ".")
    try:
        with os.fdopen(fd, "w", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_table(columns: dict[str, np.ndarray], out, fmt: str = "csv") -> None:
    write_text_atomic(render(columns, fmt), out)

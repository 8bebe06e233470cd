"""CSV and JSON writers for decoherence tables.

CSV: UTF-8, LF line endings, comma separator, floats with 17 significant
digits, and ``# key: value`` metadata lines ahead of the header row.
"""

from __future__ import annotations

import json
import math
from typing import IO, Iterable, Mapping, Sequence


def format_value(value) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return format(value, ".17g")
    if isinstance(value, complex):
        return format(value, ".17g")
    return str(value)


def write_csv(stream: IO[str], columns: Sequence[str], rows: Iterable[Sequence], params: Mapping[str, object] = None):
    for key, value in (params or {}).items():
        stream.write(f"# {key}: {format_value(value)}\n")
    stream.write(",".join(columns) + "\n")
    for row in rows:
        stream.write(",".join(format_value(v) for v in row) + "\n")


def _jsonable(value):
    if isinstance(value, float) and not math.isfinite(value):
        return str(value)
    if isinstance(value, complex):
        return format_value(value)
    return value


def write_json(stream: IO[str], columns: Sequence[str], rows: Iterable[Sequence], params: Mapping[str, object] = None):
    doc = {
        "params": {k: _jsonable(v) for k, v in (params or {}).items()},
        "columns": list(columns),
        "rows": [[_jsonable(v) for v in row] for row in rows],
    }
    json.dump(doc, stream, indent=1)
    stream.write("\n")


WRITERS = {"csv": write_csv, "json": write_json}

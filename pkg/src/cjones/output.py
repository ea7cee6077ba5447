"""Row emission for the CLI: CSV with a header row, or one JSON object per line."""
import csv
import io
import json
import math
from typing import Iterable, Mapping, Sequence, TextIO

import mpmath

SIGNIFICANT_DIGITS = 17


def format_value(value) -> str:
    """Render reals with 17 significant digits; ints and strings pass through."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, str):
        return value
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        value = mpmath.mpf(value)
    return mpmath.nstr(value, SIGNIFICANT_DIGITS)


def _json_value(value):
    text = format_value(value)
    if isinstance(value, (bool, int, str)) or value is None:
        return value
    try:
        number = float(text)
    except ValueError:
        return text
    # JSON has no NaN literal
    return None if math.isnan(number) else number


def render_csv(columns: Sequence[str], rows: Iterable[Mapping]) -> str:
    output = io.StringIO()
    writer = csv.writer(output, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_value(row.get(column)) for column in columns])
    return output.getvalue()


def render_json(columns: Sequence[str], rows: Iterable[Mapping]) -> str:
    lines = [
        json.dumps({column: _json_value(row.get(column)) for column in columns})
        for row in rows
    ]
    return "".join(line + "\n" for line in lines)


def emit_rows(columns: Sequence[str], rows: Iterable[Mapping], stream: TextIO, as_json: bool = False) -> None:
    stream.write(render_json(columns, rows) if as_json else render_csv(columns, rows))
    stream.flush()

import csv
import math
from typing import Any, Iterable, Sequence, TextIO

__all__ = ("MISSING", "format_value", "write_rows",)

MISSING = "NA"


def format_value(value: Any) -> str:
    """
    Format a CSV cell; floats use 17 significant digits and non-finite floats become `MISSING`.
    """
    if isinstance(value, bool):
        return str(int(value))
    if isinstance(value, float) or hasattr(value, "dtype"):
        number = float(value)
        if not math.isfinite(number):
            return MISSING
        return f"{number:.17g}"
    if value is None:
        return MISSING
    return str(value)


def write_rows(stream: TextIO, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_value(v) for v in row])

"""Columnar dataset model: typed columns, CSV ingestion/emission, conversions.

A Frame is an immutable, ordered collection of equal-length named columns.
Missing is represented by None and is distinct from the empty string and
from NaN; Float columns never hold NaN. Timestamps are zone-less civil
datetimes at second precision.
"""

from __future__ import annotations

import csv
import io
import math
import re
from dataclasses import dataclass
from datetime import datetime
from pathlib import Path
from enum import Enum
from typing import BinaryIO, Iterable, Sequence, Union

from .errors import ColumnNotFoundError, TriplabError

Value = Union[str, int, float, bool, datetime, None]


class ColumnType(Enum):
    TEXT = "text"
    INT = "int"
    FLOAT = "float"
    TIMESTAMP = "timestamp"
    BOOL = "bool"


NUMERIC_TYPES = (ColumnType.INT, ColumnType.FLOAT)

#: Canonical telematics header, in dataset column order.
TELEMATICS_HEADER = (
    "vehicle_id",
    "timestamp",
    "start_latitude",
    "start_longitude",
    "end_latitude",
    "end_longitude",
    "average_speed",
)

_TIMESTAMP_RE = re.compile(r"(\d{4})-(\d{2})-(\d{2})([T ])(\d{2}):(\d{2}):(\d{2})")
_INT_RE = re.compile(r"[+-]?[0-9]+")
_FLOAT_RE = re.compile(r"[+-]?(?:[0-9]+\.?[0-9]*|\.[0-9]+)(?:[eE][+-]?[0-9]+)?")


def parse_timestamp(text: str) -> datetime:
    """Parse ``YYYY-MM-DDTHH:MM:SS``; a single space is accepted in place of T.

    Components must be calendar-valid (leap years included); anything else
    raises TriplabError carrying the offending text.
    """
    m = _TIMESTAMP_RE.fullmatch(text)
    if m is None:
        raise TriplabError(f"not a timestamp: {text!r} (expected YYYY-MM-DDTHH:MM:SS)")
    year, month, day, _sep, hour, minute, second = m.groups()
    try:
        return datetime(int(year), int(month), int(day), int(hour), int(minute), int(second))
    except ValueError as exc:
        raise TriplabError(f"invalid timestamp {text!r}: {exc}") from None


def _is_strict_iso_timestamp(text: str) -> bool:
    # Inference is stricter than parse_timestamp: only the T separator counts
    # as ISO 8601, so generator-style "YYYY-MM-DD HH:MM:SS" text stays Text.
    m = _TIMESTAMP_RE.fullmatch(text)
    if m is None or m.group(4) != "T":
        return False
    try:
        parse_timestamp(text)
        return True
    except TriplabError:
        return False


def _parse_int(text: str) -> int | None:
    if _INT_RE.fullmatch(text) is None:
        return None
    return int(text)


def _parse_float(text: str) -> float | None:
    # The pattern admits only finite decimal forms; "nan"/"inf" stay Text.
    if _FLOAT_RE.fullmatch(text) is None:
        return None
    return float(text)


def _parse_bool(text: str) -> bool | None:
    lowered = text.lower()
    if lowered == "true":
        return True
    if lowered == "false":
        return False
    return None


def _conforms(value: Value, dtype: ColumnType) -> bool:
    if dtype is ColumnType.TEXT:
        return type(value) is str
    if dtype is ColumnType.INT:
        return type(value) is int
    if dtype is ColumnType.FLOAT:
        return type(value) is float and not math.isnan(value)
    if dtype is ColumnType.BOOL:
        return type(value) is bool
    return (
        isinstance(value, datetime)
        and value.tzinfo is None
        and value.microsecond == 0
    )


@dataclass(frozen=True)
class Column:
    name: str
    dtype: ColumnType
    values: tuple[Value, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        for i, v in enumerate(self.values):
            if v is not None and not _conforms(v, self.dtype):
                raise TriplabError(
                    f"column {self.name!r}: value {v!r} at row {i} does not conform "
                    f"to dtype {self.dtype.value}"
                )

    def non_missing(self) -> list[tuple[int, Value]]:
        """(row index, value) pairs for the non-Missing entries."""
        return [(i, v) for i, v in enumerate(self.values) if v is not None]


@dataclass(frozen=True)
class Frame:
    columns: tuple[Column, ...]

    def __post_init__(self):
        object.__setattr__(self, "columns", tuple(self.columns))
        names = [c.name for c in self.columns]
        if len(set(names)) != len(names):
            dupes = sorted({n for n in names if names.count(n) > 1})
            raise TriplabError(f"duplicate column names: {', '.join(dupes)}")
        lengths = {len(c.values) for c in self.columns}
        if len(lengths) > 1:
            raise TriplabError(f"columns have unequal lengths: {sorted(lengths)}")

    @classmethod
    def from_columns(
        cls, spec: Iterable[tuple[str, ColumnType, Sequence[Value]]]
    ) -> "Frame":
        return cls(tuple(Column(name, dtype, tuple(vals)) for name, dtype, vals in spec))

    @property
    def row_count(self) -> int:
        return len(self.columns[0].values) if self.columns else 0

    @property
    def column_names(self) -> tuple[str, ...]:
        return tuple(c.name for c in self.columns)

    def has_column(self, name: str) -> bool:
        return any(c.name == name for c in self.columns)

    def column(self, name: str) -> Column:
        for c in self.columns:
            if c.name == name:
                return c
        raise ColumnNotFoundError(name, self.column_names)

    def with_column(self, column: Column) -> "Frame":
        """Append a column; refuses to overwrite an existing name."""
        if self.has_column(column.name):
            raise TriplabError(f"column {column.name!r} already exists")
        if self.columns and len(column.values) != self.row_count:
            raise TriplabError(
                f"new column {column.name!r} has {len(column.values)} values, "
                f"frame has {self.row_count} rows"
            )
        return Frame(self.columns + (column,))

    def replace_column(self, column: Column) -> "Frame":
        """Swap in a column of the same name, keeping its position."""
        if not self.has_column(column.name):
            raise ColumnNotFoundError(column.name, self.column_names)
        return Frame(tuple(column if c.name == column.name else c for c in self.columns))

    def take_rows(self, indices: Sequence[int]) -> "Frame":
        return Frame(
            tuple(
                Column(c.name, c.dtype, tuple(c.values[i] for i in indices))
                for c in self.columns
            )
        )

    def row(self, i: int) -> tuple[Value, ...]:
        return tuple(c.values[i] for c in self.columns)


def dtypes(frame: Frame) -> list[tuple[str, ColumnType]]:
    """(name, dtype) per column, in column order."""
    return [(c.name, c.dtype) for c in frame.columns]


# ---------------------------------------------------------------------------
# CSV


def _open_text(source: bytes | str | Path | BinaryIO) -> io.TextIOBase:
    if isinstance(source, bytes):
        return io.StringIO(source.decode("utf-8-sig"))
    if isinstance(source, (str, Path)):
        return open(source, "r", encoding="utf-8-sig", newline="")
    return io.TextIOWrapper(source, encoding="utf-8-sig", newline="")

_PARSERS = {
    ColumnType.TEXT: lambda s: s,
    ColumnType.INT: _parse_int,
    ColumnType.FLOAT: _parse_float,
    ColumnType.BOOL: _parse_bool,
}


def _parse_cell(text: str, dtype: ColumnType) -> Value:
    if dtype is ColumnType.TIMESTAMP:
        return parse_timestamp(text)
    parsed = _PARSERS[dtype](text)
    if parsed is None:
        _fail_cell(text, dtype)
    return parsed


def _fail_cell(text: str, dtype: ColumnType):
    raise TriplabError(f"cannot parse {text!r} as {dtype.value}")


def _infer_dtype(cells: Sequence[str]) -> ColumnType:
    present = [c for c in cells if c != ""]
    if not present:
        return ColumnType.TEXT
    if all(_parse_int(c) is not None for c in present):
        return ColumnType.INT
    if all(_parse_float(c) is not None for c in present):
        return ColumnType.FLOAT
    if all(_is_strict_iso_timestamp(c) for c in present):
        return ColumnType.TIMESTAMP
    return ColumnType.TEXT


def read_csv(
    source: bytes | str | Path | BinaryIO,
    schema: dict[str, ColumnType] | None = None,
) -> Frame:
    """Read RFC-4180-style CSV with a mandatory header row.

    ``source`` may be raw bytes, a binary file object, or a filesystem path.
    Without a schema, each column's type is inferred over all its non-empty
    fields: Int, else Float, else Timestamp (strict T form), else Text.
    Empty fields become Missing regardless of type.
    """
    stream = _open_text(source)
    try:
        reader = csv.reader(stream)
        try:
            header = next(reader)
        except StopIteration:
            raise TriplabError("empty CSV input: missing header row") from None
        rows: list[list[str]] = []
        for row in reader:
            if len(row) != len(header):
                raise TriplabError(
                    f"line {reader.line_num}: expected {len(header)} fields, "
                    f"got {len(row)}"
                )
            rows.append(row)
    finally:
        stream.close()

    if schema is not None:
        if set(schema) != set(header):
            missing = sorted(set(schema) - set(header))
            extra = sorted(set(header) - set(schema))
            parts = []
            if missing:
                parts.append(f"schema columns absent from header: {', '.join(missing)}")
            if extra:
                parts.append(f"header columns absent from schema: {', '.join(extra)}")
            raise TriplabError("; ".join(parts))
        types = [schema[name] for name in header]
    else:
        types = [_infer_dtype([row[j] for row in rows]) for j in range(len(header))]

    columns = []
    for j, (name, dtype) in enumerate(zip(header, types)):
        values: list[Value] = []
        for i, row in enumerate(rows):
            cell = row[j]
            if cell == "":
                values.append(None)
                continue
            try:
                values.append(_parse_cell(cell, dtype))
            except TriplabError as exc:
                raise TriplabError(f"row {i}, column {name!r}: {exc}") from None
        columns.append(Column(name, dtype, tuple(values)))
    return Frame(tuple(columns))


def format_value(value: Value) -> str:
    """Canonical text form; Missing is the empty string, Floats round-trip."""
    if value is None:
        return ""
    if type(value) is bool:
        return "true" if value else "false"
    if type(value) is float:
        return repr(value)
    if isinstance(value, datetime):
        return value.isoformat(sep="T")
    return str(value)


def write_csv(frame: Frame) -> bytes:
    """Serialize with RFC-4180 quoting, LF line endings, UTF-8."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([c.name for c in frame.columns])
    for i in range(frame.row_count):
        writer.writerow([format_value(c.values[i]) for c in frame.columns])
    return buf.getvalue().encode("utf-8")


# ---------------------------------------------------------------------------
# Conversion


def _float_to_int(v: float) -> int:
    if v != math.floor(v):
        raise TriplabError(f"cannot convert non-integral float {v!r} to int")
    return int(v)


_CONVERTERS = {
    (ColumnType.TEXT, ColumnType.TIMESTAMP): parse_timestamp,
    (ColumnType.TEXT, ColumnType.INT): lambda s: _parse_cell(s, ColumnType.INT),
    (ColumnType.TEXT, ColumnType.FLOAT): lambda s: _parse_cell(s, ColumnType.FLOAT),
    (ColumnType.TEXT, ColumnType.BOOL): lambda s: _parse_cell(s, ColumnType.BOOL),
    (ColumnType.INT, ColumnType.FLOAT): float,
    (ColumnType.INT, ColumnType.TEXT): str,
    (ColumnType.FLOAT, ColumnType.TEXT): repr,
    (ColumnType.FLOAT, ColumnType.INT): _float_to_int,
    (ColumnType.TIMESTAMP, ColumnType.TEXT): lambda v: v.isoformat(sep="T"),
    (ColumnType.BOOL, ColumnType.TEXT): lambda v: "true" if v else "false",
}


def convert_column(frame: Frame, name: str, target: ColumnType) -> Frame:
    """Retype one column; Missing stays Missing, other columns untouched.

    Converting a column to its own dtype is the identity. Unparseable values
    raise with the row index and offending text.
    """
    col = frame.column(name)
    if col.dtype is target:
        return frame
    converter = _CONVERTERS.get((col.dtype, target))
    if converter is None:
        raise TriplabError(
            f"cannot convert column {name!r} from {col.dtype.value} to {target.value}"
        )
    out: list[Value] = []
    for i, v in enumerate(col.values):
        if v is None:
            out.append(None)
            continue
        try:
            out.append(converter(v))
        except TriplabError as exc:
            raise TriplabError(f"column {name!r}, row {i}: {exc}") from None
    return frame.replace_column(Column(name, target, tuple(out)))

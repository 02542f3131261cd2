"""Tabular dataset container with CSV ingestion and column-kind inference.

A dataset is an immutable bundle of named columns.  Each column is either
Numeric (stored as float64, NaN marking missing cells) or Categorical
(stored as an object array of strings, None marking missing cells).  A cell
value surfaced to callers is therefore a float, a string, or None.

Kind inference is value-driven: a column is Numeric exactly when every
non-missing cell parses as a finite real number; anything else (including
"inf"/"-inf" tokens and locale-style decimals such as "1,5") makes the
column Categorical.  Cells are whitespace-trimmed on load, and missing
tokens are matched case-insensitively against the trimmed cell.
"""

from __future__ import annotations

import csv
import enum
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

DEFAULT_MISSING_TOKENS = ("", "na", "n/a", "null", "nan")


class DatasetError(ValueError):
    """Raised for malformed input files or invalid dataset operations."""


class ValueKind(enum.Enum):
    NUMERIC = "numeric"
    CATEGORICAL = "categorical"


@dataclass(frozen=True)
class CsvOptions:
    """Parsing options shared by :func:`load_csv` and :func:`write_csv`.

    ``missing_tokens`` are compared against trimmed, lower-cased cells, so
    the defaults also catch "NA", "NaN", "NULL" and friends.
    """

    delimiter: str = ","
    missing_tokens: tuple[str, ...] = DEFAULT_MISSING_TOKENS

    def __post_init__(self) -> None:
        if len(self.delimiter) != 1:
            raise DatasetError("delimiter must be a single character")
        lowered = tuple(t.strip().lower() for t in self.missing_tokens)
        object.__setattr__(self, "missing_tokens", lowered)


def _normalized_tokens(options: CsvOptions | None) -> tuple[str, ...]:
    if options is None:
        return DEFAULT_MISSING_TOKENS
    return options.missing_tokens


@dataclass(frozen=True)
class Column:
    """One named column of a dataset.

    ``values`` is a float64 array for Numeric columns (NaN = missing) and an
    object array of strings for Categorical columns (None = missing).
    """

    name: str
    kind: ValueKind
    values: np.ndarray
    warnings: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if self.kind is ValueKind.NUMERIC and self.values.dtype != np.float64:
            raise DatasetError(f"numeric column {self.name!r} must be float64")
        if self.kind is ValueKind.CATEGORICAL and self.values.dtype != object:
            raise DatasetError(f"categorical column {self.name!r} must be an object array")

    @classmethod
    def numeric(cls, name: str, values: Iterable[float | None]) -> "Column":
        arr = np.array([np.nan if v is None else float(v) for v in values], dtype=np.float64)
        return cls(name, ValueKind.NUMERIC, arr)

    @classmethod
    def categorical(cls, name: str, labels: Iterable[str | None]) -> "Column":
        arr = np.array([None if v is None else str(v) for v in labels], dtype=object)
        return cls(name, ValueKind.CATEGORICAL, arr)

    def __len__(self) -> int:
        return len(self.values)

    def missing_mask(self) -> np.ndarray:
        if self.kind is ValueKind.NUMERIC:
            return np.isnan(self.values)
        return np.array([v is None for v in self.values], dtype=bool)

    @property
    def missing_count(self) -> int:
        return int(self.missing_mask().sum())

    def non_missing(self) -> np.ndarray:
        """Values with missing cells removed (order preserved)."""
        return self.values[~self.missing_mask()]

    def cell(self, row: int) -> float | str | None:
        v = self.values[row]
        if self.kind is ValueKind.NUMERIC:
            v = float(v)
            return None if np.isnan(v) else v
        return v


@dataclass(frozen=True)
class Dataset:
    """An immutable named collection of equal-length columns.

    Equality compares column names, kinds, and cells (NaN cells compare
    equal to NaN); the dataset display name is ignored so that a
    write/reload round trip through a differently named file still
    compares equal.
    """

    name: str
    columns: tuple[Column, ...]
    _index: dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if not self.columns:
            raise DatasetError("a dataset needs at least one column")
        lengths = {len(c) for c in self.columns}
        if len(lengths) != 1:
            raise DatasetError("columns differ in length")
        if self.row_count == 0:
            raise DatasetError("a dataset needs at least one data row")
        index: dict[str, int] = {}
        for i, col in enumerate(self.columns):
            if col.name in index:
                raise DatasetError(f"duplicate column name {col.name!r}")
            index[col.name] = i
        object.__setattr__(self, "_index", index)

    @property
    def row_count(self) -> int:
        return len(self.columns[0])

    @property
    def column_names(self) -> tuple[str, ...]:
        return tuple(c.name for c in self.columns)

    def column(self, name: str) -> Column:
        try:
            return self.columns[self._index[name]]
        except KeyError:
            raise DatasetError(f"no column named {name!r}") from None

    def has_column(self, name: str) -> bool:
        return name in self._index

    def numeric_columns(self) -> tuple[Column, ...]:
        return tuple(c for c in self.columns if c.kind is ValueKind.NUMERIC)

    def categorical_columns(self) -> tuple[Column, ...]:
        return tuple(c for c in self.columns if c.kind is ValueKind.CATEGORICAL)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Dataset):
            return NotImplemented
        if self.column_names != other.column_names:
            return False
        for a, b in zip(self.columns, other.columns):
            if a.kind is not b.kind:
                return False
            if a.kind is ValueKind.NUMERIC:
                if not np.array_equal(a.values, b.values, equal_nan=True):
                    return False
            elif not all(x == y for x, y in zip(a.values, b.values)):
                return False
        return True

    __hash__ = None  # type: ignore[assignment]


def infer_kind(raw_cells: Sequence[str], options: CsvOptions | None = None) -> ValueKind:
    """Decide the kind of a column from its raw text cells.

    Numeric iff every non-missing cell parses as a finite real; a column
    whose cells are all missing is Categorical (callers attach a warning).
    """
    trimmed = np.char.strip(np.asarray(list(raw_cells), dtype=np.str_))
    missing = np.isin(np.char.lower(trimmed), _normalized_tokens(options))
    values, _, ok = _parse_numeric(trimmed, missing)
    del values
    if missing.all():
        return ValueKind.CATEGORICAL
    return ValueKind.NUMERIC if ok else ValueKind.CATEGORICAL


def _parse_numeric(trimmed: np.ndarray, missing: np.ndarray) -> tuple[np.ndarray, np.ndarray, bool]:
    """Try to parse the trimmed cells as float64; returns (values, missing, ok)."""
    # np.where promotes the string width so "nan" never truncates when the
    # column's widest cell is shorter than three characters
    attempt = np.where(missing, "nan", trimmed)
    try:
        values = attempt.astype(np.float64)
    except ValueError:
        return np.empty(0), missing, False
    # "inf"/"overflow" style cells parse but are not finite reals.
    if not np.isfinite(values[~missing]).all():
        return np.empty(0), missing, False
    return values, missing, True


def _build_column(name: str, raw_cells: list[str], options: CsvOptions) -> Column:
    trimmed = np.char.strip(np.asarray(raw_cells, dtype=np.str_))
    missing = np.isin(np.char.lower(trimmed), options.missing_tokens)
    warnings: tuple[str, ...] = ()
    if missing.all():
        warnings = (f"column {name!r}: all cells missing; treated as categorical",)
        values = np.full(len(raw_cells), None, dtype=object)
        return Column(name, ValueKind.CATEGORICAL, values, warnings)
    values, missing, ok = _parse_numeric(trimmed, missing)
    if ok:
        values = values.copy()
        values[missing] = np.nan
        return Column(name, ValueKind.NUMERIC, values)
    out = trimmed.astype(object)
    out[missing] = None
    return Column(name, ValueKind.CATEGORICAL, out)


def load_csv(path: str | Path, options: CsvOptions | None = None, name: str | None = None) -> Dataset:
    """Load a delimited text file into a :class:`Dataset`.

    The first record is the header.  Header names are trimmed and must be
    unique and non-empty.  Every data record must have exactly as many
    cells as the header; a ragged record raises :class:`DatasetError`
    naming the offending data row (1-based).
    """
    path = Path(path)
    opts = options or CsvOptions()
    try:
        fh = open(path, "r", newline="", encoding="utf-8")
    except OSError as exc:
        raise DatasetError(f"cannot open {path}: {exc}") from exc
    with fh:
        reader = csv.reader(fh, delimiter=opts.delimiter)
        try:
            header = next(reader)
        except StopIteration:
            raise DatasetError(f"{path}: file is empty") from None
        names = [h.strip() for h in header]
        if any(not n for n in names):
            raise DatasetError(f"{path}: blank column name in header")
        seen: set[str] = set()
        for n in names:
            if n in seen:
                raise DatasetError(f"{path}: duplicate column name {n!r}")
            seen.add(n)
        cells: list[list[str]] = [[] for _ in names]
        for i, record in enumerate(reader, start=1):
            if not record:
                continue  # blank line
            if len(record) != len(names):
                raise DatasetError(
                    f"{path}: row {i} has {len(record)} cells, expected {len(names)}"
                )
            for store, cell in zip(cells, record):
                store.append(cell)
    if not cells[0]:
        raise DatasetError(f"{path}: no data rows")
    columns = tuple(_build_column(n, c, opts) for n, c in zip(names, cells))
    return Dataset(name or path.stem, columns)


def write_csv(ds: Dataset, path: str | Path, options: CsvOptions | None = None) -> None:
    """Write ``ds`` so that reloading with the same options round-trips.

    Missing cells are written as the first missing token of the options
    (the empty string by default).
    """
    opts = options or CsvOptions()
    blank = opts.missing_tokens[0] if opts.missing_tokens else ""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, delimiter=opts.delimiter, lineterminator="\n")
        writer.writerow(ds.column_names)
        for i in range(ds.row_count):
            record = []
            for col in ds.columns:
                v = col.cell(i)
                if v is None:
                    record.append(blank)
                elif isinstance(v, float):
                    record.append(repr(int(v)) if v.is_integer() else repr(v))
                else:
                    record.append(v)
            writer.writerow(record)


def select_columns(ds: Dataset, names: Sequence[str]) -> Dataset:
    """Project ``ds`` onto ``names`` (order preserved, columns shared)."""
    if not names:
        raise DatasetError("selection must name at least one column")
    if len(set(names)) != len(names):
        raise DatasetError("selection names a column twice")
    return Dataset(ds.name, tuple(ds.column(n) for n in names))

"""Descriptive statistics for a dataset.

Numeric columns get mean, population standard deviation, min/max and the
quartiles; categorical columns get distinct-level counts and the most
frequent levels.  Quantiles use linear interpolation between order
statistics (h = q * (n - 1)), matching the conventions used by the rest of
the metric suite.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

import numpy as np

from .dataset import Dataset, DatasetError, ValueKind


def quantile(sorted_values, q: float) -> float:
    """Quantile by linear interpolation on an ascending sequence.

    h = q * (n - 1); the result interpolates between floor(h) and ceil(h).
    """
    if not 0.0 <= q <= 1.0:
        raise ValueError(f"q must lie in [0, 1], got {q}")
    n = len(sorted_values)
    if n == 0:
        raise ValueError("cannot take a quantile of an empty sequence")
    h = q * (n - 1)
    lo = math.floor(h)
    hi = math.ceil(h)
    if lo == hi:
        return float(sorted_values[lo])
    frac = h - lo
    return float(sorted_values[lo]) * (1.0 - frac) + float(sorted_values[hi]) * frac


@dataclass(frozen=True)
class ColumnSummary:
    name: str
    kind: ValueKind
    non_missing: int
    missing: int
    # numeric columns only
    mean: float | None = None
    std: float | None = None
    minimum: float | None = None
    q1: float | None = None
    median: float | None = None
    q3: float | None = None
    maximum: float | None = None
    # categorical columns only
    distinct: int | None = None
    top_values: tuple[tuple[str, int], ...] | None = None


@dataclass(frozen=True)
class DatasetSummary:
    dataset: str
    rows: int
    columns: int
    numeric_count: int
    categorical_count: int
    per_column: tuple[ColumnSummary, ...]


def _numeric_summary(col) -> ColumnSummary:
    vals = col.non_missing()
    base = dict(name=col.name, kind=col.kind, non_missing=len(vals), missing=col.missing_count)
    if len(vals) == 0:
        return ColumnSummary(**base)
    s = np.sort(vals)
    return ColumnSummary(
        **base,
        mean=float(vals.mean()),
        std=float(vals.std()),  # population std (ddof=0)
        minimum=float(s[0]),
        q1=quantile(s, 0.25),
        median=quantile(s, 0.5),
        q3=quantile(s, 0.75),
        maximum=float(s[-1]),
    )


def _categorical_summary(col) -> ColumnSummary:
    labels = [v for v in col.values if v is not None]
    counts = Counter(labels)
    # deterministic ordering: by descending count, then by label
    top = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))[:10]
    return ColumnSummary(
        name=col.name,
        kind=col.kind,
        non_missing=len(labels),
        missing=col.missing_count,
        distinct=len(counts),
        top_values=tuple(top),
    )


def summarize(ds: Dataset) -> DatasetSummary:
    """Summarize every column of ``ds``."""
    if ds.row_count == 0:
        raise DatasetError("cannot summarize an empty dataset")
    per_column = []
    for col in ds.columns:
        if col.kind is ValueKind.NUMERIC:
            per_column.append(_numeric_summary(col))
        else:
            per_column.append(_categorical_summary(col))
    return DatasetSummary(
        dataset=ds.name,
        rows=ds.row_count,
        columns=len(ds.columns),
        numeric_count=len(ds.numeric_columns()),
        categorical_count=len(ds.categorical_columns()),
        per_column=tuple(per_column),
    )

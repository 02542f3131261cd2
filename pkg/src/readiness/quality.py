"""Data quality scores: completeness, IQR outliers, duplicate rows.

All three scores live in [0, 1].  Completeness counts non-missing cells per
column; the outlier score is the fraction of non-missing values falling
strictly outside the Tukey fences [Q1 - k*IQR, Q3 + k*IQR]; the duplicate
score is 1 - unique_rows / total_rows, treating missing cells as equal to
each other.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .dataset import Dataset, DatasetError, ValueKind
from .summary import quantile


@dataclass(frozen=True)
class CompletenessResult:
    per_column: dict[str, float]
    overall: float


@dataclass(frozen=True)
class OutlierResult:
    per_column: dict[str, float]
    overall: float | None
    k: float
    fences: dict[str, tuple[float, float]] = field(default_factory=dict)
    warnings: tuple[str, ...] = ()


@dataclass(frozen=True)
class DuplicateResult:
    score: float
    duplicate_row_count: int
    unique_row_count: int


def completeness(ds: Dataset) -> CompletenessResult:
    """Fraction of non-missing cells, per column and averaged."""
    per_column = {}
    n = ds.row_count
    for col in ds.columns:
        per_column[col.name] = 1.0 - col.missing_count / n
    overall = float(np.mean(list(per_column.values())))
    return CompletenessResult(per_column=per_column, overall=overall)


def outliers(ds: Dataset, k: float = 1.5) -> OutlierResult:
    """Tukey-fence outlier fraction for every eligible numeric column.

    A value is an outlier when it falls strictly outside
    [Q1 - k*IQR, Q3 + k*IQR].  Columns with fewer than 4 non-missing values
    are skipped with a warning; the overall score averages the per-column
    fractions without weighting.
    """
    if k <= 0:
        raise DatasetError(f"fence multiplier k must be positive, got {k}")
    numeric = ds.numeric_columns()
    if not numeric:
        raise DatasetError("outlier detection needs at least one numeric column")
    per_column: dict[str, float] = {}
    fences: dict[str, tuple[float, float]] = {}
    warnings: list[str] = []
    for col in numeric:
        vals = col.non_missing()
        if len(vals) < 4:
            warnings.append(
                f"column {col.name!r}: only {len(vals)} non-missing values; outlier check skipped"
            )
            continue
        s = np.sort(vals)
        q1 = quantile(s, 0.25)
        q3 = quantile(s, 0.75)
        iqr = q3 - q1
        lo = q1 - k * iqr
        hi = q3 + k * iqr
        frac = float(np.mean((vals < lo) | (vals > hi)))
        per_column[col.name] = frac
        fences[col.name] = (lo, hi)
    overall = float(np.mean(list(per_column.values()))) if per_column else None
    if overall is None:
        warnings.append("no numeric column had enough values for an overall outlier score")
    return OutlierResult(
        per_column=per_column, overall=overall, k=k, fences=fences, warnings=tuple(warnings)
    )


def _row_codes(ds: Dataset, names: Sequence[str]) -> np.ndarray:
    """Encode the selected columns as a float matrix where equal cells get
    equal codes (missing included), suitable for lexicographic row grouping."""
    cols = []
    for name in names:
        col = ds.column(name)
        if col.kind is ValueKind.NUMERIC:
            vals = col.values.copy()
            vals[np.isnan(vals)] = np.inf  # one shared code for missing
            cols.append(vals)
        else:
            mask = col.missing_mask()
            codes = np.full(len(col), -1.0)
            present = col.values[~mask]
            if len(present):
                uniq, inv = np.unique(present.astype(str), return_inverse=True)
                codes[~mask] = inv.astype(np.float64)
            cols.append(codes)
    return np.column_stack(cols)


def duplicates(ds: Dataset, subset: Sequence[str] | None = None) -> DuplicateResult:
    """Duplicate-row score: 1 - unique_rows / total_rows.

    Two rows are duplicates when every considered cell matches; missing
    matches missing.  ``subset`` restricts the comparison to named columns.
    """
    if subset is not None:
        names = list(subset)
        if not names:
            raise DatasetError("duplicate subset must name at least one column")
    else:
        names = list(ds.column_names)
    matrix = _row_codes(ds, names)
    order = np.lexsort(matrix.T[::-1])
    ordered = matrix[order]
    if len(ordered) == 1:
        unique = 1
    else:
        changed = np.any(ordered[1:] != ordered[:-1], axis=1)
        unique = 1 + int(changed.sum())
    total = ds.row_count
    return DuplicateResult(
        score=1.0 - unique / total,
        duplicate_row_count=total - unique,
        unique_row_count=unique,
    )

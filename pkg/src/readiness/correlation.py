"""Feature association measures.

Numeric-numeric association uses the Pearson product-moment coefficient
with pairwise deletion (each pair of columns keeps the rows where both are
present).  Categorical-categorical association uses the uncertainty
coefficient U(X|Y) = (H(X) - H(X|Y)) / H(X) with natural-log entropies,
an asymmetric measure in [0, 1].
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Hashable, Sequence

import numpy as np

from .dataset import Dataset, DatasetError, ValueKind


@dataclass(frozen=True)
class CorrelationMatrix:
    """A labelled square matrix; NaN entries mean the value is undefined."""

    kind: str
    labels: tuple[str, ...]
    values: np.ndarray
    warnings: tuple[str, ...] = ()

    def value(self, a: str, b: str) -> float:
        i = self.labels.index(a)
        j = self.labels.index(b)
        return float(self.values[i, j])


def pearson_matrix(ds: Dataset, min_rows: int = 2) -> CorrelationMatrix:
    """Pearson correlation between every pair of numeric columns.

    Rows are dropped per pair (pairwise deletion).  A pair with fewer than
    ``min_rows`` surviving rows, or with zero variance on either side, gets
    a NaN entry and a warning.  The matrix is exactly symmetric and has
    ones on the diagonal wherever the column has positive variance.
    """
    numeric = ds.numeric_columns()
    if len(numeric) < 2:
        raise DatasetError("pearson correlation needs at least two numeric columns")
    labels = tuple(c.name for c in numeric)
    x = np.column_stack([c.values for c in numeric])
    mask = ~np.isnan(x)
    xz = np.where(mask, x, 0.0)
    m = mask.astype(np.float64)
    # pairwise-deletion sufficient statistics via matrix products
    n_pair = m.T @ m                      # rows where both present
    s_pair = xz.T @ m                     # s_pair[i, j] = sum of x_i over those rows
    q_pair = (xz * xz).T @ m              # sum of x_i^2 over those rows
    p_pair = xz.T @ xz                    # sum of x_i * x_j
    c = len(numeric)
    out = np.full((c, c), np.nan)
    warnings: list[str] = []
    for i in range(c):
        n = n_pair[i, i]
        var = q_pair[i, i] - s_pair[i, i] ** 2 / n if n > 0 else 0.0
        if n >= min_rows and var > 0:
            out[i, i] = 1.0
        else:
            warnings.append(f"pearson undefined for ({labels[i]}, {labels[i]}): zero variance")
    for i in range(c):
        for j in range(i + 1, c):
            n = n_pair[i, j]
            if n < min_rows:
                warnings.append(
                    f"pearson undefined for ({labels[i]}, {labels[j]}): "
                    f"{int(n)} shared rows, need {min_rows}"
                )
                continue
            cov = p_pair[i, j] - s_pair[i, j] * s_pair[j, i] / n
            var_i = q_pair[i, j] - s_pair[i, j] ** 2 / n
            var_j = q_pair[j, i] - s_pair[j, i] ** 2 / n
            if var_i <= 0 or var_j <= 0:
                warnings.append(
                    f"pearson undefined for ({labels[i]}, {labels[j]}): zero variance"
                )
                continue
            r = cov / math.sqrt(var_i * var_j)
            r = min(1.0, max(-1.0, r))
            out[i, j] = r
            out[j, i] = r
    return CorrelationMatrix("pearson", labels, out, tuple(warnings))


def _entropy_from_counts(counts: np.ndarray, n: int) -> float:
    """Shannon entropy (nats) from a vector of positive counts summing to n."""
    return float(math.log(n) - (counts * np.log(counts)).sum() / n)


def theils_u(x: Sequence[Hashable], y: Sequence[Hashable]) -> float:
    """Uncertainty coefficient U(X|Y): how much knowing y reduces the
    uncertainty of x.

    Pairs where either side is None are dropped.  Returns a value in
    [0, 1]; if x is constant (H(X) = 0) the convention is 1.0.
    """
    if len(x) != len(y):
        raise DatasetError("theils_u needs sequences of equal length")
    pairs = [(a, b) for a, b in zip(x, y) if a is not None and b is not None]
    if not pairs:
        raise DatasetError("theils_u: no rows where both values are present")
    n = len(pairs)
    x_counts = Counter(a for a, _ in pairs)
    if len(x_counts) == 1:
        return 1.0
    h_x = _entropy_from_counts(np.array(list(x_counts.values()), dtype=np.float64), n)
    y_counts = Counter(b for _, b in pairs)
    joint = Counter(pairs)
    # H(X|Y) = sum over cells of p(x, y) * ln(c_y / c_xy)
    h_x_given_y = 0.0
    for (a, b), c_xy in joint.items():
        h_x_given_y += (c_xy / n) * math.log(y_counts[b] / c_xy)
    u = (h_x - h_x_given_y) / h_x
    return min(1.0, max(0.0, u))


def _paired_codes(cx: "np.ndarray", cy: "np.ndarray") -> tuple[np.ndarray, np.ndarray, int]:
    """Factorize two object columns over their shared-present rows."""
    present = np.array([a is not None and b is not None for a, b in zip(cx, cy)], dtype=bool)
    if not present.any():
        raise DatasetError("theils_u: no rows where both values are present")
    a = cx[present].astype(str)
    b = cy[present].astype(str)
    _, ia = np.unique(a, return_inverse=True)
    ub, ib = np.unique(b, return_inverse=True)
    return ia, ib, len(ub)


def _theils_u_codes(ia: np.ndarray, ib: np.ndarray, ny: int) -> float:
    """U(A|B) from integer-coded label vectors (no missing values)."""
    n = len(ia)
    x_counts = np.bincount(ia).astype(np.float64)
    x_counts = x_counts[x_counts > 0]
    if len(x_counts) == 1:
        return 1.0
    h_x = _entropy_from_counts(x_counts, n)
    joint = np.bincount(ia * ny + ib).astype(np.float64)
    y_counts = np.bincount(ib, minlength=ny).astype(np.float64)
    nz = joint > 0
    cell = joint[nz]
    ycol = y_counts[(np.nonzero(nz)[0]) % ny]
    h_x_given_y = float(((cell / n) * np.log(ycol / cell)).sum())
    u = (h_x - h_x_given_y) / h_x
    return min(1.0, max(0.0, u))


def theils_u_matrix(ds: Dataset) -> CorrelationMatrix:
    """Uncertainty coefficient for every ordered pair of categorical columns.

    Entry (i, j) is U(col_i | col_j); the matrix is generally asymmetric.
    Rows are deleted pairwise.  Pairs with no shared rows get NaN entries
    and a warning.
    """
    cats = ds.categorical_columns()
    if len(cats) < 2:
        raise DatasetError("uncertainty matrix needs at least two categorical columns")
    labels = tuple(c.name for c in cats)
    c = len(cats)
    out = np.full((c, c), np.nan)
    warnings: list[str] = []
    for i in range(c):
        for j in range(c):
            try:
                ia, ib, ny = _paired_codes(cats[i].values, cats[j].values)
            except DatasetError:
                warnings.append(
                    f"uncertainty undefined for ({labels[i]}, {labels[j]}): no shared rows"
                )
                continue
            out[i, j] = _theils_u_codes(ia, ib, ny)
    return CorrelationMatrix("theils_u", labels, out, tuple(warnings))

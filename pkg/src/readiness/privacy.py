"""Re-identification risk from quasi-identifier value chains.

The model treats an ordered tuple of quasi-identifying attributes as a
first-order chain: an initial distribution over the first attribute's
values and, for each adjacent attribute pair, a conditional distribution of
the next value given the current one.  A record's re-identification risk is
1 minus the probability the chain assigns to its value sequence, so records
with common attribute combinations score low and rare combinations score
close to 1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dataset import Dataset, DatasetError, ValueKind


@dataclass(frozen=True)
class MarkovRiskModel:
    attributes: tuple[str, ...]
    initial: dict[str, float]
    transitions: tuple[dict[str, dict[str, float]], ...]
    fitted_rows: int


@dataclass(frozen=True)
class RiskResult:
    attributes: tuple[str, ...]
    per_record: np.ndarray
    mean_risk: float
    scored_rows: int
    dropped_rows: int
    warnings: tuple[str, ...] = ()


def _attribute_matrix(ds: Dataset, attributes: tuple[str, ...]) -> tuple[list[np.ndarray], np.ndarray]:
    """Collect the attribute columns and the rows where all are present."""
    cols = []
    keep = np.ones(ds.row_count, dtype=bool)
    for name in attributes:
        col = ds.column(name)
        if col.kind is not ValueKind.CATEGORICAL:
            raise DatasetError(
                f"quasi-identifier {name!r} is numeric; bin it into labels first"
            )
        keep &= ~col.missing_mask()
        cols.append(col.values)
    return cols, keep


def fit_markov(ds: Dataset, attributes: list[str] | tuple[str, ...]) -> MarkovRiskModel:
    """Fit the chain over ``attributes`` (order matters).

    Rows with a missing value in any of the attributes are excluded from
    the counts.
    """
    attrs = tuple(attributes)
    if not attrs:
        raise DatasetError("at least one quasi-identifier is required")
    if len(set(attrs)) != len(attrs):
        raise DatasetError("quasi-identifier list names a column twice")
    cols, keep = _attribute_matrix(ds, attrs)
    n = int(keep.sum())
    if n == 0:
        raise DatasetError("no rows with all quasi-identifiers present")
    first = cols[0][keep].astype(str)
    uniq, counts = np.unique(first, return_counts=True)
    initial = {str(v): int(c) / n for v, c in zip(uniq, counts)}
    transitions = []
    for a, b in zip(cols, cols[1:]):
        av = a[keep].astype(str)
        bv = b[keep].astype(str)
        table: dict[str, dict[str, float]] = {}
        ua, ia = np.unique(av, return_inverse=True)
        ub, ib = np.unique(bv, return_inverse=True)
        joint = np.bincount(ia * len(ub) + ib, minlength=len(ua) * len(ub))
        row_totals = np.bincount(ia, minlength=len(ua))
        for i, src in enumerate(ua):
            row = {}
            for j, dst in enumerate(ub):
                c = joint[i * len(ub) + j]
                if c:
                    row[str(dst)] = int(c) / int(row_totals[i])
            table[str(src)] = row
        transitions.append(table)
    return MarkovRiskModel(attrs, initial, tuple(transitions), n)


def risk_scores(model: MarkovRiskModel, ds: Dataset) -> RiskResult:
    """Score every record of ``ds`` under ``model``.

    Rows with a missing quasi-identifier are dropped (counted in the
    result); values never seen while fitting get probability 0 and hence
    risk 1, with a warning.
    """
    cols, keep = _attribute_matrix(ds, model.attributes)
    scored = int(keep.sum())
    dropped = ds.row_count - scored
    if scored == 0:
        raise DatasetError("no scorable rows: every row is missing a quasi-identifier")
    prob = np.ones(scored, dtype=np.float64)
    unseen = np.zeros(scored, dtype=bool)

    first = cols[0][keep].astype(str)
    lookup = model.initial
    prob *= np.array([lookup.get(v, 0.0) for v in first])
    unseen |= np.array([v not in lookup for v in first])

    for step, table in enumerate(model.transitions):
        src = cols[step][keep].astype(str)
        dst = cols[step + 1][keep].astype(str)
        p = np.empty(scored, dtype=np.float64)
        miss = np.zeros(scored, dtype=bool)
        for i, (a, b) in enumerate(zip(src, dst)):
            row = table.get(a)
            if row is None or b not in row:
                p[i] = 0.0
                miss[i] = True
            else:
                p[i] = row[b]
        prob *= p
        unseen |= miss

    warnings = []
    if dropped:
        warnings.append(f"{dropped} rows dropped: missing quasi-identifier values")
    if unseen.any():
        warnings.append(
            f"{int(unseen.sum())} rows contain attribute values unseen at fit time; "
            "their risk is 1"
        )
    per_record = 1.0 - prob
    return RiskResult(
        attributes=model.attributes,
        per_record=per_record,
        mean_risk=float(per_record.mean()),
        scored_rows=scored,
        dropped_rows=dropped,
        warnings=tuple(warnings),
    )

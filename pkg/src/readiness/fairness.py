"""Group fairness and class balance measures.

All measures work on categorical columns; numeric attributes should be
binned into labelled groups before calling these.  Proportions always come
from non-missing rows, with pairwise deletion when two columns are
involved.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np

from .dataset import Column, Dataset, DatasetError, ValueKind


def _require_categorical(ds: Dataset, name: str) -> Column:
    col = ds.column(name)
    if col.kind is not ValueKind.CATEGORICAL:
        raise DatasetError(
            f"column {name!r} is numeric; bin it into labelled groups before "
            "computing group fairness measures"
        )
    return col


def _proportions(col: Column) -> dict[str, float]:
    labels = [v for v in col.values if v is not None]
    if not labels:
        raise DatasetError(f"column {col.name!r} has no non-missing values")
    n = len(labels)
    counts = Counter(labels)
    return {k: counts[k] / n for k in sorted(counts)}


@dataclass(frozen=True)
class GroupDistribution:
    attribute: str
    proportions: dict[str, float]
    representation_rate: float
    warnings: tuple[str, ...] = ()


def representation(ds: Dataset, sensitive: str) -> GroupDistribution:
    """Group proportions of a sensitive attribute and their min/max ratio.

    A representation rate of 1 means perfectly even groups; values near 0
    flag a severely under-represented group.
    """
    col = _require_categorical(ds, sensitive)
    props = _proportions(col)
    warnings: tuple[str, ...] = ()
    if len(props) == 1:
        warnings = (f"column {sensitive!r} has a single group; representation rate is trivially 1",)
        rate = 1.0
    else:
        values = list(props.values())
        rate = min(values) / max(values)
    return GroupDistribution(sensitive, props, rate, warnings)


@dataclass(frozen=True)
class StatisticalRateResult:
    sensitive: str
    target: str
    conditional: dict[str, dict[str, float]]  # target label -> group -> P(y | group)
    per_target_rate: dict[str, float]
    overall: float
    warnings: tuple[str, ...] = ()


def statistical_rate(ds: Dataset, sensitive: str, target: str) -> StatisticalRateResult:
    """Statistical parity across groups, per target label.

    For each target label y the rate is min_g P(y|g) / max_g P(y|g); the
    overall score is the minimum over labels.  1 means parity.
    """
    if sensitive == target:
        raise DatasetError("sensitive attribute and target must be different columns")
    s_col = _require_categorical(ds, sensitive)
    t_col = _require_categorical(ds, target)
    pairs = [
        (g, y)
        for g, y in zip(s_col.values, t_col.values)
        if g is not None and y is not None
    ]
    if not pairs:
        raise DatasetError("statistical rate: no rows with both attribute and target present")
    group_totals = Counter(g for g, _ in pairs)
    joint = Counter(pairs)
    groups = sorted(group_totals)
    targets = sorted({y for _, y in pairs})
    conditional: dict[str, dict[str, float]] = {}
    per_target: dict[str, float] = {}
    for y in targets:
        cond = {g: joint.get((g, y), 0) / group_totals[g] for g in groups}
        conditional[y] = cond
        per_target[y] = min(cond.values()) / max(cond.values())
    warnings: tuple[str, ...] = ()
    if len(groups) == 1:
        warnings = (f"column {sensitive!r} has a single group; rates are trivially 1",)
    return StatisticalRateResult(
        sensitive=sensitive,
        target=target,
        conditional=conditional,
        per_target_rate=per_target,
        overall=min(per_target.values()),
        warnings=warnings,
    )


@dataclass(frozen=True)
class TsdResult:
    sensitive: str
    target: str
    per_target: dict[str, float]
    mu: dict[str, float]
    warnings: tuple[str, ...] = ()


def tsd(ds: Dataset, sensitive: str, target: str) -> TsdResult:
    """Standard deviation of P(y | group) across groups, per target label.

    tsd_y = sqrt((1/N) * sum_g (P(y|g) - mu_y)^2) with N the number of
    groups.  Zero means every group receives the label at the same rate.
    """
    rates = statistical_rate(ds, sensitive, target)
    per_target: dict[str, float] = {}
    mu: dict[str, float] = {}
    warnings = list(rates.warnings)
    for y, cond in rates.conditional.items():
        probs = np.array(list(cond.values()), dtype=np.float64)
        mu[y] = float(probs.mean())
        if len(probs) == 1 or np.ptp(probs) == 0.0:
            # identical conditionals (or a single group): exactly zero,
            # sidestepping rounding in the mean
            per_target[y] = 0.0
        else:
            per_target[y] = float(np.sqrt(np.mean((probs - probs.mean()) ** 2)))
    if len(next(iter(rates.conditional.values()))) == 1:
        warnings.append("single group: spread is trivially 0")
    return TsdResult(
        sensitive=sensitive,
        target=target,
        per_target=per_target,
        mu=mu,
        warnings=tuple(dict.fromkeys(warnings)),
    )


@dataclass(frozen=True)
class ImbalanceResult:
    class_column: str
    proportions: dict[str, float]
    minority_count: int
    id_score: float
    distance: str = "euclidean"


def _euclidean(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.sqrt(((a - b) ** 2).sum()))


def imbalance_degree(ds: Dataset, class_column: str) -> ImbalanceResult:
    """Imbalance degree of a label distribution.

    With K observed classes and empirical distribution zeta, let e be the
    uniform distribution, m the number of classes below 1/K, and iota_m the
    most skewed distribution that still has exactly m minority classes
    (m zeros, K - m - 1 classes at 1/K, one class holding the remainder).
    The score is d(zeta, e) / d(iota_m, e) + (m - 1) using Euclidean
    distance, so its integer part counts the minority classes.
    """
    col = _require_categorical(ds, class_column)
    props = _proportions(col)
    k = len(props)
    if k < 2:
        raise DatasetError(f"imbalance degree needs at least 2 classes, column {class_column!r} has {k}")
    zeta = np.array(list(props.values()), dtype=np.float64)
    e = np.full(k, 1.0 / k)
    m = int((zeta < 1.0 / k).sum())
    if m == 0:
        # perfectly balanced: distance is zero by definition
        return ImbalanceResult(class_column, props, 0, 0.0)
    iota = np.concatenate([np.zeros(m), np.full(k - m - 1, 1.0 / k), [(m + 1) / k]])
    score = _euclidean(zeta, e) / _euclidean(iota, e) + (m - 1)
    return ImbalanceResult(class_column, props, m, score)

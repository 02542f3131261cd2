"""Feature relevance scores from Shapley attribution of a trained model.

The pipeline is: clean the selected columns (drop rows with missing cells,
exact duplicates, then IQR outliers), one-hot encode categorical features,
label-encode the target, train the in-house forest, and attribute its
predictions to the original features with Shapley values.  Indicator
columns born from the same categorical feature move as one unit during
attribution, so scores are reported per original feature.

Two estimators are provided: a permutation-sampling Monte Carlo estimator
(`shapley_mc`) that tracks its own standard errors, and an exact
enumeration over all 2^d coalitions (`shapley_exact`) for small d.  Both
are model-agnostic: they only need a prediction callable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

import numpy as np

from .dataset import Dataset, DatasetError, ValueKind
from .forest import EnsembleConfig, EnsembleModel, train_forest
from .summary import quantile

train_ensemble = train_forest


@dataclass(frozen=True)
class PreprocessPlan:
    features: tuple[str, ...]
    target: str
    matrix_columns: tuple[str, ...]
    groups: dict[str, tuple[int, ...]]
    target_labels: tuple[str, ...]
    rows_kept: int
    dropped_missing: int
    dropped_duplicates: int
    dropped_outliers: int


def preprocess(
    ds: Dataset, features: Sequence[str], target: str, k: float = 1.5
) -> tuple[np.ndarray, np.ndarray, PreprocessPlan]:
    """Build the (X, y) design pair for relevance scoring.

    Row filtering happens in a fixed order on the selected columns only:
    rows with any missing cell go first, then exact duplicate rows (the
    first occurrence stays), then rows falling outside the Tukey fences of
    any numeric feature (fences computed on the surviving rows).  Fewer
    than 20 surviving rows is an error.
    """
    if not features:
        raise DatasetError("at least one feature is required")
    if len(set(features)) != len(features):
        raise DatasetError("feature list names a column twice")
    if target in features:
        raise DatasetError(f"target {target!r} cannot also be a feature")
    cols = [ds.column(f) for f in features]
    t_col = ds.column(target)
    if t_col.kind is not ValueKind.CATEGORICAL:
        raise DatasetError(f"target {target!r} must be categorical")

    keep = np.ones(ds.row_count, dtype=bool)
    for col in (*cols, t_col):
        keep &= ~col.missing_mask()
    dropped_missing = int((~keep).sum())
    idx = np.nonzero(keep)[0]

    # exact duplicates over the selected columns, first occurrence kept
    key_cols = []
    for col in (*cols, t_col):
        if col.kind is ValueKind.NUMERIC:
            key_cols.append(col.values[idx])
        else:
            _, inv = np.unique(col.values[idx].astype(str), return_inverse=True)
            key_cols.append(inv.astype(np.float64))
    key = np.column_stack(key_cols)
    _, first = np.unique(key, axis=0, return_index=True)
    idx = idx[np.sort(first)]
    dropped_duplicates = int(keep.sum()) - len(idx)

    # Tukey fences on numeric features, all computed from the same rows
    banished = np.zeros(len(idx), dtype=bool)
    for col in cols:
        if col.kind is not ValueKind.NUMERIC:
            continue
        vals = col.values[idx]
        s = np.sort(vals)
        q1 = quantile(s, 0.25)
        q3 = quantile(s, 0.75)
        lo = q1 - k * (q3 - q1)
        hi = q3 + k * (q3 - q1)
        banished |= (vals < lo) | (vals > hi)
    dropped_outliers = int(banished.sum())
    idx = idx[~banished]

    if len(idx) < 20:
        raise DatasetError(
            f"only {len(idx)} rows survive preprocessing; at least 20 are required"
        )

    matrix_parts: list[np.ndarray] = []
    matrix_names: list[str] = []
    groups: dict[str, tuple[int, ...]] = {}
    for col in cols:
        start = len(matrix_names)
        if col.kind is ValueKind.NUMERIC:
            matrix_parts.append(col.values[idx])
            matrix_names.append(col.name)
        else:
            labels = col.values[idx].astype(str)
            levels = np.unique(labels)
            for lv in levels:
                matrix_parts.append((labels == lv).astype(np.float64))
                matrix_names.append(f"{col.name}={lv}")
        groups[col.name] = tuple(range(start, len(matrix_names)))

    t_labels = t_col.values[idx].astype(str)
    target_labels = tuple(np.unique(t_labels))
    code_of = {lv: i for i, lv in enumerate(target_labels)}
    y = np.array([code_of[v] for v in t_labels], dtype=np.float64)

    x = np.column_stack(matrix_parts)
    plan = PreprocessPlan(
        features=tuple(features),
        target=target,
        matrix_columns=tuple(matrix_names),
        groups=groups,
        target_labels=target_labels,
        rows_kept=len(idx),
        dropped_missing=dropped_missing,
        dropped_duplicates=dropped_duplicates,
        dropped_outliers=dropped_outliers,
    )
    return x, y, plan


@dataclass(frozen=True)
class ShapleyConfig:
    permutations: int = 128
    background_size: int = 100
    eval_rows: int = 32
    seed: int = 0

    def __post_init__(self) -> None:
        if self.permutations < 1:
            raise ValueError("permutations must be positive")
        if self.background_size < 1:
            raise ValueError("background_size must be positive")
        if self.eval_rows < 1:
            raise ValueError("eval_rows must be positive")


@dataclass(frozen=True)
class ShapleyResult:
    method: str
    feature_names: tuple[str, ...]
    per_feature: dict[str, float]
    phi: np.ndarray                 # (eval_rows, d) signed attributions
    se: np.ndarray                  # (eval_rows, d) Monte Carlo standard errors
    baseline: float
    eval_indices: np.ndarray
    efficiency_residual: np.ndarray
    efficiency_tolerance: np.ndarray
    samples: int
    seed: int


Predictor = Callable[[np.ndarray], np.ndarray]


def _as_predictor(model) -> Predictor:
    if isinstance(model, EnsembleModel) or hasattr(model, "predict"):
        return model.predict
    if callable(model):
        return model
    raise TypeError("model must expose .predict or be callable")


def _resolve_groups(
    groups: Mapping[str, Sequence[int]] | None, width: int
) -> tuple[tuple[str, ...], list[np.ndarray]]:
    if groups is None:
        groups = {f"x{j}": (j,) for j in range(width)}
    names = tuple(groups)
    index_sets = [np.asarray(groups[n], dtype=np.int64) for n in names]
    flat = np.concatenate(index_sets) if index_sets else np.empty(0, dtype=np.int64)
    if len(flat) != width or len(np.unique(flat)) != width or (
        len(flat) and (flat.min() < 0 or flat.max() >= width)
    ):
        raise DatasetError("groups must partition the matrix columns exactly")
    return names, index_sets


def _draw_rows(rng: np.random.Generator, n: int, config: ShapleyConfig):
    bg = rng.choice(n, size=min(config.background_size, n), replace=False)
    ev = rng.choice(n, size=min(config.eval_rows, n), replace=False)
    return bg, ev


def shapley_mc(
    model,
    x: np.ndarray,
    groups: Mapping[str, Sequence[int]] | None = None,
    config: ShapleyConfig | None = None,
) -> ShapleyResult:
    """Monte Carlo Shapley attribution by permutation sampling.

    For each evaluated row and each sampled permutation, one background row
    is drawn and features are switched from background to actual values in
    permutation order; the prediction deltas are unbiased contribution
    samples.  The attributions of one row telescope to
    f(x) - mean(f(drawn backgrounds)), so the efficiency residual against
    the declared baseline is tracked together with a 3-standard-error
    tolerance.  ``per_feature`` holds mean absolute attributions.
    """
    cfg = config or ShapleyConfig()
    predict = _as_predictor(model)
    x = np.asarray(x, dtype=np.float64)
    n, width = x.shape
    names, index_sets = _resolve_groups(groups, width)
    d = len(names)
    group_of_col = np.empty(width, dtype=np.int64)
    for g, cols in enumerate(index_sets):
        group_of_col[cols] = g

    rng = np.random.default_rng(np.random.SeedSequence(cfg.seed))
    bg_idx, ev_idx = _draw_rows(rng, n, cfg)
    background = x[bg_idx]
    baseline = float(np.mean(predict(background)))
    p = cfg.permutations
    rows = len(ev_idx)

    perms_all = np.empty((rows, p, d), dtype=np.int64)
    batches = []
    for r, i in enumerate(ev_idx):
        perms = np.argsort(rng.random((p, d)), axis=1)
        perms_all[r] = perms
        draws = rng.integers(0, len(background), size=p)
        pos = np.argsort(perms, axis=1)          # pos[t, g] = slot of group g
        pos_col = pos[:, group_of_col]           # (p, width)
        ks = np.arange(d + 1)
        mask = pos_col[:, None, :] < ks[None, :, None]
        comp = np.where(mask, x[i][None, None, :], background[draws][:, None, :])
        batches.append(comp.reshape(p * (d + 1), width))

    preds = predict(np.concatenate(batches)).reshape(rows, p, d + 1)
    contribs = np.diff(preds, axis=2)            # (rows, p, d); slot order
    row_ix = np.arange(rows)[:, None, None]
    acc = np.zeros((rows, d))
    acc2 = np.zeros((rows, d))
    np.add.at(acc, (row_ix, perms_all), contribs)
    np.add.at(acc2, (row_ix, perms_all), contribs**2)
    phi = acc / p
    var = np.maximum(acc2 / p - phi**2, 0.0)
    se = np.sqrt(var / p)

    fx = predict(x[ev_idx])
    residual = phi.sum(axis=1) - (fx - baseline)
    se_base = preds[:, :, 0].std(axis=1) / math.sqrt(p)
    tolerance = 3.0 * se_base + 1e-12

    per_feature = {names[g]: float(np.mean(np.abs(phi[:, g]))) for g in range(d)}
    return ShapleyResult(
        method="permutation",
        feature_names=names,
        per_feature=per_feature,
        phi=phi,
        se=se,
        baseline=baseline,
        eval_indices=ev_idx,
        efficiency_residual=residual,
        efficiency_tolerance=tolerance,
        samples=p,
        seed=cfg.seed,
    )


def shapley_exact(
    model,
    x: np.ndarray,
    groups: Mapping[str, Sequence[int]] | None = None,
    config: ShapleyConfig | None = None,
) -> ShapleyResult:
    """Exact Shapley attribution by full coalition enumeration.

    Walks all 2^d coalitions (d <= 10; use :func:`shapley_mc` beyond that)
    with the classical weights |S|! (d-|S|-1)! / d!.  With the same seed the
    background and evaluated rows match :func:`shapley_mc`, so the two
    estimators are directly comparable.
    """
    cfg = config or ShapleyConfig()
    predict = _as_predictor(model)
    x = np.asarray(x, dtype=np.float64)
    n, width = x.shape
    names, index_sets = _resolve_groups(groups, width)
    d = len(names)
    if d > 10:
        raise DatasetError(
            f"exact enumeration over {d} features is intractable; use shapley_mc"
        )
    rng = np.random.default_rng(np.random.SeedSequence(cfg.seed))
    bg_idx, ev_idx = _draw_rows(rng, n, cfg)
    background = x[bg_idx]
    rows = len(ev_idx)
    b = len(background)

    col_in_mask = np.zeros((1 << d, width), dtype=bool)
    for m in range(1 << d):
        for g in range(d):
            if m >> g & 1:
                col_in_mask[m, index_sets[g]] = True

    values = np.empty((rows, 1 << d))
    xe = x[ev_idx]
    for m in range(1 << d):
        comp = np.where(col_in_mask[m][None, None, :], xe[:, None, :], background[None, :, :])
        values[:, m] = predict(comp.reshape(rows * b, width)).reshape(rows, b).mean(axis=1)

    fact = [math.factorial(i) for i in range(d + 1)]
    phi = np.zeros((rows, d))
    for m in range(1 << d):
        s = bin(m).count("1")
        w = fact[s] * fact[d - s - 1] / fact[d]
        for g in range(d):
            if not m >> g & 1:
                phi[:, g] += w * (values[:, m | 1 << g] - values[:, m])

    baseline = float(np.mean(predict(background)))
    residual = phi.sum(axis=1) - (values[:, (1 << d) - 1] - values[:, 0])
    per_feature = {names[g]: float(np.mean(np.abs(phi[:, g]))) for g in range(d)}
    return ShapleyResult(
        method="exact",
        feature_names=names,
        per_feature=per_feature,
        phi=phi,
        se=np.zeros_like(phi),
        baseline=baseline,
        eval_indices=ev_idx,
        efficiency_residual=residual,
        efficiency_tolerance=np.full(rows, 1e-9),
        samples=1 << d,
        seed=cfg.seed,
    )


def relevance_scores(
    ds: Dataset,
    features: Sequence[str],
    target: str,
    seed: int = 0,
    permutations: int = 128,
    ensemble: EnsembleConfig | None = None,
    shapley: ShapleyConfig | None = None,
) -> tuple[ShapleyResult, EnsembleModel, PreprocessPlan]:
    """End-to-end relevance scoring: preprocess, train, attribute."""
    x, y, plan = preprocess(ds, features, target)
    e_cfg = ensemble or EnsembleConfig(seed=seed)
    model = train_forest(x, y, e_cfg)
    s_cfg = shapley or ShapleyConfig(permutations=permutations, seed=seed)
    result = shapley_mc(model, x, plan.groups, s_cfg)
    return result, model, plan

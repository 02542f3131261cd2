"""Metric suite orchestration and canonical report serialization.

The suite runs a set of named metric groups over one dataset, isolates
their failures (a failing metric becomes a warning, never an exception),
and collects everything into a :class:`MetricReport`.  Serialization is
canonical: keys are sorted, floats are rounded to 12 significant digits,
and volatile run facts (wall-clock timings, creation timestamp) are kept
out of the report body so identical inputs serialize to identical bytes.
"""

from __future__ import annotations

import json
import re
import time
from dataclasses import dataclass
from datetime import datetime, timezone
from typing import Callable, Sequence

import numpy as np

from . import correlation, fairness, privacy, quality
from .charts import ChartSpec, Series, five_number_summary
from .dataset import Dataset, DatasetError, ValueKind
from .faircheck import fair_score, parse_metadata
from .forest import EnsembleConfig
from .importance import ShapleyConfig, relevance_scores
from .summary import summarize

SCHEMA_VERSION = "aidrin-report/1"

METRIC_IDS = (
    "completeness",
    "outliers",
    "duplicates",
    "correlations",
    "fairness",
    "class_imbalance",
    "privacy",
    "feature_relevance",
    "fair_compliance",
)

# metric id -> (required SuiteParams fields, CLI flags for the usage hint)
REQUIREMENTS: dict[str, tuple[tuple[str, ...], tuple[str, ...]]] = {
    "completeness": ((), ()),
    "outliers": ((), ()),
    "duplicates": ((), ()),
    "correlations": ((), ()),
    "fairness": (("sensitive", "target"), ("--sensitive", "--target")),
    "class_imbalance": (("class_column",), ("--class-column",)),
    "privacy": (("quasi_identifiers",), ("--quasi-identifiers",)),
    "feature_relevance": (("features", "target"), ("--features", "--target")),
    "fair_compliance": (("metadata_path",), ("--metadata",)),
}


@dataclass(frozen=True)
class SuiteParams:
    sensitive: str | None = None
    target: str | None = None
    features: tuple[str, ...] | None = None
    class_column: str | None = None
    quasi_identifiers: tuple[str, ...] | None = None
    metadata_path: str | None = None
    metadata_dialect: str = "dcat"
    k: float = 1.5
    seed: int = 42
    permutations: int = 128
    background_size: int = 100
    eval_rows: int = 32
    tree_count: int = 100
    max_depth: int = 8


@dataclass(frozen=True)
class Selection:
    metric: str
    params: dict


@dataclass
class MetricReport:
    dataset_name: str
    created_at: datetime
    selections: tuple[Selection, ...]
    results: dict[str, dict]
    warnings: tuple[str, ...]
    timings: dict[str, float]


def missing_requirements(metric: str, params: SuiteParams) -> tuple[str, ...]:
    """CLI flags for the parameters this metric still needs."""
    fields_needed, flags = REQUIREMENTS[metric]
    out = []
    for f, flag in zip(fields_needed, flags):
        if getattr(params, f) in (None, (), ""):
            out.append(flag)
    return tuple(out)


def expand_selection(
    metrics: Sequence[str], params: SuiteParams
) -> tuple[list[str], list[str]]:
    """Resolve a metric selection, expanding the "all" shorthand.

    Under "all", metrics whose parameters are absent are skipped with a
    warning; explicitly named metrics are kept (the runner records the
    missing-parameter warning) so the caller can flag the problem.
    """
    warnings: list[str] = []
    if list(metrics) == ["all"]:
        chosen = []
        for m in METRIC_IDS:
            lacking = missing_requirements(m, params)
            if lacking:
                warnings.append(
                    f"{m}: skipped under --metrics all; requires {', '.join(lacking)}"
                )
            else:
                chosen.append(m)
        return chosen, warnings
    seen = []
    for m in metrics:
        if m == "all":
            raise DatasetError('"all" cannot be combined with named metrics')
        if m not in METRIC_IDS:
            raise DatasetError(
                f"unknown metric {m!r}; valid metrics: {', '.join(METRIC_IDS)} (or \"all\")"
            )
        if m not in seen:
            seen.append(m)
    return seen, warnings


def _selection_params(metric: str, params: SuiteParams) -> dict:
    if metric == "outliers":
        return {"k": params.k}
    if metric == "fairness":
        return {"sensitive": params.sensitive, "target": params.target}
    if metric == "class_imbalance":
        return {"class_column": params.class_column}
    if metric == "privacy":
        return {"quasi_identifiers": list(params.quasi_identifiers or ())}
    if metric == "feature_relevance":
        return {
            "features": list(params.features or ()),
            "target": params.target,
            "seed": params.seed,
            "permutations": params.permutations,
        }
    if metric == "fair_compliance":
        return {"metadata": params.metadata_path, "dialect": params.metadata_dialect}
    return {}


def _matrix_payload(matrix) -> dict:
    values = [
        [None if np.isnan(v) else float(v) for v in row]
        for row in matrix.values
    ]
    return {"labels": list(matrix.labels), "values": values}


def _run_completeness(ds: Dataset, params: SuiteParams):
    r = quality.completeness(ds)
    return {"completeness": {"overall": r.overall, "per_column": dict(r.per_column)}}, []


def _run_outliers(ds: Dataset, params: SuiteParams):
    r = quality.outliers(ds, k=params.k)
    payload = {
        "overall": r.overall,
        "k": r.k,
        "per_column": dict(r.per_column),
        "fences": {name: [lo, hi] for name, (lo, hi) in r.fences.items()},
    }
    return {"outliers": payload}, list(r.warnings)


def _run_duplicates(ds: Dataset, params: SuiteParams):
    r = quality.duplicates(ds)
    payload = {
        "score": r.score,
        "duplicate_row_count": r.duplicate_row_count,
        "unique_row_count": r.unique_row_count,
    }
    return {"duplicates": payload}, []


def _run_correlations(ds: Dataset, params: SuiteParams):
    results: dict[str, dict] = {}
    warnings: list[str] = []
    try:
        m = correlation.pearson_matrix(ds)
        results["pearson"] = _matrix_payload(m)
        warnings.extend(f"pearson: {w}" for w in m.warnings)
    except DatasetError as exc:
        warnings.append(f"pearson: {exc}")
    try:
        m = correlation.theils_u_matrix(ds)
        results["theils_u"] = _matrix_payload(m)
        warnings.extend(f"theils_u: {w}" for w in m.warnings)
    except DatasetError as exc:
        warnings.append(f"theils_u: {exc}")
    if not results:
        raise DatasetError("; ".join(warnings))
    return results, warnings


def _run_fairness(ds: Dataset, params: SuiteParams):
    rep = fairness.representation(ds, params.sensitive)
    rate = fairness.statistical_rate(ds, params.sensitive, params.target)
    spread = fairness.tsd(ds, params.sensitive, params.target)
    results = {
        "representation": {
            "attribute": rep.attribute,
            "proportions": dict(rep.proportions),
            "representation_rate": rep.representation_rate,
        },
        "statistical_rate": {
            "sensitive": rate.sensitive,
            "target": rate.target,
            "conditional": {y: dict(g) for y, g in rate.conditional.items()},
            "per_target_rate": dict(rate.per_target_rate),
            "overall": rate.overall,
        },
        "tsd": {
            "sensitive": spread.sensitive,
            "target": spread.target,
            "per_target": dict(spread.per_target),
            "mu": dict(spread.mu),
        },
    }
    warnings = [*rep.warnings, *rate.warnings, *spread.warnings]
    return results, warnings


def _run_class_imbalance(ds: Dataset, params: SuiteParams):
    r = fairness.imbalance_degree(ds, params.class_column)
    payload = {
        "class_column": r.class_column,
        "proportions": dict(r.proportions),
        "minority_count": r.minority_count,
        "id_score": r.id_score,
        "distance": r.distance,
    }
    return {"imbalance": payload}, []


def _run_privacy(ds: Dataset, params: SuiteParams):
    model = privacy.fit_markov(ds, list(params.quasi_identifiers))
    r = privacy.risk_scores(model, ds)
    counts, edges = np.histogram(r.per_record, bins=10, range=(0.0, 1.0))
    payload = {
        "attributes": list(r.attributes),
        "mean_risk": r.mean_risk,
        "min_risk": float(r.per_record.min()),
        "max_risk": float(r.per_record.max()),
        "scored_rows": r.scored_rows,
        "dropped_rows": r.dropped_rows,
        "histogram": {"bin_edges": [float(e) for e in edges], "counts": [int(c) for c in counts]},
    }
    return {"privacy_risk": payload}, list(r.warnings)


def _run_feature_relevance(ds: Dataset, params: SuiteParams):
    result, model, plan = relevance_scores(
        ds,
        list(params.features),
        params.target,
        ensemble=EnsembleConfig(
            tree_count=params.tree_count, max_depth=params.max_depth, seed=params.seed
        ),
        shapley=ShapleyConfig(
            permutations=params.permutations,
            background_size=params.background_size,
            eval_rows=params.eval_rows,
            seed=params.seed,
        ),
    )
    payload = {
        "target": plan.target,
        "features": list(plan.features),
        "per_feature": dict(result.per_feature),
        "baseline": result.baseline,
        "method": result.method,
        "permutations": result.samples,
        "seed": result.seed,
        "rows_used": plan.rows_kept,
        "dropped": {
            "missing": plan.dropped_missing,
            "duplicates": plan.dropped_duplicates,
            "outliers": plan.dropped_outliers,
        },
        "constant_target": model.constant_target,
    }
    warnings = []
    if model.constant_target:
        warnings.append("target is constant after preprocessing; attributions are all zero")
    return {"feature_importance": payload}, warnings


def _run_fair_compliance(ds: Dataset, params: SuiteParams):
    catalog = parse_metadata(params.metadata_path, params.metadata_dialect)
    score = fair_score(catalog)
    payload = {
        "dialect": score.dialect,
        "score_percent": score.score_percent,
        "per_principle": {p: list(v) for p, v in score.per_principle.items()},
        "fulfilled": {p: list(v) for p, v in score.fulfilled_elements.items()},
        "missing": {p: list(v) for p, v in score.missing_elements.items()},
        "other_keys": list(score.other_keys),
    }
    return {"fair": payload}, []


_RUNNERS: dict[str, Callable] = {
    "completeness": _run_completeness,
    "outliers": _run_outliers,
    "duplicates": _run_duplicates,
    "correlations": _run_correlations,
    "fairness": _run_fairness,
    "class_imbalance": _run_class_imbalance,
    "privacy": _run_privacy,
    "feature_relevance": _run_feature_relevance,
    "fair_compliance": _run_fair_compliance,
}


def summary_payload(ds: Dataset) -> dict:
    s = summarize(ds)
    per_column = []
    for c in s.per_column:
        entry: dict = {
            "name": c.name,
            "kind": c.kind.value,
            "non_missing": c.non_missing,
            "missing": c.missing,
        }
        if c.kind is ValueKind.NUMERIC and c.mean is not None:
            entry.update(
                mean=c.mean, std=c.std, min=c.minimum, q1=c.q1,
                median=c.median, q3=c.q3, max=c.maximum,
            )
        if c.kind is ValueKind.CATEGORICAL:
            entry["distinct"] = c.distinct
            entry["top_values"] = [[label, count] for label, count in c.top_values]
        per_column.append(entry)
    return {
        "rows": s.rows,
        "columns": s.columns,
        "numeric_count": s.numeric_count,
        "categorical_count": s.categorical_count,
        "per_column": per_column,
    }


def run_suite(
    ds: Dataset, metrics: Sequence[str] | None = None, params: SuiteParams | None = None
) -> MetricReport:
    """Run the selected metric groups (all satisfiable ones by default).

    Every selected metric either contributes to ``results`` or leaves a
    warning explaining why it could not; an exception inside one metric
    never takes down the rest of the suite.  Column summaries are always
    included under the ``summary`` key.
    """
    params = params or SuiteParams()
    if metrics is None:
        metrics, warnings = expand_selection(["all"], params)
    else:
        metrics, warnings = expand_selection(list(metrics), params)
    warnings = list(warnings)
    results: dict[str, dict] = {}
    timings: dict[str, float] = {}
    selections = []

    t0 = time.perf_counter()
    results["summary"] = summary_payload(ds)
    timings["summary"] = time.perf_counter() - t0

    for metric in metrics:
        selections.append(Selection(metric, _selection_params(metric, params)))
        lacking = missing_requirements(metric, params)
        if lacking:
            warnings.append(f"{metric}: missing required parameter(s): {', '.join(lacking)}")
            continue
        t0 = time.perf_counter()
        try:
            payloads, metric_warnings = _RUNNERS[metric](ds, params)
        except Exception as exc:  # noqa: BLE001 - isolation is the contract
            warnings.append(f"{metric}: {exc}")
            timings[metric] = time.perf_counter() - t0
            continue
        timings[metric] = time.perf_counter() - t0
        results.update(payloads)
        warnings.extend(f"{metric}: {w}" for w in metric_warnings)

    return MetricReport(
        dataset_name=ds.name,
        created_at=datetime.now(timezone.utc),
        selections=tuple(selections),
        results=results,
        warnings=tuple(warnings),
        timings=timings,
    )


def canonical_float(x: float) -> float:
    """Round to 12 significant digits; a fixpoint of itself."""
    return float(format(x, ".12g"))


def _canonicalize(value):
    if isinstance(value, bool) or isinstance(value, int):
        return value
    if isinstance(value, float):
        return canonical_float(value)
    if isinstance(value, dict):
        return {str(k): _canonicalize(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_canonicalize(v) for v in value]
    return value


def to_json(report: MetricReport) -> str:
    """Canonical report body: sorted keys, 12-significant-digit floats.

    Volatile facts (timestamp, timings) are excluded; see
    :func:`run_meta_json` for those.
    """
    body = {
        "schema_version": SCHEMA_VERSION,
        "dataset": report.dataset_name,
        "selections": [
            {"metric": s.metric, "params": s.params} for s in report.selections
        ],
        "results": report.results,
        "warnings": list(report.warnings),
    }
    return json.dumps(_canonicalize(body), sort_keys=True, indent=2) + "\n"


def parse_report(text: str) -> dict:
    """Parse a serialized report; parse(serialize(r)) is stable."""
    return json.loads(text)


def run_meta_json(report: MetricReport) -> str:
    """The volatile sidecar: creation timestamp and per-metric timings."""
    body = {
        "created_at": report.created_at.isoformat(),
        "timings": {k: canonical_float(v) for k, v in report.timings.items()},
    }
    return json.dumps(body, sort_keys=True, indent=2) + "\n"


def _safe_name(name: str) -> str:
    return re.sub(r"[^A-Za-z0-9._-]+", "_", name)


def suite_charts(ds: Dataset, report: MetricReport, params: SuiteParams | None = None):
    """Chart specs for everything present in a report's results.

    Returns (filename, ChartSpec) pairs; filenames follow
    ``<metric>_<qualifier>.svg``.
    """
    params = params or SuiteParams()
    charts: list[tuple[str, ChartSpec]] = []
    r = report.results

    if "completeness" in r:
        per = r["completeness"]["per_column"]
        charts.append((
            "completeness_overall.svg",
            ChartSpec(
                "bar", "Completeness by column",
                labels=tuple(per), series=(Series("completeness", tuple(per.values())),),
                y_label="fraction present",
            ),
        ))
    if "outliers" in r and r["outliers"]["per_column"]:
        per = r["outliers"]["per_column"]
        charts.append((
            "outliers_overall.svg",
            ChartSpec(
                "bar", "Outlier fraction by column (Tukey fences)",
                labels=tuple(per), series=(Series("outliers", tuple(per.values())),),
                y_label="fraction outside fences",
            ),
        ))
    for key, title in (("pearson", "Pearson correlation"), ("theils_u", "Uncertainty coefficient U(row|col)")):
        if key in r:
            labels = r[key]["labels"]
            rows = [
                Series(lab, tuple(np.nan if v is None else v for v in row))
                for lab, row in zip(labels, r[key]["values"])
            ]
            charts.append((
                f"correlations_{key}.svg",
                ChartSpec("heatmap", title, labels=tuple(labels), series=tuple(rows)),
            ))
    if "representation" in r:
        payload = r["representation"]
        props = payload["proportions"]
        charts.append((
            f"representation_{_safe_name(payload['attribute'])}.svg",
            ChartSpec(
                "pie", f"Group representation: {payload['attribute']}",
                labels=tuple(props), series=(Series("proportion", tuple(props.values())),),
            ),
        ))
    if "statistical_rate" in r:
        payload = r["statistical_rate"]
        groups = sorted(next(iter(payload["conditional"].values())))
        series = tuple(
            Series(y, tuple(cond[g] for g in groups))
            for y, cond in payload["conditional"].items()
        )
        charts.append((
            f"statistical_rate_{_safe_name(payload['sensitive'])}.svg",
            ChartSpec(
                "bar", f"P({payload['target']} | {payload['sensitive']})",
                labels=tuple(groups), series=series, y_label="conditional probability",
            ),
        ))
    if "tsd" in r:
        payload = r["tsd"]
        charts.append((
            f"tsd_{_safe_name(payload['sensitive'])}.svg",
            ChartSpec(
                "bar", f"Spread of P({payload['target']}=y | group)",
                labels=tuple(payload["per_target"]),
                series=(Series("std dev", tuple(payload["per_target"].values())),),
                y_label="standard deviation",
            ),
        ))
    if "imbalance" in r:
        payload = r["imbalance"]
        props = payload["proportions"]
        charts.append((
            f"imbalance_{_safe_name(payload['class_column'])}.svg",
            ChartSpec(
                "bar", f"Class proportions: {payload['class_column']}",
                labels=tuple(props), series=(Series("proportion", tuple(props.values())),),
                y_label="proportion",
            ),
        ))
    if "privacy_risk" in r:
        hist = r["privacy_risk"]["histogram"]
        edges = hist["bin_edges"]
        labels = tuple(f"{edges[i]:.1f}-{edges[i+1]:.1f}" for i in range(len(edges) - 1))
        charts.append((
            "privacy_risk_histogram.svg",
            ChartSpec(
                "histogram", "Re-identification risk distribution",
                labels=labels,
                series=(Series("records", tuple(float(c) for c in hist["counts"])),),
                x_label="risk", y_label="records",
            ),
        ))
    if "feature_importance" in r:
        per = r["feature_importance"]["per_feature"]
        ordered = sorted(per.items(), key=lambda kv: (-kv[1], kv[0]))
        charts.append((
            "feature_importance_overall.svg",
            ChartSpec(
                "bar", "Feature relevance (mean |Shapley value|)",
                labels=tuple(k for k, _ in ordered),
                series=(Series("relevance", tuple(v for _, v in ordered)),),
                y_label="mean |attribution|",
            ),
        ))
        if params.features and params.target:
            charts.extend(relevance_combo_charts(ds, list(params.features), params.target))
    if "fair" in r:
        payload = r["fair"]
        per = {p: tuple(v) for p, v in payload["per_principle"].items()}
        charts.append((
            "fair_compliance_overall.svg",
            fair_compliance_pie(per, len(payload["other_keys"]), payload["dialect"]),
        ))
    return charts


def fair_compliance_pie(
    per_principle: dict[str, tuple[int, int]], other_count: int, dialect: str
) -> ChartSpec:
    """Fulfilled checks per FAIR area plus an "other" slice for keys that
    match no check; a record with no keys at all gets a single placeholder
    slice so the chart still renders."""
    labels = [*per_principle, "other"]
    values = [float(per_principle[p][0]) for p in per_principle] + [float(other_count)]
    if sum(values) == 0:
        labels, values = ["none"], [1.0]
    return ChartSpec(
        "pie", f"FAIR element checks ({dialect})",
        labels=tuple(labels), series=(Series("checks", tuple(values)),),
    )


def relevance_combo_charts(ds: Dataset, features: Sequence[str], target: str):
    """Per-feature association charts against the target column.

    numeric target x numeric feature: scatter; categorical target x
    numeric feature: one box per class; categorical target x categorical
    feature: grouped count bars.  Other combinations are skipped.
    """
    charts: list[tuple[str, ChartSpec]] = []
    t_col = ds.column(target)
    t_missing = t_col.missing_mask()
    for name in features:
        f_col = ds.column(name)
        keep = ~(t_missing | f_col.missing_mask())
        if not keep.any():
            continue
        fname = f"feature_relevance_{_safe_name(name)}.svg"
        if t_col.kind is ValueKind.NUMERIC and f_col.kind is ValueKind.NUMERIC:
            xs = f_col.values[keep]
            ys = t_col.values[keep]
            if len(xs) > 500:  # deterministic thinning for plot legibility
                stride = np.linspace(0, len(xs) - 1, 500).astype(np.int64)
                xs, ys = xs[stride], ys[stride]
            spec = ChartSpec(
                "scatter", f"{target} vs {name}",
                series=(Series(name, tuple(xs)), Series(target, tuple(ys))),
                x_label=name, y_label=target,
            )
        elif t_col.kind is ValueKind.CATEGORICAL and f_col.kind is ValueKind.NUMERIC:
            boxes = []
            labels = []
            values = f_col.values[keep]
            classes = t_col.values[keep]
            for cls in sorted({str(c) for c in classes}):
                sel = np.array([str(c) == cls for c in classes])
                if sel.any():
                    labels.append(cls)
                    boxes.append(Series(cls, five_number_summary(values[sel])))
            spec = ChartSpec(
                "box", f"{name} by {target}",
                labels=tuple(labels), series=tuple(boxes), y_label=name,
            )
        elif t_col.kind is ValueKind.CATEGORICAL and f_col.kind is ValueKind.CATEGORICAL:
            f_vals = [str(v) for v in f_col.values[keep]]
            t_vals = [str(v) for v in t_col.values[keep]]
            f_levels = sorted(set(f_vals))
            t_levels = sorted(set(t_vals))
            counts = {t: {f: 0 for f in f_levels} for t in t_levels}
            for fv, tv in zip(f_vals, t_vals):
                counts[tv][fv] += 1
            spec = ChartSpec(
                "bar", f"{name} by {target}",
                labels=tuple(f_levels),
                series=tuple(
                    Series(t, tuple(float(counts[t][f]) for f in f_levels)) for t in t_levels
                ),
                y_label="count",
            )
        else:
            continue
        charts.append((fname, spec))
    return charts

import json
import math

import numpy as np
import pytest

from readiness.dataset import Column, Dataset, DatasetError
from readiness.charts import render_svg_string
from readiness.report import (
    METRIC_IDS,
    SCHEMA_VERSION,
    MetricReport,
    SuiteParams,
    canonical_float,
    expand_selection,
    missing_requirements,
    parse_report,
    run_meta_json,
    run_suite,
    suite_charts,
    to_json,
)


def test_metric_id_registry():
    assert METRIC_IDS == (
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


def test_single_metric_run(sgc):
    report = run_suite(sgc, ["completeness"])
    assert set(report.results) == {"summary", "completeness"}
    assert report.results["completeness"]["overall"] > 0.9
    assert "completeness" in report.timings
    assert report.selections[0].metric == "completeness"


def test_summary_always_present(sgc):
    report = run_suite(sgc, ["duplicates"])
    assert report.results["summary"]["rows"] == 1000
    assert report.results["summary"]["columns"] == 10


def test_missing_parameter_becomes_warning(sgc):
    report = run_suite(sgc, ["privacy"])
    assert "privacy_risk" not in report.results
    assert any(
        "privacy" in w and "--quasi-identifiers" in w for w in report.warnings
    )


def test_metric_failure_is_isolated():
    ds = Dataset("t", (Column.categorical("only", ["a", "b", "a"]),))
    # outliers needs a numeric column and must not break the others
    report = run_suite(ds, ["outliers", "duplicates"])
    assert "duplicates" in report.results
    assert "outliers" not in report.results
    assert any(w.startswith("outliers:") for w in report.warnings)


def test_unknown_metric_errors(sgc):
    with pytest.raises(DatasetError, match="unknown metric"):
        run_suite(sgc, ["completeness", "bogus"])


def test_all_cannot_be_combined(sgc):
    with pytest.raises(DatasetError):
        run_suite(sgc, ["all", "completeness"])


def test_expand_all_skips_unsatisfiable():
    params = SuiteParams()
    metrics, warnings = expand_selection(["all"], params)
    assert "completeness" in metrics
    assert "privacy" not in metrics
    assert any("privacy" in w for w in warnings)


def test_missing_requirements_names_flags():
    params = SuiteParams()
    assert missing_requirements("privacy", params) == ("--quasi-identifiers",)
    assert missing_requirements("fairness", params) == ("--sensitive", "--target")
    assert missing_requirements("completeness", params) == ()


def test_full_sgc_report_keys(sgc):
    params = SuiteParams(
        sensitive="Sex",
        target="Risk",
        features=("Age", "Job", "Credit amount", "Duration"),
        class_column="Purpose",
        quasi_identifiers=("Sex", "Housing", "Purpose"),
        seed=7,
    )
    report = run_suite(sgc, None, params)
    expected = {
        "summary",
        "completeness",
        "outliers",
        "duplicates",
        "pearson",
        "theils_u",
        "representation",
        "statistical_rate",
        "tsd",
        "imbalance",
        "privacy_risk",
        "feature_importance",
    }
    assert expected <= set(report.results)
    assert "fair" not in report.results  # no metadata file given


def test_report_json_is_canonical(sgc):
    report = run_suite(sgc, ["completeness", "duplicates"])
    text = to_json(report)
    body = parse_report(text)
    assert body["schema_version"] == SCHEMA_VERSION
    assert body["dataset"] == sgc.name
    # volatile facts live in the sidecar only
    assert "created_at" not in body
    assert "timings" not in body
    meta = json.loads(run_meta_json(report))
    assert "created_at" in meta and "timings" in meta
    # serialization is a fixpoint
    again = json.dumps(body, sort_keys=True, indent=2) + "\n"
    assert again == text


def test_two_runs_serialize_identically(sgc):
    params = SuiteParams(seed=7)
    a = to_json(run_suite(sgc, None, params))
    b = to_json(run_suite(sgc, None, params))
    assert a == b


def test_canonical_float_is_idempotent_fuzz():
    rng = np.random.default_rng(61)
    values = list(rng.normal(size=200) * 10.0 ** rng.integers(-12, 12, size=200))
    values += [0.0, -0.0, 1e300, 5e-324, 1 / 3]
    for v in values:
        once = canonical_float(v)
        assert canonical_float(once) == once
        assert json.loads(json.dumps(once)) == once


def test_nan_matrix_cells_serialize_as_null():
    ds = Dataset("t", (
        Column.numeric("a", [1.0, 2.0, 3.0]),
        Column.numeric("b", [5.0, 5.0, 5.0]),
    ))
    report = run_suite(ds, ["correlations"])
    text = to_json(report)
    body = parse_report(text)
    cells = body["results"]["pearson"]["values"]
    assert cells[0][1] is None
    assert not math.isnan(0.0)  # guard: json round trip produced real null


def test_selection_params_are_echoed(sgc):
    params = SuiteParams(class_column="Purpose", seed=3)
    report = run_suite(sgc, ["class_imbalance"], params)
    sel = report.selections[0]
    assert sel.metric == "class_imbalance"
    assert sel.params["class_column"] == "Purpose"


def test_suite_charts_render(sgc):
    params = SuiteParams(
        sensitive="Sex",
        target="Risk",
        features=("Age", "Credit amount"),
        class_column="Purpose",
        quasi_identifiers=("Housing",),
        seed=7,
        permutations=16,
        tree_count=10,
    )
    report = run_suite(sgc, None, params)
    pairs = suite_charts(sgc, report, params)
    written = []
    for name, spec in pairs:
        svg = render_svg_string(spec)
        assert svg.lstrip().startswith("<svg")
        assert "</svg>" in svg
        written.append(name)
    expected = {
        "completeness_overall.svg",
        "outliers_overall.svg",
        "correlations_pearson.svg",
        "correlations_theils_u.svg",
        "privacy_risk_histogram.svg",
        "feature_importance_overall.svg",
    }
    assert expected <= set(written)

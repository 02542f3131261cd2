import json

import pytest

from readiness.cli import main
from readiness.faircheck import DIALECTS
from readiness.report import parse_report

FULL_DCAT = {
    "identifier": "doi:10.0/example",
    "title": "t",
    "description": "d",
    "keyword": ["k"],
    "theme": ["th"],
    "landingPage": "https://x",
    "distribution": [{"downloadURL": "https://x/a.csv", "format": "text/csv"}],
    "accessLevel": "public",
    "publisher": {"name": "p"},
    "conformsTo": "https://schema",
    "references": ["https://docs"],
    "license": "https://l",
    "programCode": ["1"],
    "bureauCode": ["2"],
}


def test_summarize_text(sgc_csv, capsys):
    assert main(["summarize", str(sgc_csv)]) == 0
    out = capsys.readouterr().out
    assert "1000 rows × 10 columns" in out
    assert "Age" in out and "Purpose" in out


def test_summarize_json(sgc_csv, capsys):
    assert main(["summarize", str(sgc_csv), "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["rows"] == 1000
    assert payload["columns"] == 10


def test_missing_file_is_usage_error(tmp_path, capsys):
    code = main(["summarize", str(tmp_path / "nope.csv")])
    assert code == 2
    assert "error:" in capsys.readouterr().err


def test_unknown_metric_is_usage_error(sgc_csv, capsys):
    code = main(["inspect", str(sgc_csv), "--metrics", "nonsense"])
    assert code == 2
    assert "unknown metric" in capsys.readouterr().err


def test_inspect_single_metric(sgc_csv, tmp_path, capsys):
    code = main([
        "inspect", str(sgc_csv),
        "--metrics", "completeness",
        "--out", str(tmp_path),
    ])
    assert code == 0
    body = parse_report((tmp_path / "report.json").read_text())
    assert set(body["results"]) == {"summary", "completeness"}
    assert (tmp_path / "run_meta.json").exists()
    assert "report written to" in capsys.readouterr().out


def test_inspect_explicit_metric_missing_flag(sgc_csv, tmp_path, capsys):
    code = main([
        "inspect", str(sgc_csv),
        "--metrics", "privacy",
        "--out", str(tmp_path),
    ])
    assert code == 1
    err = capsys.readouterr().err
    assert "--quasi-identifiers" in err
    body = parse_report((tmp_path / "report.json").read_text())
    assert "privacy_risk" not in body["results"]
    assert any("--quasi-identifiers" in w for w in body["warnings"])


def test_inspect_full_run_with_charts(sgc_csv, tmp_path, capsys):
    meta = tmp_path / "meta.json"
    meta.write_text(json.dumps(FULL_DCAT))
    code = main([
        "inspect", str(sgc_csv),
        "--sensitive", "Sex",
        "--target", "Risk",
        "--features", "Age,Credit amount,Duration",
        "--class-column", "Purpose",
        "--quasi-identifiers", "Housing",
        "--metadata", str(meta),
        "--seed", "7",
        "--permutations", "16",
        "--out", str(tmp_path),
        "--charts",
    ])
    assert code == 0
    out = capsys.readouterr().out
    assert "charts written" in out
    svgs = list(tmp_path.glob("*.svg"))
    assert len(svgs) >= 8
    body = parse_report((tmp_path / "report.json").read_text())
    assert "feature_importance" in body["results"]
    assert body["results"]["privacy_risk"]["mean_risk"] == pytest.approx(
        0.45, abs=0.01
    )


def test_inspect_metrics_all_skips_note(sgc_csv, tmp_path, capsys):
    code = main(["inspect", str(sgc_csv), "--out", str(tmp_path)])
    assert code == 1  # skip notes are warnings
    err = capsys.readouterr().err
    assert "privacy" in err


def test_aidrin_out_env_fallback(sgc_csv, tmp_path, monkeypatch, capsys):
    target = tmp_path / "via_env"
    monkeypatch.setenv("AIDRIN_OUT", str(target))
    code = main(["inspect", str(sgc_csv), "--metrics", "duplicates"])
    assert code == 0
    assert (target / "report.json").exists()
    capsys.readouterr()


def test_byte_identical_reports(sgc_csv, tmp_path, capsys):
    out_a = tmp_path / "a"
    out_b = tmp_path / "b"
    for out in (out_a, out_b):
        main([
            "inspect", str(sgc_csv),
            "--metrics", "all",
            "--seed", "7",
            "--out", str(out),
        ])
    capsys.readouterr()
    assert (out_a / "report.json").read_bytes() == (out_b / "report.json").read_bytes()


def test_faircheck_full_record(tmp_path, capsys):
    meta = tmp_path / "meta.json"
    meta.write_text(json.dumps(FULL_DCAT))
    code = main(["faircheck", "--metadata", str(meta)])
    assert code == 0
    out = capsys.readouterr().out
    assert "Findable: 6/6" in out
    assert "Accessible: 5/5" in out
    assert "Interoperable: 3/3" in out
    assert "Reusable: 4/4" in out
    assert "score: 100.0%" in out


def test_faircheck_empty_record(tmp_path, capsys):
    meta = tmp_path / "empty.json"
    meta.write_text("{}")
    code = main(["faircheck", "--metadata", str(meta)])
    assert code == 0
    out = capsys.readouterr().out
    assert "score: 0.0%" in out
    assert "missing:" in out


def test_faircheck_malformed_json(tmp_path, capsys):
    meta = tmp_path / "bad.json"
    meta.write_text("{not json")
    code = main(["faircheck", "--metadata", str(meta)])
    assert code == 2
    assert "line 1" in capsys.readouterr().err


def test_faircheck_chart_output(tmp_path, capsys):
    meta = tmp_path / "meta.json"
    meta.write_text(json.dumps(FULL_DCAT))
    code = main([
        "faircheck", "--metadata", str(meta), "--charts", "--out", str(tmp_path)
    ])
    assert code == 0
    assert (tmp_path / "fair_compliance_overall.svg").exists()
    capsys.readouterr()


def test_faircheck_dialect_choices(tmp_path, capsys):
    meta = tmp_path / "meta.json"
    meta.write_text("{}")
    for dialect in DIALECTS:
        assert main(["faircheck", "--metadata", str(meta), "--dialect", dialect]) == 0
    capsys.readouterr()


def test_custom_delimiter_and_missing_tokens(tmp_path, capsys):
    csv_path = tmp_path / "semi.csv"
    csv_path.write_text("a;b\n1;x\n2;MISSING\n3;y\n")
    code = main([
        "summarize", str(csv_path),
        "--delimiter", ";",
        "--missing-tokens", "MISSING",
        "--format", "json",
    ])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    col_b = [c for c in payload["per_column"] if c["name"] == "b"][0]
    assert col_b["missing"] == 1


def test_no_arguments_is_usage_error(capsys):
    assert main([]) == 2
    capsys.readouterr()

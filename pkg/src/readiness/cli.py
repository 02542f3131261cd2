"""Command-line interface.

Three subcommands:

    readiness inspect INPUT.csv --metrics all [flags] --out DIR
    readiness summarize INPUT.csv [--format text|json]
    readiness faircheck --metadata record.json --dialect dcat

``inspect`` writes ``report.json`` (canonical, byte-stable for identical
inputs and flags), a ``run_meta.json`` sidecar with the timestamp and
timings, and optionally one SVG per chart.  Exit codes: 0 clean, 1 the run
finished but the report carries warnings, 2 the input or usage was bad.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .charts import render_svg
from .dataset import CsvOptions, DatasetError, load_csv
from .faircheck import DIALECTS, MetadataError, fair_score, parse_metadata
from .report import (
    METRIC_IDS,
    SuiteParams,
    expand_selection,
    fair_compliance_pie,
    missing_requirements,
    run_meta_json,
    run_suite,
    suite_charts,
    summary_payload,
    to_json,
)
from .summary import summarize

EXIT_OK = 0
EXIT_WARNINGS = 1
EXIT_USAGE = 2


def _split_csv_list(text: str) -> tuple[str, ...]:
    return tuple(part.strip() for part in text.split(","))


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="readiness",
        description="Readiness assessment for tabular machine-learning datasets.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    inspect = sub.add_parser("inspect", help="run metrics over a CSV file")
    inspect.add_argument("input", help="path to the CSV file")
    inspect.add_argument(
        "--metrics",
        default="all",
        help=f'comma-separated metric list or "all"; metrics: {", ".join(METRIC_IDS)}',
    )
    inspect.add_argument("--sensitive", help="sensitive attribute column (fairness)")
    inspect.add_argument("--target", help="target/label column (fairness, feature_relevance)")
    inspect.add_argument("--features", help="comma-separated feature columns (feature_relevance)")
    inspect.add_argument("--class-column", dest="class_column", help="label column (class_imbalance)")
    inspect.add_argument(
        "--quasi-identifiers",
        dest="quasi_identifiers",
        help="comma-separated quasi-identifier columns, order matters (privacy)",
    )
    inspect.add_argument("--metadata", help="metadata JSON file (fair_compliance)")
    inspect.add_argument(
        "--dialect", default="dcat", choices=sorted(DIALECTS), help="metadata dialect"
    )
    inspect.add_argument("--k", type=float, default=1.5, help="Tukey fence multiplier")
    inspect.add_argument("--seed", type=int, default=42, help="seed for model training and sampling")
    inspect.add_argument("--permutations", type=int, default=128, help="Shapley permutation count")
    inspect.add_argument("--out", help="output directory (default: $AIDRIN_OUT or .)")
    inspect.add_argument("--charts", action="store_true", help="also render SVG charts")
    inspect.add_argument("--missing-tokens", dest="missing_tokens",
                         help="comma-separated missing-value tokens (default: ,na,n/a,null,nan)")
    inspect.add_argument("--delimiter", default=",", help="CSV delimiter")

    summarize_p = sub.add_parser("summarize", help="print per-column summary statistics")
    summarize_p.add_argument("input", help="path to the CSV file")
    summarize_p.add_argument("--format", choices=("text", "json"), default="text")
    summarize_p.add_argument("--missing-tokens", dest="missing_tokens")
    summarize_p.add_argument("--delimiter", default=",")

    faircheck_p = sub.add_parser("faircheck", help="score a metadata record's FAIR compliance")
    faircheck_p.add_argument("--metadata", required=True, help="metadata JSON file")
    faircheck_p.add_argument(
        "--dialect", default="dcat", choices=sorted(DIALECTS), help="metadata dialect"
    )
    faircheck_p.add_argument("--charts", action="store_true", help="also render the pie chart")
    faircheck_p.add_argument("--out", help="output directory (default: $AIDRIN_OUT or .)")
    return parser


def _csv_options(args) -> CsvOptions:
    tokens = _split_csv_list(args.missing_tokens) if args.missing_tokens is not None else None
    if tokens is not None:
        return CsvOptions(delimiter=args.delimiter, missing_tokens=tokens)
    return CsvOptions(delimiter=args.delimiter)


def _out_dir(args) -> Path:
    out = args.out or os.environ.get("AIDRIN_OUT") or "."
    path = Path(out)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _cmd_inspect(args) -> int:
    try:
        ds = load_csv(args.input, _csv_options(args))
    except DatasetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    params = SuiteParams(
        sensitive=args.sensitive,
        target=args.target,
        features=_split_csv_list(args.features) if args.features else None,
        class_column=args.class_column,
        quasi_identifiers=(
            _split_csv_list(args.quasi_identifiers) if args.quasi_identifiers else None
        ),
        metadata_path=args.metadata,
        metadata_dialect=args.dialect,
        k=args.k,
        seed=args.seed,
        permutations=args.permutations,
    )
    try:
        metrics, _ = expand_selection(
            ["all"] if args.metrics.strip() == "all" else list(_split_csv_list(args.metrics)),
            params,
        )
    except DatasetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    if args.metrics.strip() != "all":
        for metric in metrics:
            lacking = missing_requirements(metric, params)
            if lacking:
                print(
                    f"warning: metric {metric!r} needs {', '.join(lacking)}",
                    file=sys.stderr,
                )

    report = run_suite(
        ds, None if args.metrics.strip() == "all" else metrics, params
    )

    out = _out_dir(args)
    report_path = out / "report.json"
    report_path.write_text(to_json(report), encoding="utf-8")
    (out / "run_meta.json").write_text(run_meta_json(report), encoding="utf-8")
    written = [report_path.name, "run_meta.json"]
    if args.charts:
        for filename, spec in suite_charts(ds, report, params):
            render_svg(spec, out / filename)
            written.append(filename)

    print(f"report written to {report_path}")
    if len(written) > 2:
        print(f"{len(written) - 2} charts written to {out}")
    for w in report.warnings:
        print(f"warning: {w}", file=sys.stderr)
    return EXIT_WARNINGS if report.warnings else EXIT_OK


def _format_count(value) -> str:
    if value is None:
        return ""
    return f"{value:.4g}" if isinstance(value, float) else str(value)


def _cmd_summarize(args) -> int:
    try:
        ds = load_csv(args.input, _csv_options(args))
    except DatasetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    s = summarize(ds)
    if args.format == "json":
        payload = {"dataset": s.dataset, **summary_payload(ds)}
        print(json.dumps(payload, sort_keys=True, indent=2))
        return EXIT_OK
    print(f"{s.dataset}: {s.rows} rows × {s.columns} columns "
          f"({s.numeric_count} numeric, {s.categorical_count} categorical)")
    header = f"{'column':<24} {'kind':<12} {'present':>8} {'missing':>8}  detail"
    print(header)
    print("-" * len(header))
    for c in s.per_column:
        if c.mean is not None:
            detail = (f"mean={c.mean:.4g} std={c.std:.4g} "
                      f"min={c.minimum:.4g} median={c.median:.4g} max={c.maximum:.4g}")
        elif c.distinct is not None:
            top = ", ".join(f"{label} ({count})" for label, count in (c.top_values or ())[:3])
            detail = f"{c.distinct} levels: {top}"
        else:
            detail = ""
        print(f"{c.name:<24} {c.kind.value:<12} {c.non_missing:>8} {c.missing:>8}  {detail}")
    return EXIT_OK


def _cmd_faircheck(args) -> int:
    try:
        catalog = parse_metadata(args.metadata, args.dialect)
    except MetadataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    score = fair_score(catalog)
    for principle in ("findable", "accessible", "interoperable", "reusable"):
        done, total = score.per_principle[principle]
        missing = score.missing_elements[principle]
        suffix = f"  (missing: {', '.join(missing)})" if missing else ""
        print(f"{principle.capitalize()}: {done}/{total}{suffix}")
    if score.other_keys:
        print(f"Other keys: {', '.join(score.other_keys)}")
    print(f"score: {score.score_percent:.1f}%")
    if args.charts:
        path = _out_dir(args) / "fair_compliance_overall.svg"
        pie = fair_compliance_pie(score.per_principle, len(score.other_keys), score.dialect)
        render_svg(pie, path)
        print(f"chart written to {path}")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    handlers = {
        "inspect": _cmd_inspect,
        "summarize": _cmd_summarize,
        "faircheck": _cmd_faircheck,
    }
    try:
        return handlers[args.command](args)
    except (DatasetError, MetadataError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    sys.exit(main())

"""Readiness: quantify how ready a tabular dataset is for model training.

The library measures data quality (completeness, outliers, duplicates),
feature association (Pearson, uncertainty coefficient), group fairness and
class balance, re-identification risk, model-based feature relevance with
Shapley attribution, and FAIR metadata compliance, then bundles everything
into a canonical JSON report with optional SVG charts.
"""

from .charts import ChartSpec, Series, pie_angles, render_svg, render_svg_string
from .correlation import CorrelationMatrix, pearson_matrix, theils_u, theils_u_matrix
from .dataset import (
    Column,
    CsvOptions,
    Dataset,
    DatasetError,
    ValueKind,
    infer_kind,
    load_csv,
    select_columns,
    write_csv,
)
from .faircheck import (
    DIALECTS,
    FairScore,
    MetadataCatalog,
    MetadataError,
    catalog_from_dict,
    fair_score,
    parse_metadata,
)
from .fairness import (
    GroupDistribution,
    ImbalanceResult,
    StatisticalRateResult,
    TsdResult,
    imbalance_degree,
    representation,
    statistical_rate,
    tsd,
)
from .forest import EnsembleConfig, EnsembleModel, train_forest
from .importance import (
    PreprocessPlan,
    ShapleyConfig,
    ShapleyResult,
    preprocess,
    relevance_scores,
    shapley_exact,
    shapley_mc,
    train_ensemble,
)
from .privacy import MarkovRiskModel, RiskResult, fit_markov, risk_scores
from .quality import (
    CompletenessResult,
    DuplicateResult,
    OutlierResult,
    completeness,
    duplicates,
    outliers,
)
from .report import (
    MetricReport,
    SuiteParams,
    run_meta_json,
    run_suite,
    suite_charts,
    to_json,
)
from .summary import ColumnSummary, DatasetSummary, quantile, summarize

__version__ = "0.1.0"

__all__ = [
    "ChartSpec",
    "Column",
    "ColumnSummary",
    "CompletenessResult",
    "CorrelationMatrix",
    "CsvOptions",
    "Dataset",
    "DatasetError",
    "DatasetSummary",
    "DIALECTS",
    "DuplicateResult",
    "EnsembleConfig",
    "EnsembleModel",
    "FairScore",
    "GroupDistribution",
    "ImbalanceResult",
    "MarkovRiskModel",
    "MetadataCatalog",
    "MetadataError",
    "MetricReport",
    "OutlierResult",
    "PreprocessPlan",
    "RiskResult",
    "Series",
    "ShapleyConfig",
    "ShapleyResult",
    "StatisticalRateResult",
    "SuiteParams",
    "TsdResult",
    "ValueKind",
    "catalog_from_dict",
    "completeness",
    "duplicates",
    "fair_score",
    "fit_markov",
    "imbalance_degree",
    "infer_kind",
    "load_csv",
    "outliers",
    "parse_metadata",
    "pearson_matrix",
    "pie_angles",
    "preprocess",
    "quantile",
    "relevance_scores",
    "render_svg",
    "render_svg_string",
    "representation",
    "risk_scores",
    "run_meta_json",
    "run_suite",
    "select_columns",
    "shapley_exact",
    "shapley_mc",
    "statistical_rate",
    "suite_charts",
    "summarize",
    "theils_u",
    "theils_u_matrix",
    "to_json",
    "train_ensemble",
    "train_forest",
    "tsd",
    "write_csv",
]

"""End-to-end acceptance checks.

Each test prints one [PASS]/[FAIL] line with the measured values so a
full run reads as a checklist.  Tolerances are pinned; the fuzz loops use
fixed seeds so every run sees the same draws.
"""

import math
import random
import time

import numpy as np

from readiness.cli import main
from readiness.correlation import theils_u
from readiness.dataset import Column, Dataset
from readiness.faircheck import DIALECTS, catalog_from_dict, fair_score
from readiness.fairness import imbalance_degree, representation, tsd
from readiness.importance import ShapleyConfig, shapley_exact, shapley_mc
from readiness.privacy import fit_markov, risk_scores
from readiness.quality import completeness, duplicates, outliers
from readiness.report import SuiteParams, run_suite
from readiness.sample_data import sensor_readings_dataset


def check(capsys, num, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {num}: {detail}"
    with capsys.disabled():
        print(line)
    assert ok, line


def test_criterion_01_completeness(sgc, capsys):
    t0 = time.perf_counter()
    result = completeness(sgc)
    elapsed = time.perf_counter() - t0
    per = result.per_column
    saving = per["Saving accounts"]
    checking = per["Checking account"]
    others_full = all(
        v == 1.0
        for name, v in per.items()
        if name not in ("Saving accounts", "Checking account")
    )
    ok = (
        0.80 <= saving <= 0.83
        and 0.59 <= checking <= 0.62
        and others_full
        and elapsed < 1.0
    )
    check(
        capsys, 1, ok,
        f"completeness saving={saving:.3f} checking={checking:.3f} "
        f"others_full={others_full} runtime={elapsed:.3f}s",
    )


def test_criterion_02_duplicates(sgc, capsys):
    score = duplicates(sgc).score
    check(capsys, 2, score == 0.0, f"duplicate score={score}")


def test_criterion_03_class_proportions(sgc, capsys):
    props = representation(sgc, "Purpose").proportions
    majority = max(props.values())
    minority = min(props.values())
    ok = abs(majority - 0.337) <= 0.001 and abs(minority - 0.012) <= 0.001
    check(capsys, 3, ok, f"purpose majority={majority:.3f} minority={minority:.3f}")


def test_criterion_04_imbalance_degree(sgc, capsys):
    score = imbalance_degree(sgc, "Purpose").id_score
    ok = abs(score - 4.49) <= 0.02 and math.floor(score) == 4
    check(capsys, 4, ok, f"imbalance degree={score:.4f} floor={math.floor(score)}")


def test_criterion_05_reidentification_risk(sgc, capsys):
    model = fit_markov(sgc, ["Housing"])
    mean_risk = risk_scores(model, sgc).mean_risk
    ok = abs(mean_risk - 0.45) <= 0.01
    check(capsys, 5, ok, f"housing mean risk={mean_risk:.4f}")


def test_criterion_06_outliers(sgc, capsys):
    per = outliers(sgc).per_column
    high = {name: v for name, v in per.items() if not v < 0.15}
    ok = len(high) == 1 and all(abs(v - 0.35) <= 0.03 for v in high.values())
    check(
        capsys, 6, ok,
        "outlier fractions "
        + " ".join(f"{n}={v:.3f}" for n, v in sorted(per.items())),
    )


def test_criterion_07_runtime_budgets(sgc, capsys):
    eight = (
        "completeness", "outliers", "duplicates", "correlations",
        "fairness", "class_imbalance", "privacy", "feature_relevance",
    )
    params = SuiteParams(
        sensitive="Sex",
        target="Risk",
        features=tuple(c.name for c in sgc.columns if c.name != "Risk"),
        class_column="Purpose",
        quasi_identifiers=("Housing",),
        seed=42,
    )
    t0 = time.perf_counter()
    report = run_suite(sgc, eight, params)
    small_elapsed = time.perf_counter() - t0
    small_complete = {
        "completeness", "outliers", "duplicates", "pearson", "theils_u",
        "representation", "statistical_rate", "tsd", "imbalance",
        "privacy_risk", "feature_importance",
    } <= set(report.results)

    big = sensor_readings_dataset(rows=1_500_000, seed=3)
    big_params = SuiteParams(
        sensitive="site",
        target="status",
        features=tuple(c.name for c in big.columns if c.name != "status"),
        class_column="machine_state",
        seed=42,
    )
    minus_privacy = (
        "completeness", "outliers", "duplicates", "correlations",
        "fairness", "class_imbalance", "feature_relevance",
    )
    t0 = time.perf_counter()
    big_report = run_suite(big, minus_privacy, big_params)
    big_elapsed = time.perf_counter() - t0
    big_complete = "feature_importance" in big_report.results

    ok = small_complete and small_elapsed < 5.0 and big_complete and big_elapsed < 60.0
    check(
        capsys, 7, ok,
        f"sgc suite {small_elapsed:.2f}s (<5s), "
        f"1.5M-row suite minus privacy {big_elapsed:.1f}s (<60s)",
    )


def _fuzz_model(rng, d):
    """A random small model that never reads one designated dummy column."""
    dummy = int(rng.integers(0, d))
    active = [j for j in range(d) if j != dummy]
    kind = int(rng.integers(0, 3))
    w = rng.normal(size=len(active)) + np.sign(rng.normal(size=len(active))) * 0.5
    b = float(rng.normal())
    if kind == 0:
        def f(m):
            return m[:, active] @ w + b
    elif kind == 1 and len(active) >= 2:
        a0, a1 = active[0], active[1]
        rest = active[2:]
        def f(m):
            out = m[:, a0] * m[:, a1] + b
            for j, wj in zip(rest, w[2:]):
                out = out + wj * m[:, j]
            return out
    else:
        def f(m):
            out = np.full(len(m), b)
            for j, wj in zip(active, w):
                out = out + wj * np.tanh(m[:, j])
            return out
    return f, dummy


def test_criterion_08_shapley_properties(capsys):
    rng = np.random.default_rng(2)
    trials = 50
    worst_eff = 0.0
    worst_ratio = 0.0
    worst_dummy = 0.0
    for _ in range(trials):
        d = int(rng.integers(2, 7))
        n = int(rng.integers(60, 160))
        x = rng.normal(size=(n, d))
        f, dummy = _fuzz_model(rng, d)
        cfg = ShapleyConfig(
            permutations=300, background_size=40, eval_rows=4,
            seed=int(rng.integers(0, 2**31)),
        )
        mc = shapley_mc(f, x, config=cfg)
        ex = shapley_exact(f, x, config=cfg)
        worst_eff = max(worst_eff, float(np.abs(ex.efficiency_residual).max()))
        # per-feature comparison: mean attribution difference over the
        # evaluated rows against the feature's standard error
        delta = np.abs((mc.phi - ex.phi).mean(axis=0))
        se_feat = mc.se.mean(axis=0)
        ratio = delta / np.where(se_feat > 0, se_feat, 1.0)
        worst_ratio = max(worst_ratio, float(ratio.max()))
        top = max(mc.per_feature.values())
        if top > 0:
            worst_dummy = max(
                worst_dummy, mc.per_feature[mc.feature_names[dummy]] / top
            )
    ok = worst_eff <= 1e-9 and worst_ratio <= 3.0 and worst_dummy <= 0.02
    check(
        capsys, 8, ok,
        f"{trials} fuzzed models: max efficiency residual={worst_eff:.2e}, "
        f"max |mc-exact|/se={worst_ratio:.2f} (<=3), "
        f"max dummy share={worst_dummy:.4f} (<=0.02)",
    )


def test_criterion_09_theils_u_properties(capsys):
    rng = np.random.default_rng(17)
    in_range = True
    for _ in range(1000):
        n = int(rng.integers(2, 80))
        x = rng.integers(0, rng.integers(2, 7), size=n).tolist()
        y = rng.integers(0, rng.integers(2, 7), size=n).tolist()
        u = theils_u(x, y)
        in_range = in_range and 0.0 <= u <= 1.0

    det_ok = True
    for _ in range(50):
        k = int(rng.integers(2, 6))
        y = rng.integers(0, k, size=int(rng.integers(k, 60))).tolist()
        table = {v: int(rng.integers(0, 3)) for v in range(k)}
        x = [table[v] for v in y]
        det_ok = det_ok and abs(theils_u(x, y) - 1.0) <= 1e-9

    ind_ok = True
    for _ in range(50):
        xs = [(v, int(rng.integers(1, 5))) for v in range(int(rng.integers(2, 5)))]
        ys = [(v, int(rng.integers(1, 5))) for v in range(int(rng.integers(2, 5)))]
        x, y = [], []
        for xv, xc in xs:
            for yv, yc in ys:
                x.extend([xv] * (xc * yc))
                y.extend([yv] * (xc * yc))
        ind_ok = ind_ok and abs(theils_u(x, y)) <= 1e-9

    ok = in_range and det_ok and ind_ok
    check(
        capsys, 9, ok,
        f"1000 pairs in [0,1]={in_range}, deterministic->1 within 1e-9={det_ok}, "
        f"independent->0 within 1e-9={ind_ok}",
    )


def test_criterion_10_tsd_oracle(capsys):
    rng = np.random.default_rng(23)
    agree = True
    for _ in range(100):
        n_groups = int(rng.integers(2, 5))
        n_targets = int(rng.integers(2, 4))
        g, y = [], []
        for gi in range(n_groups):
            for ti in range(n_targets):
                count = int(rng.integers(1, 8))
                g.extend([f"g{gi}"] * count)
                y.extend([f"t{ti}"] * count)
        ds = Dataset("f", (Column.categorical("g", g), Column.categorical("y", y)))
        result = tsd(ds, "g", "y")
        groups = sorted(set(g))
        for target, got in result.per_target.items():
            rates = []
            for gv in groups:
                rows = [i for i in range(len(g)) if g[i] == gv]
                rates.append(sum(1 for i in rows if y[i] == target) / len(rows))
            mu = sum(rates) / len(rates)
            oracle = math.sqrt(sum((r - mu) ** 2 for r in rates) / len(rates))
            agree = agree and abs(got - oracle) <= 1e-12

    # equal conditional rates must give exactly zero
    g = ["a"] * 4 + ["b"] * 8 + ["c"] * 2
    y = (["p", "p", "n", "n"] + ["p", "p", "n", "n"] * 2 + ["p", "n"])
    ds = Dataset("e", (Column.categorical("g", g), Column.categorical("y", y)))
    equal_zero = all(v == 0.0 for v in tsd(ds, "g", "y").per_target.values())

    check(
        capsys, 10, agree and equal_zero,
        f"100 fuzzed tables agree to 1e-12={agree}, equal-conditional exact 0={equal_zero}",
    )


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


def test_criterion_11_fair_scoring(capsys):
    full = fair_score(catalog_from_dict(FULL_DCAT, "dcat"))
    empty = fair_score(catalog_from_dict({}, "dcat"))
    totals_ok = all(
        {p: t for p, (_, t) in fair_score(catalog_from_dict({}, d)).per_principle.items()}
        == {"findable": 6, "accessible": 5, "interoperable": 3, "reusable": 4}
        for d in DIALECTS
    )
    shuffler = random.Random(12)
    keys = list(FULL_DCAT)
    monotone = True
    for _ in range(1000):
        order = keys[:]
        shuffler.shuffle(order)
        record = {}
        last = -1.0
        for key in order:
            record[key] = FULL_DCAT[key]
            score = fair_score(catalog_from_dict(record, "dcat")).score_percent
            monotone = monotone and score >= last
            last = score
    ok = (
        full.score_percent == 100.0
        and empty.score_percent == 0.0
        and totals_ok
        and monotone
    )
    check(
        capsys, 11, ok,
        f"full={full.score_percent}% empty={empty.score_percent}% "
        f"totals 6/5/3/4={totals_ok} monotone over 1000 sequences={monotone}",
    )


def test_criterion_12_byte_identical_reports(sgc_csv, tmp_path, capsys):
    dirs = (tmp_path / "run_a", tmp_path / "run_b")
    for out in dirs:
        code = main([
            "inspect", str(sgc_csv),
            "--metrics", "all",
            "--seed", "7",
            "--out", str(out),
        ])
        assert code in (0, 1)
    capsys.readouterr()
    a = (dirs[0] / "report.json").read_bytes()
    b = (dirs[1] / "report.json").read_bytes()
    check(capsys, 12, a == b, f"two inspect runs: {len(a)} bytes, identical={a == b}")

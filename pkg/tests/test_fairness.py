import math

import numpy as np
import pytest

from readiness.dataset import Column, Dataset, DatasetError
from readiness.fairness import (
    imbalance_degree,
    representation,
    statistical_rate,
    tsd,
)


def make(cols):
    return Dataset("t", tuple(cols))


# -------------------------------------------------------------- representation

def test_representation_oracle():
    ds = make([Column.categorical("g", ["a", "a", "a", "b"])])
    r = representation(ds, "g")
    assert r.proportions == {"a": 0.75, "b": 0.25}
    assert r.representation_rate == pytest.approx(1 / 3, abs=1e-12)
    

def test_representation_balanced_is_one():
    ds = make([Column.categorical("g", ["a", "b", "a", "b"])])
    assert representation(ds, "g").representation_rate == 1.0


def test_representation_single_group_warns():
    ds = make([Column.categorical("g", ["a", "a"])])
    r = representation(ds, "g")
    assert r.representation_rate == 1.0
    assert r.warnings


def test_representation_skips_missing():
    ds = make([Column.categorical("g", ["a", None, "b", "a"])])
    r = representation(ds, "g")
    assert r.proportions["a"] == pytest.approx(2 / 3)


def test_representation_rejects_numeric_column():
    ds = make([Column.numeric("g", [1.0, 2.0])])
    with pytest.raises(DatasetError, match="bin it"):
        representation(ds, "g")


def test_representation_all_missing_errors():
    ds = make([Column.categorical("g", [None, None])])
    with pytest.raises(DatasetError):
        representation(ds, "g")


# ------------------------------------------------------------ statistical rate

def test_statistical_rate_oracle():
    # P(y=pos | g=a) = 2/4 = 0.5 ; P(y=pos | g=b) = 1/4 = 0.25
    g = ["a"] * 4 + ["b"] * 4
    y = ["pos", "pos", "neg", "neg", "pos", "neg", "neg", "neg"]
    ds = make([Column.categorical("g", g), Column.categorical("y", y)])
    r = statistical_rate(ds, "g", "y")
    assert r.conditional["pos"]["a"] == 0.5
    assert r.conditional["pos"]["b"] == 0.25
    assert r.per_target_rate["pos"] == pytest.approx(0.5, abs=1e-12)
    assert r.per_target_rate["neg"] == pytest.approx(0.5 / 0.75, abs=1e-12)
    assert r.overall == pytest.approx(0.5, abs=1e-12)


def test_statistical_rate_equal_treatment_is_one():
    g = ["a", "a", "b", "b"]
    y = ["p", "n", "p", "n"]
    ds = make([Column.categorical("g", g), Column.categorical("y", y)])
    assert statistical_rate(ds, "g", "y").overall == pytest.approx(1.0)


def test_statistical_rate_zero_rate_group():
    g = ["a", "a", "b", "b"]
    y = ["p", "p", "n", "n"]
    ds = make([Column.categorical("g", g), Column.categorical("y", y)])
    r = statistical_rate(ds, "g", "y")
    assert r.overall == 0.0
    assert r.conditional["p"]["b"] == 0.0


def test_statistical_rate_pairwise_deletion():
    g = ["a", "a", "b", None, "b"]
    y = ["p", "n", "p", "p", None]
    ds = make([Column.categorical("g", g), Column.categorical("y", y)])
    r = statistical_rate(ds, "g", "y")
    # surviving pairs: (a,p) (a,n) (b,p)
    assert r.conditional["p"]["a"] == 0.5
    assert r.conditional["p"]["b"] == 1.0


def test_statistical_rate_same_column_errors():
    ds = make([Column.categorical("g", ["a", "b"])])
    with pytest.raises(DatasetError):
        statistical_rate(ds, "g", "g")


# ---------------------------------------------------------------------- tsd

def test_tsd_two_group_oracle():
    # P(pos|a)=0.6, P(pos|b)=0.4 -> population std = 0.1
    g = ["a"] * 5 + ["b"] * 5
    y = ["p", "p", "p", "n", "n", "p", "p", "n", "n", "n"]
    ds = make([Column.categorical("g", g), Column.categorical("y", y)])
    r = tsd(ds, "g", "y")
    assert r.per_target["p"] == pytest.approx(0.1, abs=1e-12)
    assert r.per_target["n"] == pytest.approx(0.1, abs=1e-12)


def test_tsd_three_group_oracle():
    # rates 0.2, 0.5, 0.8 -> mean 0.5, var = (0.09+0+0.09)/3 = 0.06
    g = ["a"] * 5 + ["b"] * 2 + ["c"] * 5
    y = ["p", "n", "n", "n", "n", "p", "n", "p", "p", "p", "p", "n"]
    ds = make([Column.categorical("g", g), Column.categorical("y", y)])
    assert tsd(ds, "g", "y").per_target["p"] == pytest.approx(
        math.sqrt(0.06), abs=1e-12
    )


def test_tsd_equal_rates_is_exactly_zero():
    g = ["a", "a", "b", "b", "c", "c"]
    y = ["p", "n", "p", "n", "p", "n"]
    ds = make([Column.categorical("g", g), Column.categorical("y", y)])
    r = tsd(ds, "g", "y")
    assert r.per_target["p"] == 0.0
    assert r.per_target["n"] == 0.0


def test_tsd_single_group_is_zero_with_warning():
    ds = make([
        Column.categorical("g", ["a", "a"]),
        Column.categorical("y", ["p", "n"]),
    ])
    r = tsd(ds, "g", "y")
    assert r.per_target["p"] == 0.0
    assert r.warnings


def test_tsd_matches_numpy_fuzz():
    rng = np.random.default_rng(44)
    for _ in range(60):
        n = int(rng.integers(6, 80))
        g = [f"g{v}" for v in rng.integers(0, rng.integers(2, 5), size=n)]
        y = [f"y{v}" for v in rng.integers(0, rng.integers(2, 4), size=n)]
        ds = make([Column.categorical("g", g), Column.categorical("y", y)])
        r = tsd(ds, "g", "y")
        groups = sorted(set(g))
        for target, got in r.per_target.items():
            rates = []
            for gv in groups:
                rows = [i for i in range(n) if g[i] == gv]
                rates.append(sum(1 for i in rows if y[i] == target) / len(rows))
            assert got == pytest.approx(float(np.std(rates)), abs=1e-12)


# ----------------------------------------------------------- imbalance degree

def test_imbalance_degree_oracle_two_class():
    ds = make([Column.categorical("c", ["x"] * 9 + ["y"])])
    r = imbalance_degree(ds, "c")
    # zeta=(0.1,0.9), e=(0.5,0.5), m=1; d(zeta,e)=sqrt(0.32), d(iota,e)=sqrt(0.5)
    expected = math.sqrt(0.32) / math.sqrt(0.5) + 0
    assert r.id_score == pytest.approx(expected, abs=1e-12)
    assert r.id_score == pytest.approx(0.8, abs=1e-12)
    assert r.minority_count == 1


def test_imbalance_degree_balanced_is_exact_zero():
    ds = make([Column.categorical("c", ["x", "y", "z"] * 4)])
    r = imbalance_degree(ds, "c")
    assert r.id_score == 0.0
    assert r.minority_count == 0


def test_imbalance_degree_floor_equals_minority_count_minus_one():
    rng = np.random.default_rng(77)
    for _ in range(80):
        k = int(rng.integers(2, 9))
        n = int(rng.integers(k, 200))
        labels = [f"c{v}" for v in rng.integers(0, k, size=n)]
        if len(set(labels)) < 2:
            continue
        ds = make([Column.categorical("c", labels)])
        r = imbalance_degree(ds, "c")
        kk = len(set(labels))
        if r.minority_count == 0:
            assert r.id_score == 0.0
        else:
            assert math.floor(r.id_score + 1e-9) == r.minority_count - 1
            assert r.id_score <= r.minority_count
        assert 0 <= r.minority_count < kk


def test_imbalance_degree_single_class_errors():
    ds = make([Column.categorical("c", ["x", "x"])])
    with pytest.raises(DatasetError, match="at least 2 classes"):
        imbalance_degree(ds, "c")


def test_imbalance_degree_rejects_numeric():
    ds = make([Column.numeric("c", [1, 2, 3])])
    with pytest.raises(DatasetError):
        imbalance_degree(ds, "c")

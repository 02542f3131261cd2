import numpy as np
import pytest

from readiness.dataset import Column, Dataset, DatasetError
from readiness.quality import completeness, duplicates, outliers


def numeric(name, values):
    return Column.numeric(name, values)


def categorical(name, values):
    return Column.categorical(name, values)


# ---------------------------------------------------------------- completeness

def test_completeness_oracle():
    ds = Dataset("t", (numeric("x", [1.0, None, 3.0]), categorical("y", ["a", "b", "c"])))
    r = completeness(ds)
    assert r.per_column["x"] == pytest.approx(2 / 3)
    assert r.per_column["y"] == 1.0
    assert r.overall == pytest.approx((2 / 3 + 1.0) / 2)


def test_completeness_after_dropping_missing_is_one():
    rng = np.random.default_rng(5)
    vals = rng.normal(size=50)
    vals[rng.random(50) < 0.3] = np.nan
    keep = ~np.isnan(vals)
    ds = Dataset("t", (numeric("x", vals[keep]),))
    assert completeness(ds).per_column["x"] == 1.0


def test_completeness_all_missing_column():
    ds = Dataset("t", (categorical("x", [None, None]),))
    assert completeness(ds).per_column["x"] == 0.0


# ------------------------------------------------------------------- outliers

def test_outlier_oracle():
    # sorted [1,2,3,4,100]: q1=2, q3=4, iqr=2, fences [-1, 7] -> only 100 is out
    ds = Dataset("t", (numeric("x", [1, 2, 3, 4, 100]),))
    r = outliers(ds)
    assert r.per_column["x"] == pytest.approx(0.2)
    assert r.fences["x"] == (-1.0, 7.0)
    assert r.overall == pytest.approx(0.2)


def test_fence_boundary_is_not_an_outlier():
    # fences [-1, 7]: the value 7 sits exactly on the fence
    ds = Dataset("t", (numeric("x", [1, 2, 3, 4, 7]),))
    assert outliers(ds).per_column["x"] == 0.0
    ds2 = Dataset("t", (numeric("x", [1, 2, 3, 4, 7.0000001]),))
    assert outliers(ds2).per_column["x"] == pytest.approx(0.2)


def test_constant_column_has_no_outliers():
    ds = Dataset("t", (numeric("x", [5.0] * 10),))
    assert outliers(ds).per_column["x"] == 0.0


def test_zero_iqr_flags_everything_off_the_quartiles():
    # q1 = q3 = 2 -> fences [2, 2]; both 0s and the 9 are outliers
    ds = Dataset("t", (numeric("x", [0, 2, 2, 2, 2, 2, 2, 2, 2, 9]),))
    assert outliers(ds).per_column["x"] == pytest.approx(0.2)


def test_outlier_affine_invariance():
    """Scaling by powers of two and shifting by integers keeps the fraction."""
    rng = np.random.default_rng(7)
    for _ in range(25):
        vals = rng.normal(size=rng.integers(8, 60))
        base = outliers(Dataset("t", (numeric("x", vals),))).per_column["x"]
        scale = 2.0 ** rng.integers(-3, 6)
        shift = float(rng.integers(-100, 100))
        moved = outliers(Dataset("t", (numeric("x", vals * scale + shift),)))
        assert moved.per_column["x"] == base


def test_outlier_k_widens_fences():
    vals = [1, 2, 3, 4, 9]
    narrow = outliers(Dataset("t", (numeric("x", vals),)), k=0.5).per_column["x"]
    wide = outliers(Dataset("t", (numeric("x", vals),)), k=3.0).per_column["x"]
    assert narrow >= wide


def test_outlier_errors_and_warnings():
    with pytest.raises(DatasetError, match="positive"):
        outliers(Dataset("t", (numeric("x", [1, 2, 3, 4]),)), k=0.0)
    with pytest.raises(DatasetError, match="numeric"):
        outliers(Dataset("t", (categorical("y", ["a", "b"]),)))
    short = Dataset("t", (numeric("x", [1, 2, 3, None]), numeric("y", [1, 2, 3, 4])))
    r = outliers(short)
    assert "x" not in r.per_column
    assert "y" in r.per_column
    assert any("outlier check skipped" in w for w in r.warnings)


def test_outliers_skip_missing_cells():
    ds = Dataset("t", (numeric("x", [1, 2, 3, 4, None, 100]),))
    assert outliers(ds).per_column["x"] == pytest.approx(0.2)


# ----------------------------------------------------------------- duplicates

def test_duplicates_oracle_single_column():
    ds = Dataset("t", (categorical("x", ["A", "B", "A", "C"]),))
    r = duplicates(ds)
    assert r.unique_row_count == 3
    assert r.duplicate_row_count == 1
    assert r.score == pytest.approx(0.25)


def test_duplicates_all_identical():
    for n in (2, 5, 17):
        ds = Dataset("t", (numeric("x", [3.0] * n), categorical("y", ["q"] * n)))
        assert duplicates(ds).score == pytest.approx(1 - 1 / n)


def test_duplicates_all_distinct_is_zero():
    ds = Dataset("t", (numeric("x", list(range(30))),))
    assert duplicates(ds).score == 0.0


def test_missing_cells_compare_equal():
    ds = Dataset(
        "t",
        (numeric("x", [1.0, None, None]), categorical("y", [None, "a", "a"])),
    )
    r = duplicates(ds)
    # rows 2 and 3 are (Missing, "a") twice
    assert r.unique_row_count == 2
    assert r.score == pytest.approx(1 / 3)


def test_duplicates_subset():
    ds = Dataset(
        "t",
        (categorical("x", ["a", "a", "b"]), numeric("y", [1.0, 2.0, 3.0])),
    )
    assert duplicates(ds).score == 0.0
    assert duplicates(ds, subset=["x"]).score == pytest.approx(1 / 3)
    with pytest.raises(DatasetError):
        duplicates(ds, subset=[])
    with pytest.raises(DatasetError, match="no column"):
        duplicates(ds, subset=["zzz"])


def test_duplicates_rows_must_match_on_every_cell():
    ds = Dataset(
        "t",
        (categorical("x", ["a", "a"]), numeric("y", [1.0, 2.0])),
    )
    assert duplicates(ds).score == 0.0

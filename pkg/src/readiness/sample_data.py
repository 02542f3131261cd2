"""Built-in datasets for demos, tests, and benchmarks.

``german_credit_dataset`` is a seeded synthetic replica of the well-known
public credit-screening table (1000 applicants, 10 columns).  Its
categorical columns reproduce the public marginal counts exactly, missing
cells included, so every distribution-level measure lands where it would
on the original; the numeric columns are fresh draws shaped to the
published summary statistics, and credit amounts are kept distinct so the
table contains no duplicate rows.

``sensor_readings_dataset`` is a wide machine-telemetry table of
configurable length used for throughput benchmarks; the ``status`` target
depends on a few of the sensors, giving relevance scoring something real
to find.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .dataset import Column, Dataset, ValueKind, write_csv

_NUM = ValueKind.NUMERIC
_CAT = ValueKind.CATEGORICAL

GERMAN_CREDIT_COLUMNS = (
    "Age", "Sex", "Job", "Housing", "Saving accounts",
    "Checking account", "Credit amount", "Duration", "Purpose", "Risk",
)

_SEX = (("male", 690), ("female", 310))
_JOB = ((2, 630), (1, 200), (3, 148), (0, 22))
_HOUSING = (("own", 713), ("rent", 179), ("free", 108))
_SAVING = (("little", 603), ("moderate", 103), ("quite rich", 63), ("rich", 48), (None, 183))
_CHECKING = (("little", 274), ("moderate", 269), ("rich", 63), (None, 394))
_PURPOSE = (
    ("car", 337), ("radio/TV", 280), ("furniture/equipment", 181), ("business", 97),
    ("education", 59), ("repairs", 22), ("domestic appliances", 12), ("vacation/others", 12),
)
_RISK = (("good", 700), ("bad", 300))
_DURATION = ((6, 90), (12, 210), (18, 150), (24, 220), (30, 90),
             (36, 120), (42, 50), (48, 40), (54, 10), (60, 15), (72, 5))


def _spread(pairs, rng: np.random.Generator) -> list:
    out = []
    for value, count in pairs:
        out.extend([value] * count)
    order = rng.permutation(len(out))
    return [out[i] for i in order]


def _distinct_ints(values: np.ndarray) -> np.ndarray:
    """Bump duplicates upward so every value is a distinct integer."""
    s = np.sort(np.round(values).astype(np.int64))
    for i in range(1, len(s)):
        if s[i] <= s[i - 1]:
            s[i] = s[i - 1] + 1
    return s


def german_credit_dataset(seed: int = 7) -> Dataset:
    """The 1000-row, 10-column synthetic credit screening table."""
    root = np.random.SeedSequence(seed)
    streams = [np.random.default_rng(s) for s in root.spawn(10)]

    age = np.clip(np.round(streams[0].normal(35.5, 11.0, 1000)), 19, 75)
    sex = _spread(_SEX, streams[1])
    job = np.array(_spread(_JOB, streams[2]), dtype=np.float64)
    housing = _spread(_HOUSING, streams[3])
    saving = _spread(_SAVING, streams[4])
    checking = _spread(_CHECKING, streams[5])
    amounts = _distinct_ints(
        np.clip(streams[6].lognormal(7.75, 0.8, 1000), 250, 18424)
    )
    credit = amounts[streams[6].permutation(1000)].astype(np.float64)
    duration = np.array(_spread(_DURATION, streams[7]), dtype=np.float64)
    purpose = _spread(_PURPOSE, streams[8])
    risk = _spread(_RISK, streams[9])

    return Dataset(
        "german_credit",
        (
            Column.numeric("Age", age),
            Column.categorical("Sex", sex),
            Column.numeric("Job", job),
            Column.categorical("Housing", housing),
            Column.categorical("Saving accounts", saving),
            Column.categorical("Checking account", checking),
            Column.numeric("Credit amount", credit),
            Column.numeric("Duration", duration),
            Column.categorical("Purpose", purpose),
            Column.categorical("Risk", risk),
        ),
    )


def write_german_credit_csv(path: str | Path, seed: int = 7) -> Path:
    """Materialize the credit table as a CSV file; returns the path."""
    path = Path(path)
    write_csv(german_credit_dataset(seed), path)
    return path


def sensor_readings_dataset(rows: int = 1_500_000, seed: int = 3) -> Dataset:
    """A 17-column machine telemetry table for throughput benchmarks."""
    root = np.random.SeedSequence(seed)
    rng = np.random.default_rng(root)

    pressure_a = rng.normal(4.2, 0.9, rows)
    pressure_b = pressure_a * 0.6 + rng.normal(1.5, 0.4, rows)
    temperature_a = rng.normal(61.0, 7.5, rows)
    temperature_b = rng.normal(48.0, 5.0, rows)
    flow_rate = rng.lognormal(2.1, 0.35, rows)
    vibration_x = np.abs(rng.normal(0.8, 0.5, rows))
    vibration_y = np.abs(rng.normal(0.6, 0.4, rows))
    current_draw = rng.normal(11.5, 2.2, rows)
    voltage = rng.normal(230.0, 3.0, rows)
    rpm = rng.normal(1450.0, 120.0, rows)
    torque = rng.normal(85.0, 14.0, rows)
    oil_level = rng.uniform(0.2, 1.0, rows)
    runtime_hours = rng.uniform(0.0, 40_000.0, rows)

    humidity = rng.normal(45.0, 8.0, rows)
    humidity[rng.random(rows) < 0.02] = np.nan  # sensor dropouts

    site = np.array(["A", "B", "C", "D"], dtype=object)[rng.integers(0, 4, rows)]
    state_draw = rng.random(rows)
    machine_state = np.where(
        state_draw < 0.72, "run", np.where(state_draw < 0.94, "idle", "fault")
    ).astype(object)

    # degradation depends on a handful of sensors plus noise
    latent = (
        0.9 * (pressure_a - 4.2)
        + 1.6 * (vibration_x - 0.8)
        + 0.05 * (temperature_a - 61.0)
        + (machine_state == "fault") * 1.2
        + rng.normal(0.0, 0.6, rows)
    )
    status = np.where(latent > 0.55, "degraded", "healthy").astype(object)

    return Dataset(
        "sensor_readings",
        (
            Column("pressure_a", _NUM, pressure_a),
            Column("pressure_b", _NUM, pressure_b),
            Column("temperature_a", _NUM, temperature_a),
            Column("temperature_b", _NUM, temperature_b),
            Column("flow_rate", _NUM, flow_rate),
            Column("vibration_x", _NUM, vibration_x),
            Column("vibration_y", _NUM, vibration_y),
            Column("current_draw", _NUM, current_draw),
            Column("voltage", _NUM, voltage),
            Column("rpm", _NUM, rpm),
            Column("torque", _NUM, torque),
            Column("oil_level", _NUM, oil_level),
            Column("runtime_hours", _NUM, runtime_hours),
            Column("humidity", _NUM, humidity),
            Column("site", _CAT, site),
            Column("machine_state", _CAT, machine_state),
            Column("status", _CAT, status),
        ),
    )

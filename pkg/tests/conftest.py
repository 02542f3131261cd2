import pytest

from readiness.sample_data import german_credit_dataset, write_german_credit_csv


@pytest.fixture(scope="session")
def sgc():
    """The 1000-row credit screening table used across the suite."""
    return german_credit_dataset()


@pytest.fixture(scope="session")
def sgc_csv(tmp_path_factory):
    path = tmp_path_factory.mktemp("data") / "german_credit.csv"
    write_german_credit_csv(path)
    return path

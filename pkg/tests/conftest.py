from pathlib import Path

import pytest

from discern.scheme import load_scheme

FIXTURES = Path(__file__).parent / "fixtures"
GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture(scope="session")
def s1():
    return load_scheme(str(FIXTURES / "s1.json"))


@pytest.fixture(scope="session")
def s2():
    return load_scheme(str(FIXTURES / "s2.json"))


@pytest.fixture(scope="session")
def s3():
    return load_scheme(str(FIXTURES / "s3.json"))


@pytest.fixture()
def fixtures_dir():
    return FIXTURES


@pytest.fixture()
def golden_dir():
    return GOLDEN

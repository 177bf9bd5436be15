import pytest

from fincat.fixtures import standard_fixtures


@pytest.fixture(scope="session")
def fixtures():
    return standard_fixtures()

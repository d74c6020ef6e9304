import pytest

from soficovers import load_fixture


@pytest.fixture(scope="session")
def example_a():
    return load_fixture("example_a")


@pytest.fixture(scope="session")
def example_b():
    return load_fixture("example_b")


@pytest.fixture(scope="session")
def even_shift():
    return load_fixture("even_shift")

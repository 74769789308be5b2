import pytest

from tinylca import load_data_dir


@pytest.fixture(scope="session")
def store():
    return load_data_dir()


@pytest.fixture(scope="session")
def high_cost(store):
    return store.profile("high-cost")


@pytest.fixture(scope="session")
def low_cost(store):
    return store.profile("low-cost")

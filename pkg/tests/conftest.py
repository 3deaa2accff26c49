import pytest

from covol.numerics import Context


@pytest.fixture(scope="session")
def ctx():
    """Shared default-precision context (shares analytic caches across tests)."""
    return Context(128)


@pytest.fixture(scope="session")
def ctx256():
    return Context(256)

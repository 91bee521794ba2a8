import pytest

from stm.rootdata import build_root_system


@pytest.fixture(scope="session")
def rs():
    cache = {}

    def get(t, n):
        if (t, n) not in cache:
            cache[(t, n)] = build_root_system(t, n)
        return cache[(t, n)]

    return get

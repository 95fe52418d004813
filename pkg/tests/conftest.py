import pytest

from meanders.meander import build_irreducible_table


@pytest.fixture(scope="session")
def cache_dir(tmp_path_factory):
    return tmp_path_factory.mktemp("meander-cache")


@pytest.fixture(scope="session")
def table_r3(cache_dir):
    return build_irreducible_table(3, cache_dir=cache_dir)


@pytest.fixture(scope="session")
def table_r4(cache_dir):
    return build_irreducible_table(4, cache_dir=cache_dir)

from __future__ import annotations

import pytest

from dynkintrans.catalog import SINGULARITY_CLASSES, build_catalog, clear_memory_cache
from dynkintrans.graphs import A, BC1, D, DynkinGraph, E, G1, G2


def single_component_family(max_vertices: int) -> list[DynkinGraph]:
    """Every single-component graph with at most the given vertex count."""
    comps = [A(k) for k in range(1, max_vertices + 1)]
    comps += [D(l) for l in range(4, max_vertices + 1)]
    comps += [E(n) for n in (6, 7, 8) if n <= max_vertices]
    comps += [G2, G1, BC1]
    return [DynkinGraph((c,)) for c in comps]


@pytest.fixture(scope="session")
def family12() -> list[DynkinGraph]:
    return single_component_family(12)


@pytest.fixture(scope="session")
def catalog_cache_dir(tmp_path_factory):
    return tmp_path_factory.mktemp("catalogs")


BUILD_STATS: dict[str, float] = {}


@pytest.fixture(scope="session")
def all_catalogs(catalog_cache_dir):
    """All nine catalogs, computed once per test session."""
    import time

    start = time.monotonic()
    catalogs = {
        symbol: build_catalog(symbol, cache=True, cache_dir=catalog_cache_dir)
        for symbol in SINGULARITY_CLASSES
    }
    BUILD_STATS["nine_class_seconds"] = time.monotonic() - start
    return catalogs


@pytest.fixture()
def fresh_memory_cache():
    clear_memory_cache()
    yield
    clear_memory_cache()

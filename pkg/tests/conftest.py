import json
import pathlib

import pytest

from wildrep import FieldSpec, SeededRng, build_kernel_bundle

DATA_DIR = pathlib.Path(__file__).parent / "data"
GOLDEN_DIR = pathlib.Path(__file__).parent / "golden"


@pytest.fixture(scope="session")
def fp():
    return FieldSpec.prime()


@pytest.fixture(scope="session")
def vectors():
    with open(DATA_DIR / "vectors.json") as fh:
        return json.load(fh)


_bundle_cache: dict = {}


def cached_bundle(n, a, seed=0):
    """One accepted bundle per (n, a, seed), shared across test modules.

    Sampling is deterministic, so caching only saves time; every test
    sees the identical object it would have built itself.
    """
    key = (n, a, seed)
    if key not in _bundle_cache:
        _bundle_cache[key] = build_kernel_bundle(
            n, a, SeededRng(seed), FieldSpec.prime()
        )
    return _bundle_cache[key]

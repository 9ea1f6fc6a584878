from __future__ import annotations

import time
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from cogalois import catalog
from cogalois.galois import galois_data
from cogalois.linalg import GF, QQ, LinearMap

settings.register_profile(
    "repo",
    max_examples=25,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")

SESSION = {}


def pytest_sessionstart(session):
    SESSION["start"] = time.perf_counter()


def pytest_collection_modifyitems(items):
    # acceptance last, so its runtime check sees the whole session
    items.sort(key=lambda item: item.module.__name__ == "test_acceptance")

FIELDS = [QQ, GF(2), GF(3), GF(7)]


def small_scalars(field):
    if field.p == 0:
        return st.fractions(min_value=-3, max_value=3, max_denominator=3)
    return st.integers(0, field.p - 1).map(field)


@st.composite
def matrices(draw, field=QQ, max_dim=4, dom=None, cod=None, density=0.5):
    """Random small LinearMap over ``field``."""
    n = dom if dom is not None else draw(st.integers(0, max_dim))
    m = cod if cod is not None else draw(st.integers(0, max_dim))
    cols = []
    for _ in range(n):
        col = {}
        for i in range(m):
            if draw(st.floats(0, 1)) < density:
                col[i] = field(draw(small_scalars(field)))
        cols.append(col)
    return LinearMap(field, n, m, cols)


def extension_data(ext):
    return galois_data(ext.A, ext.C, ext.coaction)


@pytest.fixture(scope="session")
def kz2():
    return extension_data(catalog.regular_extension(catalog.group_algebra(2)))


@pytest.fixture(scope="session")
def kz3():
    return extension_data(catalog.regular_extension(catalog.group_algebra(3)))


@pytest.fixture(scope="session")
def h4():
    return extension_data(catalog.regular_extension(catalog.sweedler_h4()))


@pytest.fixture(scope="session")
def kz4_over_kz2():
    return extension_data(catalog.quotient_group_extension(4, 2))


@pytest.fixture(scope="session")
def nonexample():
    return extension_data(catalog.trivial_coaction_extension())


@pytest.fixture(scope="session")
def galois_family():
    return {name: extension_data(ext) for name, ext in catalog.galois_examples().items()}


def frac(x):
    return Fraction(x)


def perturb(f: LinearMap, row: int, col: int, delta=1) -> LinearMap:
    """Copy of ``f`` with ``delta`` added at (row, col)."""
    cols = [dict(c) for c in f.cols]
    cols[col][row] = cols[col].get(row, f.field.zero) + f.field(delta)
    return LinearMap(f.field, f.domain, f.codomain, cols)

from __future__ import annotations

import os

import numpy as np
import pytest
from hypothesis import settings

from cubiccensus.gf import make_field

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

# criterion number -> (passed, detail); filled by test_acceptance
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture(scope="session")
def f2():
    return make_field(2)


@pytest.fixture(scope="session")
def f3():
    return make_field(3)


@pytest.fixture(scope="session")
def f4():
    return make_field(2, 2)


@pytest.fixture(scope="session")
def f5():
    return make_field(5)


@pytest.fixture(scope="session")
def f7():
    return make_field(7)


@pytest.fixture(scope="session")
def bitmap2(f2):
    from cubiccensus.smoothness import sieve_singular

    return sieve_singular(f2)


@pytest.fixture(scope="session")
def census2(f2):
    from cubiccensus.census import run_census

    return run_census(f2, mode="crosscheck")


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def random_invertible(field, rng, n=4):
    from cubiccensus.linalg import rank

    while True:
        g = rng.integers(0, field.q, size=(n, n))
        if rank(field, g) == n:
            return g


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")

from __future__ import annotations

import pytest

from astower.census import genus_run, rational_run
from astower.gf import FieldCtx


@pytest.fixture(scope="session")
def F2():
    return FieldCtx(1)


@pytest.fixture(scope="session")
def F4():
    return FieldCtx(2)


@pytest.fixture(scope="session")
def F8():
    return FieldCtx(3)


@pytest.fixture(scope="session")
def runs():
    """Expensive tree expansions, computed once per session and shared."""
    cache = {}

    def get(kind, s, depth, modulus=None):
        key = (kind, s, depth, modulus)
        if key not in cache:
            if kind == "rational":
                cache[key] = rational_run(FieldCtx(s, modulus), depth)
            else:
                cache[key] = genus_run(s, depth, modulus)
        return cache[key]

    return get


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])

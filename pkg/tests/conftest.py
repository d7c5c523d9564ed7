from functools import lru_cache

import pytest

from knightpaths.geometry import BoardSpec
from knightpaths.search import SearchConfig, enumerate_cycles_mitm, enumerate_cycles_oracle

ACCEPTANCE_LINES = []


@lru_cache(maxsize=None)
def mitm_cycles(n, size=None):
    return frozenset(enumerate_cycles_mitm(SearchConfig(n, BoardSpec(size or n + 1))))


@lru_cache(maxsize=None)
def oracle_cycles(n, size=None):
    return frozenset(enumerate_cycles_oracle(SearchConfig(n, BoardSpec(size or n + 1))))


@pytest.fixture(scope="session")
def cycles():
    return mitm_cycles


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item._acceptance_outcome = rep.outcome

import functools

import pytest
from hypothesis import HealthCheck, settings

from polarcycle.problem import bundled, load_problem

settings.register_profile(
    "polarcycle",
    max_examples=200,
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("polarcycle")

BUNDLED = ["example2_6", "example3_5", "rem_main2", "cusp", "two_planes"]


@functools.lru_cache(maxsize=None)
def problem(name: str):
    """Shared spec per bundled problem so expensive results are cached across tests."""
    return load_problem(bundled(name))


@pytest.fixture
def spec():
    return problem


# acceptance reporting

_outcomes: dict = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    crit = item.get_closest_marker("criterion")
    if crit is None:
        return
    n = crit.args[0]
    failed = rep.failed or (rep.when == "call" and rep.skipped)
    prev = _outcomes.get(n, True)
    _outcomes[n] = prev and not failed


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_outcomes):
        terminalreporter.write_line(f"criterion {n}: {'PASS' if _outcomes[n] else 'FAIL'}")

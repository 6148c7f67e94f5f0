import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(scope="session")
def catalog():
    from nefwci.catalog import load_catalog

    return load_catalog()


@pytest.fixture(scope="session")
def period_reports(catalog):
    """Full verification with periods up to K = 6, shared by the catalog tests."""
    import time

    from nefwci.catalog import verify_entry

    start = time.perf_counter()
    reports = {e.key: verify_entry(e, 6) for e in catalog}
    return reports, time.perf_counter() - start


# -- acceptance summary ------------------------------------------------------

_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number n")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or report.when == "teardown":
        return
    n = mark.args[0]
    if report.failed or n not in _CRITERIA:
        if report.when == "call" or report.failed:
            detail = ""
            if report.failed:
                crash = getattr(report.longrepr, "reprcrash", None)
                text = crash.message if crash else str(report.longrepr)
                detail = text.strip().splitlines()[0][:200]
            _CRITERIA[n] = ("FAIL" if report.failed else "PASS", item.name, detail)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        status, name, detail = _CRITERIA[n]
        line = f"criterion {n}: {status}  ({name})"
        if detail:
            line += f"  {detail}"
        terminalreporter.write_line(line)

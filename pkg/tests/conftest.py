import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

_criteria = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when != "call" and not rep.failed:
        return
    number, title = mark.args
    prev = _criteria.get(number)
    failed = rep.failed or (prev is not None and prev[1] == "FAIL")
    secs = rep.duration + (prev[2] if prev else 0.0)
    _criteria[number] = (title, "FAIL" if failed else "PASS", secs)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, status, secs = _criteria[number]
        terminalreporter.write_line(f"criterion {number:>2}: {status}  {title}  ({secs:.2f}s)")

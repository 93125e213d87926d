import pytest

_criteria: dict[int, tuple[str, str, float]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): an acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    failed = report.failed or (report.when == "setup" and report.skipped)
    if report.when == "call" or failed:
        prev = _criteria.get(number)
        status = "FAIL" if failed or (prev and prev[1] == "FAIL") else "PASS"
        _criteria[number] = (title, status, report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, status, duration = _criteria[number]
        terminalreporter.write_line(f"criterion {number}: {status}  {title}  ({duration:.2f} s)")

import pytest

_RESULTS: dict[int, tuple[str, list[str]]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion check")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or (report.when != "call" and report.passed):
        return
    number, title = mark.args
    _, failures = _RESULTS.setdefault(number, (title, []))
    if not report.passed:
        failures.append(item.name)


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_RESULTS):
        title, failures = _RESULTS[number]
        status = "FAIL" if failures else "PASS"
        extra = f" ({', '.join(failures)})" if failures else ""
        terminalreporter.write_line(f"{status} criterion {number}: {title}{extra}")

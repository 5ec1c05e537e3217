import pytest

_outcomes: dict[int, list] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    if report.when in ("setup", "call"):
        num, title = mark.args
        entry = _outcomes.setdefault(num, [title, True, 0.0])
        entry[1] = entry[1] and report.outcome == "passed"
        entry[2] += report.duration  # setup time covers searches run in fixtures


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_outcomes):
        title, ok, secs = _outcomes[num]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {num:2d}: {title} ({secs:.1f}s)")

import pytest

_criteria: list[str] = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label, limit): acceptance criterion with a runtime limit in seconds")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or rep.when != "call":
        return
    label = marker.args[0]
    limit = marker.kwargs.get("limit")
    budget = f", limit {limit:g} s" if limit is not None else ""
    _criteria.append(f"{rep.outcome.upper():7} {label} [{rep.duration:.2f} s{budget}]")


def pytest_terminal_summary(terminalreporter):
    if _criteria:
        terminalreporter.section("acceptance criteria")
        for line in _criteria:
            terminalreporter.write_line(line)

import pytest

ACCEPTANCE_FILE = "test_acceptance.py"
_outcomes = {}
_extra_lines = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by the test")


def pytest_collection_modifyitems(items):
    for item in items:
        marker = item.get_closest_marker("criterion")
        if marker is not None:
            item.user_properties.append(("criterion", marker.args))


def pytest_runtest_logreport(report):
    props = dict(report.user_properties)
    if "criterion" not in props:
        return
    key = props["criterion"]
    failed = report.failed or (report.when == "call" and not report.passed)
    if report.when == "call" or failed:
        _outcomes[key] = "FAIL" if failed or _outcomes.get(key) == "FAIL" else "PASS"


@pytest.fixture
def acceptance_log():
    """Lines appended here are echoed in the terminal summary."""
    return _extra_lines


def pytest_terminal_summary(terminalreporter):
    if not _outcomes and not _extra_lines:
        return
    tr = terminalreporter
    if _extra_lines:
        tr.section("acceptance tables")
        for line in _extra_lines:
            tr.write_line(line)
    tr.section("acceptance criteria")
    for (number, title), outcome in sorted(_outcomes.items()):
        tr.write_line(f"{outcome}  criterion {number:2d}: {title}")

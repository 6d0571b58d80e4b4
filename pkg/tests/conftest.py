import pytest

_criteria = {}  # nodeid -> [label, detail, outcome]


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion reported in the summary")


@pytest.fixture
def report(request):
    """Attach a one-line measurement to the acceptance criterion under test."""
    marker = request.node.get_closest_marker("criterion")
    entry = _criteria.setdefault(request.node.nodeid, [marker.args[0] if marker else request.node.name, "", None])

    def note(text):
        entry[1] = f"{entry[1]}; {text}" if entry[1] else text

    return note


def pytest_runtest_logreport(report):
    entry = _criteria.get(report.nodeid)
    if entry is None:
        return
    if report.when == "call" or (report.when == "setup" and report.failed):
        entry[2] = "PASS" if report.passed else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for label, detail, outcome in sorted(_criteria.values()):
        line = f"{outcome or 'NOT RUN':7} {label}"
        if detail:
            line += f"  |  {detail}"
        terminalreporter.write_line(line)

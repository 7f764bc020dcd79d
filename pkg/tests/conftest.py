import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

# Criterion id -> measured detail, filled in by test_acceptance.py.
ACCEPTANCE_DETAILS: dict[str, str] = {}
_outcomes: dict[str, tuple[str, str]] = {}


@pytest.fixture
def acceptance_detail(request):
    key = request.node.name

    def record(text):
        ACCEPTANCE_DETAILS[key] = text

    return record


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        name = report.nodeid.split("::")[-1]
        _outcomes[name] = ("PASS" if report.passed else "FAIL", report.nodeid)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for name, (status, _) in sorted(_outcomes.items()):
        detail = ACCEPTANCE_DETAILS.get(name, "")
        terminalreporter.write_line(f"[{status}] {name}: {detail}")

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_LOG = []


@pytest.fixture
def acceptance():
    """Record one pass/fail line per acceptance criterion and assert it."""

    def record(criterion: str, passed: bool, detail: str = "") -> None:
        line = f"[{'PASS' if passed else 'FAIL'}] {criterion}" + (f": {detail}" if detail else "")
        _LOG.append(line)
        print(line)
        assert passed, line

    return record


def pytest_terminal_summary(terminalreporter):
    if _LOG:
        terminalreporter.section("acceptance criteria")
        for line in _LOG:
            terminalreporter.write_line(line)

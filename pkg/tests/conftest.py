import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_ACCEPTANCE = []


@pytest.fixture(scope="session")
def record():
    """Log one acceptance line: record(tag, ok, detail)."""
    def _record(tag, ok, detail):
        _ACCEPTANCE.append((tag, bool(ok), detail))
    return _record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for tag, ok, detail in sorted(_ACCEPTANCE):
        terminalreporter.write_line(f"{tag} {'PASS' if ok else 'FAIL'}: {detail}")

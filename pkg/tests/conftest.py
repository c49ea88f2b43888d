import pytest

CRITERIA: list[str] = []


@pytest.fixture
def record():
    """Store a one-line criterion verdict for the terminal summary."""
    def _record(label: str, ok: bool, detail: str = ""):
        CRITERIA.append(f"{'PASS' if ok else 'FAIL'}  {label}" + (f"  ({detail})" if detail else ""))
        return ok
    return _record


def pytest_terminal_summary(terminalreporter):
    if CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in CRITERIA:
            terminalreporter.write_line(line)

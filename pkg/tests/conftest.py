import pytest

_RESULTS = {}


@pytest.fixture
def record_criterion():
    """Register ``(number, description, passed, elapsed)`` for the summary table."""

    def record(number, description, passed, elapsed):
        _RESULTS[number] = (description, passed, elapsed)

    return record


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_RESULTS):
        description, passed, elapsed = _RESULTS[number]
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"criterion {number:>2}: {status}  {elapsed:8.2f} s  {description}")

import pytest

from pathrisk import kernels

_acceptance_lines = []


@pytest.fixture(params=kernels.available_backends())
def backend(request):
    return kernels.get_backend(request.param)


@pytest.fixture
def record():
    """Record one acceptance line: record(criterion, passed, detail)."""
    def _record(criterion, passed, detail=""):
        status = "PASS" if passed else "FAIL"
        _acceptance_lines.append(f"[{status}] criterion {criterion}: {detail}")
        print(_acceptance_lines[-1])
        return passed
    return _record


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)


import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from cblow import kernels  # noqa: E402

REPORT = []


@pytest.fixture
def report():
    """Collects the one-line PASS/FAIL summary of an acceptance criterion."""
    def add(line):
        print(line)
        REPORT.append(line)
    return add


@pytest.fixture(params=sorted(kernels.BACKENDS))
def backend(request):
    with kernels.using_backend(request.param):
        yield request.param


def pytest_terminal_summary(terminalreporter):
    if REPORT:
        terminalreporter.section("acceptance criteria")
        for line in REPORT:
            terminalreporter.write_line(line)

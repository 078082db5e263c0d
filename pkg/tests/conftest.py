import pytest

from spectral_universality.sphere import SphereGeometry


@pytest.fixture(params=[3, 4, 5, 6])
def geom(request):
    return SphereGeometry(request.param)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)

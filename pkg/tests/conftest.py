import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture(scope="session")
def routes():
    from pathtwin.layout import default_routes

    return default_routes()


@pytest.fixture(scope="session")
def suite_maps(routes):
    from pathtwin.suite import build_maps

    return build_maps(routes)


def pytest_terminal_summary(terminalreporter):
    from acceptance_log import LINES

    if not LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(LINES):
        terminalreporter.write_line(LINES[n])

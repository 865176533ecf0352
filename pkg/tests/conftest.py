import os

import pytest

# criterion number -> summary line, filled by the acceptance tests
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long exhaustive runs, enabled with MAPBIJ_SLOW=1")


def pytest_collection_modifyitems(config, items):
    if os.environ.get("MAPBIJ_SLOW"):
        return
    skip = pytest.mark.skip(reason="set MAPBIJ_SLOW=1 to run")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])

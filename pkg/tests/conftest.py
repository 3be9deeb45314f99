import sys

import pytest

from gslice.corpus import corpus


@pytest.fixture(scope="session")
def entries():
    return corpus()


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    found = [mod.RESULTS[n] for n in sorted(mod.RESULTS)] if mod else []
    if found:
        terminalreporter.section("acceptance criteria")
        for line in found:
            terminalreporter.write_line(line)

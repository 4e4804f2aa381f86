import sys

import pytest

from igusa_locus.quaternion import OrderCatalog


@pytest.fixture(scope="session")
def catalog():
    return OrderCatalog.load()


def pytest_terminal_summary(terminalreporter):
    mod = next((m for name, m in sys.modules.items() if name.rsplit(".", 1)[-1] == "test_acceptance"), None)
    if mod is None or not getattr(mod, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.TITLES):
        if n in mod.RESULTS:
            terminalreporter.write_line(mod.RESULTS[n])
        elif n in mod.STARTED:
            terminalreporter.write_line(f"criterion {n:>2} FAIL  {mod.TITLES[n]}  (raised before finishing)")
        else:
            terminalreporter.write_line(f"criterion {n:>2} NOT RUN  {mod.TITLES[n]}")

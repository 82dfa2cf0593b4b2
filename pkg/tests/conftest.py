import os

import pytest

HEAVY = os.environ.get("HILBSTAB_HEAVY") == "1"

heavy = pytest.mark.skipif(not HEAVY, reason="set HILBSTAB_HEAVY=1 for hours-scale runs")


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(RESULTS):
        ok, detail = RESULTS[n]
        terminalreporter.write_line(f"CRITERION {n}: {'PASS' if ok else 'FAIL'} | {detail}")

import sys
from pathlib import Path

from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

_ACCEPTANCE = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::" in report.nodeid and report.when == "call":
        _ACCEPTANCE[report.nodeid] = report.outcome
    elif "test_acceptance.py::" in report.nodeid and report.when == "setup" and report.outcome != "passed":
        _ACCEPTANCE[report.nodeid] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for nodeid in sorted(_ACCEPTANCE):
        name = nodeid.split("::", 1)[1]
        status = "PASS" if _ACCEPTANCE[nodeid] == "passed" else "FAIL"
        terminalreporter.write_line(f"{status}  {name}")

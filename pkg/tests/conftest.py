import re

_ACCEPTANCE = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_(A\d+)_(\w+)", report.nodeid)
    if not m:
        return
    key = m.group(1)
    if report.when == "call" or (report.when == "setup" and report.failed):
        _ACCEPTANCE[key] = (m.group(2).replace("_", " "), report.outcome, report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_ACCEPTANCE, key=lambda k: int(k[1:])):
        name, outcome, secs = _ACCEPTANCE[key]
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{key:>3} {verdict}  {name} ({secs:.1f}s)")

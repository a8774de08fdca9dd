import re

_CRITERION = re.compile(r"test_criterion_(\d+[a-h]?)_")
_results: dict[str, bool] = {}


def pytest_runtest_logreport(report):
    m = _CRITERION.search(report.nodeid)
    if not m:
        return
    label = m.group(1).lstrip("0")
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _results[label] = _results.get(label, True) and report.outcome == "passed"


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for label, ok in _results.items():
        terminalreporter.write_line(f"criterion {label:<3} {'PASS' if ok else 'FAIL'}")

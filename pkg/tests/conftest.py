import re

_CRITERIA = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    m = re.search(r"test_criterion_(\d+)_(\w+?)(\[.*\])?$", report.nodeid)
    if not m:
        return
    key = (int(m.group(1)), m.group(2))
    failed = report.failed
    if report.when == "call" or failed:
        _CRITERIA[key] = _CRITERIA.get(key, True) and not failed


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for (num, name), ok in sorted(_CRITERIA.items()):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {num:2d}  "
                                    f"{name.replace('_', ' ')}")

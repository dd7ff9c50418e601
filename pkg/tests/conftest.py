_outcomes: dict[str, bool] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::" not in report.nodeid:
        return
    name = report.nodeid.split("::", 1)[1]
    ok = not (report.failed or (report.when == "call" and report.skipped))
    _outcomes[name] = _outcomes.get(name, True) and ok


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_outcomes):
        terminalreporter.write_line(f"{'PASS' if _outcomes[name] else 'FAIL'}  {name}")

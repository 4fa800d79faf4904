import sys


def pytest_terminal_summary(terminalreporter):
    # acceptance verdicts are worth seeing even when every test passes, and
    # captured stdout is only shown for failures
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    verdicts = getattr(mod, "VERDICTS", None) if mod else None
    if not verdicts:
        return
    terminalreporter.section("acceptance verdicts")
    for line in verdicts:
        terminalreporter.write_line(line)

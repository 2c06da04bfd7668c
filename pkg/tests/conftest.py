"""Shared pytest hooks: print acceptance verdicts in the terminal summary."""

ACCEPTANCE_RECORDS = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_RECORDS:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_RECORDS:
        terminalreporter.write_line(line)

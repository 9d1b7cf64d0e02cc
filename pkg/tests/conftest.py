from __future__ import annotations

import helpers


def pytest_terminal_summary(terminalreporter):
    if helpers.ACCEPTANCE_LOG:
        terminalreporter.section("acceptance criteria")
        for line in sorted(helpers.ACCEPTANCE_LOG, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)

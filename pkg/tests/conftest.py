"""Shared test plumbing: collect acceptance-criterion result lines and
print them in the terminal summary so every run shows one line per
criterion, pass or fail."""

_criterion_lines = []


def record_criterion(line: str) -> None:
    _criterion_lines.append(line)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _criterion_lines:
        terminalreporter.section("acceptance criteria")
        for line in _criterion_lines:
            terminalreporter.write_line(line)

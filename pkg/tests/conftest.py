"""Shared pytest plumbing: the acceptance-criteria summary block.

Each acceptance test registers exactly one PASS/FAIL line; they are echoed
in a dedicated section at the end of the run so the verdict for every
criterion is visible even when captured stdout is suppressed.
"""

ACCEPTANCE_LINES: list[str] = []


def record_acceptance(line: str) -> None:
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

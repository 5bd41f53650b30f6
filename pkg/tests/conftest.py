import pytest

_acceptance_lines: list[str] = []


@pytest.fixture
def announce():
    """Record one PASS/FAIL verdict line, shown in the terminal summary."""

    def _announce(n: int, ok: bool, extra: str = ""):
        tail = f" ({extra})" if extra else ""
        _acceptance_lines.append(f"ACCEPTANCE {n}: {'PASS' if ok else 'FAIL'}{tail}")

    return _announce


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_acceptance_lines,
                           key=lambda s: int(s.split(":")[0].split()[1])):
            terminalreporter.write_line(line)

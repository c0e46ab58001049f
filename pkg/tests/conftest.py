import pytest

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def record_acceptance():
    """Append one summary line per acceptance criterion."""

    def record(number: int, title: str, ok: bool, elapsed: float, limit: float, detail: str = ""):
        status = "PASS" if ok and elapsed < limit else "FAIL"
        line = f"[{status}] criterion {number:2d}: {title} ({elapsed:.2f} s / limit {limit:g} s)"
        if detail:
            line += f" {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda l: int(l.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)

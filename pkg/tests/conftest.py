import pytest
from hypothesis import settings

# first calls build lazy tables (prime sieve), so wall-clock deadlines are noise
settings.register_profile("default", deadline=None)
settings.load_profile("default")

ACCEPTANCE_LINES: dict[int, str] = {}


def record(n: int, ok: bool, label: str, detail: str = "") -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {n:>2}: {label}"
    if detail:
        line += f" ({detail})"
    ACCEPTANCE_LINES[n] = line
    print(line)


@pytest.fixture
def acceptance():
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[n])

import pytest

# filled by the acceptance suite: (number, description, passed)
CRITERIA = []


@pytest.fixture
def criterion():
    def record(number, description, ok):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {description}"
        print(line)
        CRITERIA.append((number, line))
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(CRITERIA):
        terminalreporter.write_line(line)

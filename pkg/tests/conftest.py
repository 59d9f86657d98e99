import pytest

# filled by tests/test_acceptance.py: criterion id -> (passed, summary line)
ACCEPTANCE = {}


@pytest.fixture
def record_criterion():
    def record(number, title, passed, detail):
        ACCEPTANCE[number] = (bool(passed), f"criterion {number} [{'PASS' if passed else 'FAIL'}] {title}: {detail}")
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[number][1])

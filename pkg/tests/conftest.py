import pytest

# criterion number -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE_RESULTS = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_RESULTS):
        ok, detail = ACCEPTANCE_RESULTS[k]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {k}: {detail}")


@pytest.fixture
def acceptance():
    def record(k, ok, detail):
        ACCEPTANCE_RESULTS[k] = (bool(ok), detail)
        print(f"{'PASS' if ok else 'FAIL'} criterion {k}: {detail}")
        assert ok, detail

    return record

import pytest

# (criterion id, passed, detail) collected by the acceptance suite
VERDICTS = []


@pytest.fixture
def verdict():
    def record(cid, ok, detail):
        VERDICTS.append((cid, bool(ok), detail))
        print(f"{'PASS' if ok else 'FAIL'} criterion {cid}: {detail}")
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for cid, ok, detail in sorted(VERDICTS, key=lambda v: v[0]):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {cid}: {detail}")

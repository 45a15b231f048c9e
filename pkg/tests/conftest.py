import pytest

# criterion number -> (title, passed); filled in by test_acceptance
CRITERIA: dict = {}


@pytest.hookimpl(trylast=True)
def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        title, passed, elapsed = CRITERIA[n]
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'} criterion {n:2d}: {title} ({elapsed:.2f} s)")

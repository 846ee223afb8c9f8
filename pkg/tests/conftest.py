import pytest

# filled by the acceptance tests: (number, title, passed, detail)
CRITERIA = []


@pytest.hookimpl(trylast=True)
def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num, title, ok, detail in sorted(CRITERIA):
        line = f"criterion {num}: {'PASS' if ok else 'FAIL'}  {title}"
        if detail:
            line += f"  [{detail}]"
        terminalreporter.write_line(line)

import pytest

ACCEPTANCE: dict[int, tuple[str, bool, str]] = {}


@pytest.fixture
def record_criterion():
    def record(number: int, title: str, ok: bool, detail: str) -> None:
        ACCEPTANCE[number] = (title, ok, detail)
        print(f"criterion {number:2d} {'PASS' if ok else 'FAIL'}: {title} ({detail})")
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        title, ok, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:2d} {'PASS' if ok else 'FAIL'}: {title} ({detail})")

import pytest

from rrverify import kernel

ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture(params=sorted(kernel.available()))
def kern(request):
    """Each available exploration kernel in turn."""
    return kernel.available()[request.param]


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for i in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[i]
        terminalreporter.write_line(f"criterion {i:>2}: {'PASS' if ok else 'FAIL'}  {detail}")

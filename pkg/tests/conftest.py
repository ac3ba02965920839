import pytest

from oldgrid.lattice import builtin_lattice

ACCEPTANCE: dict[str, tuple[str, str]] = {}


@pytest.fixture(params=["triangular", "square", "hexagonal"])
def lattice(request):
    return builtin_lattice(request.param)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or rep.when != "call":
        return
    num, text = marker.args
    ACCEPTANCE[num] = ("PASS" if rep.passed else "FAIL", text)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(num, text): acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        status, text = ACCEPTANCE[num]
        terminalreporter.write_line(f"[{status}] criterion {num}: {text}")

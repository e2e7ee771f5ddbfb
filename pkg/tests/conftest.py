import pytest
from hypothesis import settings

settings.register_profile("vok", max_examples=40, deadline=None)
settings.load_profile("vok")


@pytest.fixture(autouse=True)
def _reset_tolerances():
    from vok import kernel

    saved = dict(kernel._TOLERANCES)
    yield
    kernel._TOLERANCES.clear()
    kernel._TOLERANCES.update(saved)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import LINES

    if LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(LINES):
            terminalreporter.write_line(LINES[n])

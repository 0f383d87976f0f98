import pytest

from spinkerr.params import PhysicalParams, derive_rates

_ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def nominal_params():
    return PhysicalParams()


@pytest.fixture(scope="session")
def gamma(nominal_params):
    return derive_rates(nominal_params).gamma


@pytest.fixture
def criterion():
    """Record one PASS/FAIL line per acceptance criterion for the terminal summary."""

    def record(name, ok, detail=""):
        _ACCEPTANCE_LINES.append(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}".rstrip())
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

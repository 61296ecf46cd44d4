import pytest

from dimer_coherence.rates import DimerSystem
from dimer_coherence.spectral import Debye, ohmic_from_lambda_tau

_ACCEPTANCE = []


@pytest.fixture
def fmo_bath():
    return ohmic_from_lambda_tau(35.0, 50.0)


@pytest.fixture
def fmo77(fmo_bath):
    return DimerSystem(eps=75.0, delta=87.7, temperature=77.0, bath=fmo_bath)


@pytest.fixture
def fmo277(fmo_bath):
    return DimerSystem(eps=75.0, delta=87.7, temperature=277.0, bath=fmo_bath)


@pytest.fixture
def pc645():
    return DimerSystem(eps=82.0, delta=319.4, temperature=294.0, bath=Debye(130.0, 50.0))


@pytest.fixture
def acceptance():
    """Record one PASS/FAIL line per criterion, then assert."""

    def check(label, ok, detail=""):
        _ACCEPTANCE.append((label, bool(ok), detail))
        assert ok, f"{label}: {detail}"

    return check


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label, ok, detail in _ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {label}  {detail}")

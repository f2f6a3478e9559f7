from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

from gjs.bimodules import BimoduleCalculus
from gjs.category import TemperleyLieb
from gjs.fock import FockModule
from gjs.graded import GradedAlgebra

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

DELTA = Fraction(5, 2)


@pytest.fixture(scope="session")
def cat() -> TemperleyLieb:
    return TemperleyLieb(DELTA)


@pytest.fixture(scope="session")
def alg(cat) -> GradedAlgebra:
    return GradedAlgebra(cat)


@pytest.fixture(scope="session")
def fock(alg) -> FockModule:
    return FockModule(alg, depth=6)


@pytest.fixture(scope="session")
def bim(alg) -> BimoduleCalculus:
    return BimoduleCalculus(alg)


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance_line():
    """Collects one summary line per acceptance criterion; printed after the run."""

    def record(number: int, passed: bool, detail: str) -> None:
        line = f"criterion {number}: {'PASS' if passed else 'FAIL'}  {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)

from decimal import Decimal, localcontext
from fractions import Fraction

import pytest

from ultrametric import PAdicParams, RadialStepFunction


def dec(x, prec=80) -> Decimal:
    """Fraction -> Decimal at a precision independent of the library's."""
    x = Fraction(x)
    with localcontext() as ctx:
        ctx.prec = prec
        return Decimal(x.numerator) / Decimal(x.denominator)


@pytest.fixture
def p2n1():
    return PAdicParams(2, 1)


@pytest.fixture
def f0_p2n1(p2n1):
    return RadialStepFunction.indicator_unit_ball(p2n1)


ACCEPTANCE_LINES: dict[int, str] = {}


def record_criterion(number: int, ok: bool, summary: str) -> None:
    """Remember one acceptance outcome; printed in the terminal summary."""
    ACCEPTANCE_LINES[number] = f"criterion {number}: {'PASS' if ok else 'FAIL'} - {summary}"
    print(ACCEPTANCE_LINES[number])


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for number in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[number])

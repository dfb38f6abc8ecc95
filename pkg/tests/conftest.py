import sys
from fractions import Fraction

import pytest

from hahnaut.coeffs import FieldDescriptor
from hahnaut.exponents import Exponent, GroupDescriptor


def E(*coords):
    return Exponent(Fraction(c) for c in coords)


@pytest.fixture
def QQ():
    return FieldDescriptor.rationals()


@pytest.fixture
def Q2():
    return FieldDescriptor.quadratic(2)


@pytest.fixture
def Z1():
    return GroupDescriptor.integer(1)


@pytest.fixture
def Z2():
    return GroupDescriptor.integer(2)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])

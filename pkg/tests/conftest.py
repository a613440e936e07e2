from fractions import Fraction

import pytest

from npiclass import parse_class


@pytest.fixture
def ex1():
    return parse_class("2; 5/2, 7/5, 1")


@pytest.fixture
def ex2():
    return parse_class("3; 5/3, 12/5, 5/2, 1")


def F(s):
    return Fraction(s)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(RESULTS):
        ok, detail = RESULTS[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")

import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from depdetect.curve import CurveQ, point  # noqa: E402


@pytest.fixture
def E11():
    return CurveQ(1, 1)


@pytest.fixture
def P0():
    return point(0, 1)


@pytest.fixture
def congruent():
    """y^2 = x^3 - x, with full rational 2-torsion."""
    return CurveQ(-1, 0)


ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, note = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {note}")

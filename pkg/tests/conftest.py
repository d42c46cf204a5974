import pytest

from gradedbrackets.scalar import Chart


@pytest.fixture
def plane():
    return Chart(base=("x1", "x2"))


@pytest.fixture
def line_with_t():
    return Chart(base=("x", "y"), aux=("t",), exp_coord="t")

import pytest

from canonmaps import FinSet, Function
from canonmaps.partitions import Partition


@pytest.fixture
def U3():
    return FinSet("abc")


@pytest.fixture
def X3():
    return FinSet(["1", "2", "3"])


@pytest.fixture
def Ypq():
    return FinSet(["p", "q"])


@pytest.fixture
def f3(X3, Ypq):
    """The running example 1->p, 2->p, 3->q."""
    return Function(X3, Ypq, {"1": "p", "2": "p", "3": "q"})


@pytest.fixture
def pi_ab_c(U3):
    return Partition(U3, [{"a", "b"}, {"c"}])


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)

import pytest

from helpers import ACCEPTANCE_LINES, u1, u2, u3, u4, u5, u5_exit


@pytest.fixture(scope="session")
def U1():
    return u1()


@pytest.fixture(scope="session")
def U2():
    return u2()


@pytest.fixture(scope="session")
def U3():
    return u3()


@pytest.fixture(scope="session")
def U4():
    return u4()


@pytest.fixture(scope="session")
def U5():
    return u5()


@pytest.fixture(scope="session")
def U5x():
    return u5_exit()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

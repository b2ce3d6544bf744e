import pytest

from symplectic_filtered import bundled_model


@pytest.fixture(scope="session")
def kt():
    return bundled_model("kt")


@pytest.fixture(scope="session")
def t4():
    return bundled_model("t4")


@pytest.fixture(scope="session")
def t6():
    return bundled_model("t6")


@pytest.fixture(scope="session")
def n6():
    return bundled_model("n6")


@pytest.fixture(scope="session")
def n6b():
    return bundled_model("n6b")


def pytest_terminal_summary(terminalreporter):
    from tests.test_acceptance import RESULTS
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(RESULTS):
            terminalreporter.write_line(line)

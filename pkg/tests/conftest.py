import pytest

from uhecke import builders


@pytest.fixture(scope="session")
def f4():
    return builders.f4_12()


@pytest.fixture(scope="session")
def f4_labels():
    return builders.f4_labels()


@pytest.fixture(scope="session")
def g2_13():
    return builders.algebra("G2", "1", "3")


@pytest.fixture(scope="session")
def g2_labels():
    return builders.g2_labels("1", "3")

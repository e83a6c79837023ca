import pytest

from permupoly import build_field


@pytest.fixture(scope="session")
def gf2():
    return build_field(2, 1)


@pytest.fixture(scope="session")
def gf4():
    return build_field(2, 2)


@pytest.fixture(scope="session")
def gf8():
    return build_field(2, 3)


@pytest.fixture(scope="session")
def gf16():
    return build_field(2, 4)


@pytest.fixture(scope="session")
def gf64():
    return build_field(2, 6)


@pytest.fixture(scope="session")
def gf256():
    return build_field(2, 8)


@pytest.fixture(scope="session")
def gf625():
    return build_field(5, 4)

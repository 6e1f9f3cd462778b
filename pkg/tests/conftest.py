import pytest

from lexicov import gf


@pytest.fixture(scope="session")
def f2():
    return gf.make_field(2)


@pytest.fixture(scope="session")
def f3():
    return gf.make_field(3)


@pytest.fixture(scope="session")
def f5():
    return gf.make_field(5)


@pytest.fixture(scope="session")
def f7():
    return gf.make_field(7)


@pytest.fixture(scope="session")
def f9():
    return gf.make_field(3, 2)


@pytest.fixture(scope="session")
def f13():
    return gf.make_field(13)

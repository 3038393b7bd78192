import pytest

from latkit.constructions import boolean, chain, free_modular_3, m3, n5


@pytest.fixture(scope="session")
def diamond():
    return m3()


@pytest.fixture(scope="session")
def pentagon():
    return n5()


@pytest.fixture(scope="session")
def fm3():
    return free_modular_3()


@pytest.fixture(scope="session")
def bool2():
    return boolean(2)


@pytest.fixture(scope="session")
def chain2():
    return chain(2)

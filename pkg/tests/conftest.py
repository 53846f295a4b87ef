import pytest

from extricat.instances import gen_path_algebra_instance
from extricat.pentagon import build_pentagon_instance


@pytest.fixture(scope="session")
def a2():
    return gen_path_algebra_instance(2)


@pytest.fixture(scope="session")
def a3():
    return gen_path_algebra_instance(3)


@pytest.fixture(scope="session")
def pent():
    return build_pentagon_instance()

import pytest

from khd import Window, build_kantor_double_lv, build_virasoro_like


@pytest.fixture(scope="session")
def lv2():
    return build_kantor_double_lv(Window(2))


@pytest.fixture(scope="session")
def lv3():
    return build_kantor_double_lv(Window(3))


@pytest.fixture(scope="session")
def lv4():
    return build_kantor_double_lv(Window(4))


@pytest.fixture(scope="session")
def v3():
    return build_virasoro_like(Window(3))

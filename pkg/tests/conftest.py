import pytest

from twistgate import curve_by_label


@pytest.fixture(scope="session")
def e15():
    return curve_by_label("15a1")


@pytest.fixture(scope="session")
def e21():
    return curve_by_label("21a1")

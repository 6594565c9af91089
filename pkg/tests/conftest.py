import pytest
from hypothesis import settings

from polarkit import forms, gf, polar

# Exact arithmetic on tiny fields is fast but individual examples can be
# uneven (table builds are cached per field); the wall-clock deadline is
# the only hypothesis default we override.
settings.register_profile("polarkit", deadline=None)
settings.load_profile("polarkit")


@pytest.fixture(scope="session")
def f3():
    return gf.field(3)


@pytest.fixture(scope="session")
def f4():
    return gf.field(2, 2)


@pytest.fixture(scope="session")
def f9():
    return gf.field(3, 2)


@pytest.fixture(scope="session")
def w33():
    return polar.build(forms.standard_form("W", 4, gf.field(3)))


@pytest.fixture(scope="session")
def q43():
    return polar.build(forms.standard_form("Q", 5, gf.field(3)))


@pytest.fixture(scope="session")
def qm52():
    return polar.build(forms.standard_form("Q-", 6, gf.field(2)))

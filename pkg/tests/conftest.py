import pytest

from newformlab.forms import BUNDLED_FORMS
from newformlab.tables import build_table


@pytest.fixture(scope="session")
def delta_table():
    return build_table(BUNDLED_FORMS["delta"], 10 ** 4)


@pytest.fixture(scope="session")
def cm_table():
    return build_table(BUNDLED_FORMS["cm32"], 10 ** 4)


@pytest.fixture(scope="session")
def e11_table():
    return build_table(BUNDLED_FORMS["e11"], 10 ** 4)

import pytest

from orbitlab.real_forms import RealFormSpec
from orbitlab.structure import load_structure

HERMITIAN = ["su(1,1)", "su(2,1)", "su(2,2)", "sp(4,R)", "sp(6,R)", "so(2,4)", "so*(6)"]
ALL_ALGEBRAS = HERMITIAN + ["so(4,1)", "so(5,1)"]
SMALL_HERMITIAN = ["su(1,1)", "su(2,1)", "sp(4,R)"]


def structure(name):
    return load_structure(RealFormSpec.parse(name))


@pytest.fixture(scope="session")
def sp4():
    return structure("sp(4,R)")


@pytest.fixture(scope="session")
def su11():
    return structure("su(1,1)")


@pytest.fixture(scope="session")
def su21():
    return structure("su(2,1)")

import pytest

from qcover.algebra.racks import check_hom
from qcover.tools.rack_db import builtin_hom, builtin_rack, load_group_conj


@pytest.fixture
def qabs():
    return builtin_rack("qabs")


@pytest.fixture
def rack6():
    return builtin_rack("rack6")


@pytest.fixture
def r3():
    return builtin_rack("r3")


@pytest.fixture
def t1():
    return builtin_rack("t1")


@pytest.fixture
def t2():
    return builtin_rack("t2")


@pytest.fixture
def conj_s3():
    return load_group_conj("s3.json")


@pytest.fixture
def eta_qabs():
    return builtin_hom("hom_eta_qabs")


@pytest.fixture
def r3_to_1():
    return builtin_hom("hom_r3_to_1")


@pytest.fixture
def rack6_to_t2():
    return builtin_hom("hom_rack6_to_t2")


@pytest.fixture
def not_onto(t1, t2):
    """T1 -> T2 hitting only x."""
    return check_hom(t1, t2, [0])

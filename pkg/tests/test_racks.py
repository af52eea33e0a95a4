import numpy as np
import pytest
from sympy.combinatorics import Permutation, PermutationGroup

from qcover.algebra.racks import (
    abelianization_order,
    alexander_quandle,
    check_hom,
    classify,
    commutator_subgroup,
    compose,
    conj_of_group,
    dihedral_quandle,
    identity_hom,
    inn_group,
    permutation_rack,
    product,
    pullback,
    subrack,
    transvection_group,
    trivial_rack,
    validate_rack,
)
from qcover.errors import (
    NotAGroup,
    NotAHomomorphism,
    NotBijectiveColumn,
    SelfDistributivityFail,
    ShapeError,
    UnknownLabel,
)
from qcover.tools.rack_db import load_group


# ---------------------------------------------------------
# Validation
# ---------------------------------------------------------
def test_qabs_is_an_involutive_quandle(qabs):
    assert classify(qabs) == {"is_quandle": True, "is_involutive": True, "is_trivial": False}
    assert qabs.op(qabs.index("a"), qabs.index("s")) == qabs.index("b")


def test_table_neg_inverts_columns(rack6):
    for x in range(rack6.order):
        for y in range(rack6.order):
            assert rack6.op(rack6.op(x, y), y, -1) == x
            assert rack6.op(rack6.op(x, y, -1), y) == x


def test_non_permutation_column():
    with pytest.raises(NotBijectiveColumn) as exc:
        validate_rack([[0, 1], [1, 1]])
    assert exc.value.column == 1


def test_self_distributivity_failure():
    # S_0 = (0 1) but S_(0<0) = S_1 is the identity
    with pytest.raises(SelfDistributivityFail):
        validate_rack([[1, 0, 0], [0, 1, 1], [2, 2, 2]])


@pytest.mark.parametrize("table", [[[0, 0]], [[0, 5], [1, 1]], [], [[0, 1], [1]]])
def test_shape_errors(table):
    with pytest.raises(ShapeError):
        validate_rack(table)


def test_duplicate_labels_rejected():
    with pytest.raises(ShapeError):
        validate_rack([[0, 0], [1, 1]], ["x", "x"])


def test_row_acts_transposes(rack6):
    a, b, one = rack6.index("a"), rack6.index("b"), rack6.index("1")
    assert rack6.op(a, one) == b
    assert rack6.symmetry(a) == (1, 0, 3, 2, 4, 5)


def test_unknown_label(qabs):
    with pytest.raises(UnknownLabel):
        qabs.index("z")


# ---------------------------------------------------------
# Constructors
# ---------------------------------------------------------
def test_dihedral_matches_shipped_r3(r3):
    assert np.array_equal(dihedral_quandle(3).table_pos, r3.table_pos)


@pytest.mark.parametrize("n,t", [(3, 2), (5, 2), (5, 3), (7, 3)])
def test_alexander_quandles_are_quandles(n, t):
    assert classify(alexander_quandle(n, t))["is_quandle"]


def test_trivial_and_permutation_racks():
    assert classify(trivial_rack(4))["is_trivial"]
    P = permutation_rack([1, 2, 0])
    assert not classify(P)["is_quandle"]
    assert P.power(0, 1, 3) == 0


def test_power_negative(r3):
    assert r3.power(0, 1, -1) == r3.op(0, 1, -1)


def test_conj_of_s3(conj_s3):
    assert conj_s3.order == 6
    assert classify(conj_s3)["is_quandle"]
    # e is central
    assert all(conj_s3.op(0, y) == 0 for y in range(6))


def test_conj_rejects_non_group():
    with pytest.raises(NotAGroup):
        conj_of_group([[0, 0], [0, 0]])


# ---------------------------------------------------------
# Homomorphisms and constructions
# ---------------------------------------------------------
def test_check_hom(qabs, t2):
    f = check_hom(qabs, t2, [0, 0, 1])
    assert f.surjective
    assert f.fibers() == [[0, 1], [2]]
    assert f.missing() is None


def test_not_a_hom(t2, qabs):
    with pytest.raises(NotAHomomorphism):
        check_hom(t2, qabs, [0, 2])


def test_compose_with_identity(eta_qabs):
    g = compose(identity_hom(eta_qabs.dom), eta_qabs)
    assert g.map == eta_qabs.map


def test_subrack(qabs):
    S, inc = subrack(qabs, [0, 1])
    assert S.elements == ("a", "b")
    assert classify(S)["is_trivial"]
    assert inc.map == (0, 1)
    with pytest.raises(ShapeError):
        subrack(qabs, [0, 2])


def test_product_with_point(qabs, t1):
    P = product(qabs, t1)
    assert P.order == 3
    assert np.array_equal(P.table_pos, qabs.table_pos)


def test_kernel_pair_of_eta(eta_qabs):
    P, p1, p2 = pullback(eta_qabs, eta_qabs)
    assert P.order == 5
    assert p1.surjective and p2.surjective


# ---------------------------------------------------------
# Inner automorphisms
# ---------------------------------------------------------
@pytest.mark.parametrize("name,order", [("qabs", 2), ("rack6", 4), ("r3", 6), ("t2", 1)])
def test_inn_orders(request, name, order):
    X = request.getfixturevalue(name)
    assert inn_group(X).order == order


def test_inn_agrees_with_sympy(conj_s3, rack6):
    for X in (conj_s3, rack6):
        ref = PermutationGroup([Permutation(list(s)) for s in X.symmetries()])
        assert inn_group(X).order == ref.order()


def test_transvection_group_of_r3(r3):
    assert transvection_group(r3).order == 3


def test_conj_of_abelian_groups_is_trivial():
    Z3 = conj_of_group([[0, 1, 2], [1, 2, 0], [2, 0, 1]])
    assert np.array_equal(Z3.table_pos, trivial_rack(3).table_pos)
    one = conj_of_group([[0]], ["e"])
    assert one.order == 1
    assert classify(one)["is_quandle"]


def test_classify_rack6(rack6):
    assert classify(rack6) == {"is_quandle": False, "is_involutive": True, "is_trivial": False}


def test_pullback_of_trivial_racks_over_a_point():
    T1 = trivial_rack(1)
    f = check_hom(trivial_rack(2), T1, [0, 0])
    g = check_hom(trivial_rack(3), T1, [0, 0, 0])
    P, p1, p2 = pullback(f, g)
    assert P.order == 6
    assert classify(P)["is_trivial"]
    assert p1.surjective and p2.surjective


def test_commutator_subgroup_of_s3():
    s3 = load_group("s3.json")
    assert [s3.elements[i] for i in commutator_subgroup(s3.cayley)] == ["e", "r", "r2"]
    assert abelianization_order(s3.cayley) == 2
    assert abelianization_order([[0, 1, 2], [1, 2, 0], [2, 0, 1]]) == 3

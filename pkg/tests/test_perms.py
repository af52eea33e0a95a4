import pytest
from hypothesis import given
from hypothesis import strategies as st
from sympy.combinatorics import Permutation, PermutationGroup

from qcover.algebra.perms import (
    PermGroup,
    conjugate,
    cycles,
    format_perm,
    identity,
    perm_inv,
    perm_mul,
    perm_pow,
)
from qcover.errors import ClosureCapExceeded

S3_GENS = ((1, 0, 2), (1, 2, 0))
S4_GENS = ((1, 0, 2, 3), (1, 2, 3, 0))


def perms(n: int = 5):
    return st.permutations(list(range(n))).map(tuple)


def test_perm_mul_applies_left_first():
    p, q = (1, 0, 2), (0, 2, 1)
    # 0 -> 1 under p, then 1 -> 2 under q
    assert perm_mul(p, q) == (2, 0, 1)


@given(perms(), perms(), perms())
def test_perm_mul_associative(p, q, r):
    assert perm_mul(perm_mul(p, q), r) == perm_mul(p, perm_mul(q, r))


@given(perms())
def test_inverse(p):
    assert perm_mul(p, perm_inv(p)) == identity(5)


@given(perms(), st.integers(-6, 6))
def test_pow_matches_repeated_product(p, k):
    expected = identity(5)
    step = p if k >= 0 else perm_inv(p)
    for _ in range(abs(k)):
        expected = perm_mul(expected, step)
    assert perm_pow(p, k) == expected


def test_conjugate():
    g = (1, 2, 0)
    p = (1, 0, 2)
    assert conjugate(p, g) == perm_mul(perm_mul(perm_inv(g), p), g)
    assert conjugate(p, identity(3)) == p


def test_cycles_and_format():
    p = (1, 0, 3, 4, 2)
    assert cycles(p) == [(0, 1), (2, 3, 4)]
    assert format_perm(p, "abcde") == "(a b)(c d e)"
    assert format_perm(identity(3), "abc") == "()"


def test_identity_generators_dropped():
    G = PermGroup(3, ((0, 1, 2), (1, 0, 2), (1, 0, 2)))
    assert G.generators == ((1, 0, 2),)
    assert PermGroup(3, ()).is_trivial


def test_s3_closure_orbits_and_stabilizer():
    G = PermGroup(3, S3_GENS)
    assert G.order == 6
    assert G.orbits() == [[0, 1, 2]]
    assert G.stabilizer(0).order == 2
    assert (2, 1, 0) in G


def test_orbit_transversal_reaches_each_point():
    G = PermGroup(4, S4_GENS)
    for y, u in G.orbit_transversal(0).items():
        assert u[0] == y


def test_normal_closure():
    S4 = PermGroup(4, S4_GENS)
    # the double transpositions generate the Klein four-group, normal in S4
    V = S4.normal_closure([(1, 0, 3, 2)])
    assert V.order == 4
    assert V.is_normal_in(S4)
    assert S4.normal_closure([(1, 0, 2, 3)]).order == 24
    assert S4.normal_closure([]).is_trivial


def test_point_stabilizer_is_not_normal():
    S4 = PermGroup(4, S4_GENS)
    assert not S4.stabilizer(0).is_normal_in(S4)


@pytest.mark.parametrize("gens", [S3_GENS, ((1, 2, 3, 0),), ((1, 0, 3, 2), (2, 3, 0, 1)), S4_GENS])
def test_order_agrees_with_sympy(gens):
    ref = PermutationGroup([Permutation(list(g)) for g in gens])
    assert PermGroup(len(gens[0]), gens).order == ref.order()


def test_closure_cap():
    with pytest.raises(ClosureCapExceeded):
        PermGroup(4, S4_GENS, cap=5).elements

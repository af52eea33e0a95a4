import pytest

from qcover.algebra.congruence import (
    UnionFind,
    congruence_from_pairs,
    discrete,
    from_partition,
    incompatibility,
    internal_relation,
    join,
    kernel_congruence,
    orbit_congruence,
    quotient,
    relations_permute,
)
from qcover.algebra.perms import PermGroup
from qcover.algebra.racks import classify, inn_group, trivial_rack
from qcover.errors import DegreeMismatch, IncompatiblePartition, ShapeError


def test_union_find_roots_are_least_members():
    uf = UnionFind(5)
    uf.union(3, 1)
    uf.union(4, 3)
    assert uf.roots() == (0, 1, 2, 1, 1)


def test_generated_congruence(qabs):
    C = congruence_from_pairs(qabs, [(0, 1)])
    assert C.classes() == [[0, 1], [2]]
    assert C.format() == "{a,b} {s}"
    assert C.class_count == 2


def test_generation_closes_under_the_operation(rack6):
    # a ~ b forces a2 = a < a ~ b < a = b2
    a, a2, b, b2 = (rack6.index(l) for l in ("a", "a2", "b", "b2"))
    C = congruence_from_pairs(rack6, [(a, b)])
    assert C.same(a2, b2)


def test_out_of_range_pair(qabs):
    with pytest.raises(ShapeError):
        congruence_from_pairs(qabs, [(0, 7)])


def test_incompatible_partition(qabs):
    with pytest.raises(IncompatiblePartition):
        from_partition(qabs, [[0, 2], [1]])
    with pytest.raises(ShapeError):
        from_partition(qabs, [[0], [1]])


def test_incompatibility_is_none_for_congruences(rack6):
    assert incompatibility(congruence_from_pairs(rack6, [(4, 5)])) is None


def test_quotient_of_qabs_is_trivial(qabs):
    Q, f = quotient(qabs, congruence_from_pairs(qabs, [(0, 1)]))
    assert Q.elements == ("{a,b}", "s")
    assert classify(Q)["is_trivial"]
    assert f.map == (0, 0, 1)


def test_discrete_requotient(r3):
    Q, f = quotient(r3, discrete(r3))
    assert f.map == (0, 1, 2)
    assert Q == r3


def test_kernel_congruence_and_join(eta_qabs, qabs):
    K = kernel_congruence(eta_qabs)
    assert K == congruence_from_pairs(qabs, [(0, 1)])
    assert join(K, discrete(qabs)) == K
    assert discrete(qabs) <= K and not K <= discrete(qabs)


def test_orbit_congruence_is_co(qabs, conj_s3):
    assert orbit_congruence(qabs, inn_group(qabs)).format() == "{a,b} {s}"
    assert orbit_congruence(conj_s3, inn_group(conj_s3)).class_count == 3


def test_orbit_congruence_degree(qabs):
    with pytest.raises(DegreeMismatch):
        orbit_congruence(qabs, PermGroup(2, ((1, 0),)))


def test_orbit_congruence_normality_check(conj_s3):
    inn = inn_group(conj_s3)
    stab = inn.stabilizer(conj_s3.index("s"))
    with pytest.raises(ShapeError):
        orbit_congruence(conj_s3, stab, check_normal=True)


def test_internal_relation_contains_diagonal_and_is_closed(qabs):
    R = internal_relation(qabs, [(0, 2)])
    assert {(x, x) for x in range(3)} <= R
    for a, b in R:
        for c, d in R:
            assert (qabs.op(a, c), qabs.op(b, d)) in R


def test_co_permutes_with_internal_relations(qabs):
    co = orbit_congruence(qabs, inn_group(qabs))
    for pairs in ([(0, 2)], [(2, 1)], [(0, 1), (1, 2)]):
        assert relations_permute(co, internal_relation(qabs, pairs))


def test_co_need_not_permute_with_plain_reflexive_relations(qabs):
    co = orbit_congruence(qabs, inn_group(qabs))
    assert not relations_permute(co, {(0, 0), (1, 1), (2, 2), (0, 2)})


def test_congruences_are_hashable(qabs):
    C = congruence_from_pairs(qabs, [(1, 0)])
    assert len({C, congruence_from_pairs(qabs, [(0, 1)])}) == 1


def test_crossing_partitions_of_t3_do_not_permute():
    T3 = trivial_rack(3)
    C = from_partition(T3, [[0, 1], [2]])
    D = from_partition(T3, [[1, 2], [0]])
    assert not relations_permute(C, D)
    assert relations_permute(C, C)


def test_inn_orbits_of_r3_form_one_class(r3):
    assert orbit_congruence(r3, inn_group(r3)).class_count == 1

import numpy as np
import pytest

from qcover.covers.coverings import (
    Horn,
    Membrane,
    horn_analyze,
    horn_from_witness,
    is_covering,
    membrane_analyze,
    sample_horn,
)
from qcover.errors import InvalidHorn, NotSurjective


def test_eta_qabs_is_a_covering(eta_qabs):
    r = is_covering(eta_qabs)
    assert r.verdict
    assert r.witness is None
    assert r.method_agreement == {"triple_loop": True, "kernel_image": True}


def test_r3_onto_point_is_not(r3_to_1):
    r = is_covering(r3_to_1)
    assert not r.verdict
    assert r.witness == (0, 0, 1)


def test_rack6_onto_t2_is_not(rack6_to_t2):
    r = is_covering(rack6_to_t2)
    assert not r.verdict
    assert r.witness == (0, 4, 5)
    assert r.method_agreement["kernel_image"] is False


def test_covering_needs_surjection(not_onto):
    with pytest.raises(NotSurjective):
        is_covering(not_onto)


def test_witness_gives_a_non_closing_horn(r3_to_1, rack6_to_t2):
    for f in (r3_to_1, rack6_to_t2):
        h = horn_from_witness(f, is_covering(f).witness)
        a = horn_analyze(h)
        assert not a.closes and not a.retracts


def test_horns_retract_under_a_covering(eta_qabs):
    rng = np.random.default_rng(7)
    for _ in range(200):
        h = sample_horn(eta_qabs, rng)
        assert len(h.steps) <= 6
        assert horn_analyze(h).retracts


def test_horn_top_and_bottom(rack6_to_t2):
    one, two = rack6_to_t2.dom.index("1"), rack6_to_t2.dom.index("2")
    h = Horn(0, ((one, two, 1), (two, one, -1)), rack6_to_t2)
    assert h.top().letters == ((one, 1), (two, -1))
    assert h.bottom().letters == ((two, 1), (one, -1))


def test_invalid_horn_step(rack6_to_t2):
    with pytest.raises(InvalidHorn) as exc:
        horn_analyze(Horn(0, ((0, 0, 1), (0, 4, 1)), rack6_to_t2))
    assert exc.value.step == 1


def test_membrane_swaps_and_returns(eta_qabs):
    a, b, s = 0, 1, 2
    once = membrane_analyze(Membrane((a, b), ((s, s, 1),), eta_qabs))
    assert once.endpoints == (b, a)
    assert not once.closes and not once.is_cylinder
    twice = membrane_analyze(Membrane((a, b), ((s, s, 1), (s, s, 1)), eta_qabs))
    assert twice.is_cylinder


def test_membrane_base_must_be_related(eta_qabs):
    with pytest.raises(InvalidHorn):
        membrane_analyze(Membrane((0, 2), (), eta_qabs))


def test_verdict_does_not_materialize_the_kernel_image(r3_to_1):
    # the kernel image has order 3; only its generators are needed
    r = is_covering(r3_to_1, cap=2)
    assert not r.verdict
    assert r.witness == (0, 0, 1)

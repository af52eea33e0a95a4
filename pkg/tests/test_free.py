import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from qcover.algebra.free import (
    FreeQuandleElem,
    FreeRackElem,
    NotInKernel,
    SymmetricPairWitness,
    fq_normalize,
    fq_op,
    fr_op,
    kernel_pairing,
)
from qcover.algebra.words import EMPTY, GroupWord, fg_map, word_char
from qcover.errors import CharacteristicNonZero
from tests.strategies import GENS, fq_elems, fr_elems, nonempty_words, words


# ---------------------------------------------------------
# Free rack
# ---------------------------------------------------------
@settings(max_examples=1000)
@given(fr_elems(), fr_elems())
def test_free_rack_r1(x, y):
    assert fr_op(fr_op(x, y), y, -1) == x
    assert fr_op(fr_op(x, y, -1), y) == x


@settings(max_examples=1000)
@given(fr_elems(), fr_elems(), fr_elems())
def test_free_rack_r2(x, y, z):
    assert fr_op(fr_op(x, y), z) == fr_op(fr_op(x, z), fr_op(y, z))


def test_free_rack_is_not_a_quandle():
    a = FreeRackElem(0)
    assert fr_op(a, a) == FreeRackElem(0, GroupWord.letter(0))


@given(fr_elems(), nonempty_words())
def test_free_rack_action_is_free(x, h):
    assert x.act(h) != x


# ---------------------------------------------------------
# Free quandle
# ---------------------------------------------------------
@settings(max_examples=1000)
@given(fq_elems(), fq_elems())
def test_free_quandle_r1_and_q1(x, y):
    assert fq_op(fq_op(x, y), y, -1) == x
    assert fq_op(x, x) == x


@settings(max_examples=1000)
@given(fq_elems(), fq_elems(), fq_elems())
def test_free_quandle_r2(x, y, z):
    assert fq_op(fq_op(x, y), z) == fq_op(fq_op(x, z), fq_op(y, z))


@given(st.integers(0, GENS - 1), words())
def test_normal_form_has_zero_characteristic(head, g):
    assert word_char(fq_normalize(head, g).path) == 0


@given(fq_elems(), nonempty_words())
def test_free_quandle_action_is_free(x, h):
    h = h * GroupWord.power((x.head + 1) % GENS, -word_char(h))
    assume(h)
    assert x.act(h) != x


def test_nonzero_characteristic_rejected():
    with pytest.raises(CharacteristicNonZero):
        FreeQuandleElem(0, GroupWord.letter(1))


# ---------------------------------------------------------
# Kernel pairing
# ---------------------------------------------------------
def test_pairing_of_a_simple_kernel_word():
    u = GroupWord(((0, 1), (1, -1)))
    w = kernel_pairing([0, 0], u)
    assert isinstance(w, SymmetricPairWitness)
    assert w.pairing == ((0, 1),)
    assert w.bottom == ((0, 1), (0, -1))
    assert w.nu_prime == EMPTY


def test_pairing_is_non_crossing():
    # a b c^-1 d^-1 with a, d -> x and b, c -> y pairs (1, 2) inside (0, 3)
    u = GroupWord(((0, 1), (1, 1), (2, -1), (3, -1)))
    w = kernel_pairing([0, 1, 1, 0], u)
    assert w.pairing == ((0, 3), (1, 2))


def test_not_in_kernel():
    u = GroupWord(((0, 1), (1, -1)))
    result = kernel_pairing([0, 1], u)
    assert isinstance(result, NotInKernel)
    assert result.image == fg_map([0, 1], u)


@given(words(GENS + 1), st.lists(st.integers(0, 1), min_size=GENS + 1, max_size=GENS + 1))
def test_pairing_round_trip(v, f):
    # v v'^-1 lies in the kernel when v' swaps letters within fibres of f
    swap = {g: next(h for h in range(len(f)) if f[h] == f[g]) for g in range(len(f))}
    v_prime = GroupWord(tuple((swap[g], s) for g, s in v.letters))
    u = v * ~v_prime
    w = kernel_pairing(f, u)
    assert isinstance(w, SymmetricPairWitness)
    assert w.nu * ~w.nu_prime == u
    assert fg_map(f, w.nu_prime) == EMPTY
    assert [f[g] for g, _ in w.top] == [f[g] for g, _ in w.bottom]

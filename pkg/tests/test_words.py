import pytest
from hypothesis import given

from qcover.algebra.words import (
    EMPTY,
    GroupWord,
    fg_map,
    format_word,
    parse_word,
    reduce_letters,
    word_char,
)
from qcover.errors import BadWordSyntax, UnknownLabel
from tests.strategies import words

LABELS = ("a", "b", "c")


def test_reduction_is_eager():
    u = GroupWord(((0, 1), (1, 1), (1, -1), (0, -1), (2, 1)))
    assert u.letters == ((2, 1),)
    assert reduce_letters([(0, 1), (0, -1)]) == ()


def test_bad_sign():
    with pytest.raises(ValueError):
        GroupWord(((0, 2),))


@given(words())
def test_inverse_cancels(u):
    assert u * ~u == EMPTY
    assert ~~u == u


@given(words(), words(), words())
def test_multiplication_is_associative(u, v, w):
    assert (u * v) * w == u * (v * w)


@given(words(), words())
def test_char_is_a_homomorphism(u, v):
    assert word_char(u * v) == word_char(u) + word_char(v)
    assert word_char(~u) == -word_char(u)


@given(words())
def test_parse_inverts_format(u):
    assert parse_word(format_word(u, LABELS), LABELS) == u


def test_parse_powers():
    assert parse_word("a^3 b^-2", LABELS) == GroupWord(((0, 1),) * 3 + ((1, -1),) * 2)
    assert parse_word("a^0 b", LABELS) == GroupWord.letter(1)
    assert parse_word("", LABELS) == EMPTY


def test_parse_errors():
    with pytest.raises(UnknownLabel):
        parse_word("a z", LABELS)
    with pytest.raises(BadWordSyntax):
        parse_word("a^x", LABELS)


def test_format_empty():
    assert format_word(EMPTY, LABELS) == "e"
    assert format_word(GroupWord(((0, 1), (1, -1))), LABELS) == "a b^-1"


def test_cyclic_reduction():
    u = parse_word("a b c a^-1", LABELS)
    assert u.cyclically_reduced() == parse_word("b c", LABELS)


def test_exponent_sums():
    assert parse_word("a b^-1 a c", LABELS).exponent_sums(3) == [2, -1, 1]


def test_fg_map_reduces():
    # a, b -> x: a b^-1 maps to x x^-1 = e
    assert fg_map([0, 0, 1], parse_word("a b^-1", LABELS)) == EMPTY
    assert fg_map({0: 1, 1: 1, 2: 0}, parse_word("c a", LABELS)) == GroupWord(((0, 1), (1, 1)))

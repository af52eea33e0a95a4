"""Normal-form arithmetic in the free rack and the free quandle.

An element of the free rack on A is a pair (a, g) with a in A and g a
reduced word in Fg(A); it is the trail starting at a along g. In the free
quandle the path is taken with zero exponent sum relative to its head.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence, Union

from qcover.algebra.words import EMPTY, GroupWord, Letter, word_char
from qcover.errors import CharacteristicNonZero


@dataclass(frozen=True)
class FreeRackElem:
    head: int
    path: GroupWord = EMPTY

    def act(self, h: GroupWord) -> "FreeRackElem":
        return FreeRackElem(self.head, self.path * h)


@dataclass(frozen=True)
class FreeQuandleElem:
    head: int
    path: GroupWord = EMPTY

    def __post_init__(self):
        if word_char(self.path) != 0:
            raise CharacteristicNonZero(f"path {self.path} has non-zero exponent sum")

    def act(self, h: GroupWord) -> "FreeQuandleElem":
        return fq_normalize(self.head, self.path * h)


def fr_op(x: FreeRackElem, y: FreeRackElem, sign: int = 1) -> FreeRackElem:
    """(a, g) <^s (b, h) = (a, g h^-1 b^s h)."""
    h = y.path
    return FreeRackElem(x.head, x.path * ~h * GroupWord.letter(y.head, sign) * h)


def fq_normalize(head: int, g: GroupWord) -> FreeQuandleElem:
    """Representative head^-chi(g) g of the class of (head, g)."""
    return FreeQuandleElem(head, GroupWord.power(head, -word_char(g)) * g)


def fq_op(x: FreeQuandleElem, y: FreeQuandleElem, sign: int = 1) -> FreeQuandleElem:
    """(a, g) <^s (b, h) = (a, a^-s g h^-1 b^s h)."""
    if word_char(x.path) or word_char(y.path):
        raise CharacteristicNonZero("free quandle paths must have exponent sum 0")
    h = y.path
    return fq_normalize(x.head, x.path * ~h * GroupWord.letter(y.head, sign) * h)


@dataclass(frozen=True)
class SymmetricPairWitness:
    """A non-crossing pairing of letter positions and the f-symmetric pair.

    ``top`` is the word itself and ``bottom`` replaces the second letter of
    each pair by the generator of the first; both are kept letter by letter
    since ``bottom`` reduces to the empty word.
    """

    pairing: tuple[tuple[int, int], ...]
    top: tuple[Letter, ...]
    bottom: tuple[Letter, ...]

    @property
    def nu(self) -> GroupWord:
        return GroupWord(self.top)

    @property
    def nu_prime(self) -> GroupWord:
        return GroupWord(self.bottom)


@dataclass(frozen=True)
class NotInKernel:
    image: GroupWord


def kernel_pairing(f: Union[Sequence[int], Mapping[int, int]], u: GroupWord
                   ) -> Union[SymmetricPairWitness, NotInKernel]:
    """Pair up the letters of u whose images cancel under f.

    Simulates stack reduction of the image word: a letter pairs with the most
    recent unmatched letter whose image it cancels.
    """
    stack: list[int] = []
    pairs: list[tuple[int, int]] = []
    image = [(f[g], s) for g, s in u.letters]
    for i, (g, s) in enumerate(image):
        if stack and image[stack[-1]] == (g, -s):
            pairs.append((stack.pop(), i))
        else:
            stack.append(i)
    if stack:
        return NotInKernel(GroupWord(tuple(image)))

    bottom = list(u.letters)
    for j, i in pairs:
        bottom[i] = (u.letters[j][0], u.letters[i][1])
    return SymmetricPairWitness(tuple(sorted(pairs)), u.letters, tuple(bottom))

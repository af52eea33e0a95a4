"""Freely reduced words over indexed generators.

A letter is a pair ``(generator, sign)`` with sign in {+1, -1}. Words are
reduced on construction, so two words are equal in the free group iff they
are equal as values.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from qcover.errors import BadWordSyntax, UnknownLabel

Letter = tuple[int, int]


def reduce_letters(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    stack: list[Letter] = []
    for g, s in letters:
        g, s = int(g), int(s)
        if s not in (1, -1):
            raise ValueError(f"letter sign must be +1 or -1, got {s}")
        if stack and stack[-1] == (g, -s):
            stack.pop()
        else:
            stack.append((g, s))
    return tuple(stack)


@dataclass(frozen=True)
class GroupWord:
    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", reduce_letters(self.letters))

    @classmethod
    def letter(cls, g: int, sign: int = 1) -> "GroupWord":
        return cls(((g, sign),))

    @classmethod
    def power(cls, g: int, k: int) -> "GroupWord":
        s = 1 if k >= 0 else -1
        return cls(((g, s),) * abs(k))

    def __mul__(self, other: "GroupWord") -> "GroupWord":
        return word_mul(self, other)

    def __invert__(self) -> "GroupWord":
        return word_inv(self)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    @property
    def char(self) -> int:
        return word_char(self)

    def exponent_sums(self, n: int) -> list[int]:
        v = [0] * n
        for g, s in self.letters:
            v[g] += s
        return v

    def cyclically_reduced(self) -> "GroupWord":
        letters = list(self.letters)
        while len(letters) > 1 and letters[0] == (letters[-1][0], -letters[-1][1]):
            letters = letters[1:-1]
        return GroupWord(tuple(letters))

    def __repr__(self) -> str:
        return "GroupWord(" + (" ".join(f"{g}" if s > 0 else f"{g}^-1" for g, s in self.letters) or "e") + ")"


EMPTY = GroupWord()


def word_mul(u: GroupWord, v: GroupWord) -> GroupWord:
    return GroupWord(u.letters + v.letters)


def word_inv(u: GroupWord) -> GroupWord:
    return GroupWord(tuple((g, -s) for g, s in reversed(u.letters)))


def word_char(u: GroupWord) -> int:
    """Exponent sum; a homomorphism to the integers."""
    return sum(s for _, s in u.letters)


def fg_map(f: Sequence[int] | Mapping[int, int], u: GroupWord) -> GroupWord:
    """Letterwise image of u under a map of generators, reduced."""
    return GroupWord(tuple((f[g], s) for g, s in u.letters))


def parse_word(text: str, labels: Sequence[str]) -> GroupWord:
    """Parse ``a b^-1 a`` (or ``a^3``) over the given generator labels."""
    index = {label: i for i, label in enumerate(labels)}
    letters: list[Letter] = []
    for token in text.split():
        name, _, exp = token.partition("^")
        if name not in index:
            raise UnknownLabel(name)
        try:
            k = int(exp) if exp else 1
        except ValueError:
            raise BadWordSyntax(f"bad exponent in token {token!r}") from None
        if k == 0:
            continue
        letters.extend([(index[name], 1 if k > 0 else -1)] * abs(k))
    return GroupWord(tuple(letters))


def format_word(u: GroupWord, labels: Sequence[str]) -> str:
    if not u:
        return "e"
    return " ".join(labels[g] if s > 0 else f"{labels[g]}^-1" for g, s in u.letters)

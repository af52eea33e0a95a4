"""The group of paths Pth(X) of a finite rack, handled through its images.

Pth(X) is never materialized. Questions about it are answered through the
excess s: Pth(X) -> Inn(X), through the abelianization, or by a bounded
rewriting search.
"""
from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from qcover.algebra.perms import PermGroup, identity, perm_inv, perm_mul
from qcover.algebra.racks import FiniteRack, RackHom, inn_group
from qcover.algebra.smith import SmithResult, smith_normal_form
from qcover.algebra.words import GroupWord, format_word
from qcover.config import CLOSURE_CAP, REWRITE_DEPTH, REWRITE_LENGTH_CAP, REWRITE_STATE_CAP
from qcover.errors import EmptyRack, NotSurjective

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PathPresentation:
    """Fg(X) modulo the relators (x<a)^-1 a^-1 x a, one per pair (x, a)."""

    rack: FiniteRack
    relations: tuple[GroupWord, ...]

    @property
    def generators(self) -> tuple[str, ...]:
        return self.rack.elements

    def relation_matrix(self) -> np.ndarray:
        n = self.rack.order
        if not self.relations:
            return np.zeros((0, n), dtype=object)
        return np.array([r.exponent_sums(n) for r in self.relations], dtype=object)

    def to_text(self) -> str:
        lines = ["generators: " + " ".join(self.generators)]
        lines += [format_word(r, self.generators) for r in self.relations]
        return "\n".join(lines) + "\n"


def pth_presentation(X: FiniteRack) -> PathPresentation:
    rels = []
    for x in range(X.order):
        for a in range(X.order):
            c = X.op(x, a)
            rels.append(GroupWord(((c, -1), (a, -1), (x, 1), (a, 1))))
    return PathPresentation(X, tuple(rels))


def excess(X: FiniteRack, u: GroupWord) -> tuple[int, ...]:
    """Image of u in Inn(X): S_{x1}^{d1} ... read left to right."""
    p = identity(X.order)
    for g, s in u.letters:
        p = perm_mul(p, X.symmetry(g, s))
    return p


def act(X: FiniteRack, x: int, u: GroupWord) -> int:
    """x . u: the endpoint of the trail from x along u."""
    for g, s in u.letters:
        x = X.op(x, g, s)
    return x


def abelianization(P: PathPresentation) -> SmithResult:
    result = smith_normal_form(P.relation_matrix())
    logger.info("ab Pth(%s) = %s", P.rack.name or "?", result.format())
    return result


def pth0_generators(X: FiniteRack, base: int = 0) -> list[GroupWord]:
    """x0 xi^-1 for every i other than the base element."""
    if X.order == 0:
        raise EmptyRack("Pth°(X) needs a non-empty rack")
    return [GroupWord(((base, 1), (i, -1))) for i in range(X.order) if i != base]


def kernel_image_subgroup(f: RackHom, cap: int = CLOSURE_CAP) -> PermGroup:
    """Image of Ker(f->) in Inn(dom f): normal closure of S_a S_b^-1 over Eq(f)."""
    missing = f.missing()
    if missing is not None:
        raise NotSurjective(missing)
    X = f.dom
    seeds = [perm_mul(X.symmetry(a), perm_inv(X.symmetry(b)))
             for a, b in f.kernel_pairs() if a < b]
    K = inn_group(X, cap, materialize=False).normal_closure(seeds)
    if logger.isEnabledFor(logging.DEBUG):
        logger.debug("kernel image for %s -> %s has order %d", X.name or "?", f.cod.name or "?", K.order)
    return K


class Equality(str, Enum):
    EQUAL = "Equal"
    NOT_EQUAL = "NotEqual"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class EqualityVerdict:
    result: Equality
    reason: str
    separator: Optional[tuple[int, ...]] = None
    steps: Optional[int] = None


def _rewrite_search(P: PathPresentation, w: GroupWord, depth: int, length_cap: int,
                    state_cap: int) -> Optional[int]:
    """Depth at which w rewrites to the empty word, or None."""
    relators = set()
    for r in P.relations:
        if not r:
            continue
        for word in (r, ~r):
            letters = word.letters
            for k in range(len(letters)):
                relators.add(letters[k:] + letters[:k])
    relators = sorted(relators)

    start = w.cyclically_reduced().letters
    seen = {start}
    queue = deque([(start, 0)])
    while queue:
        state, d = queue.popleft()
        if not state:
            return d
        if d >= depth:
            continue
        for rel in relators:
            for pos in range(len(state) + 1):
                raw = state[:pos] + rel + state[pos:]
                nxt = GroupWord(raw).cyclically_reduced().letters
                if len(nxt) >= len(raw) or len(nxt) > length_cap or nxt in seen:
                    continue
                if not nxt:
                    return d + 1
                seen.add(nxt)
                if len(seen) > state_cap:
                    logger.warning("rewriting search hit its state budget of %d", state_cap)
                    return None
                queue.append((nxt, d + 1))
    return None


def word_eq3(X: FiniteRack, u: GroupWord, v: GroupWord, depth: int = REWRITE_DEPTH,
             length_cap: int = REWRITE_LENGTH_CAP,
             state_cap: int = REWRITE_STATE_CAP) -> EqualityVerdict:
    """Sound three-valued equality of u and v in Pth(X)."""
    w = u * ~v
    if not w:
        return EqualityVerdict(Equality.EQUAL, "freely equal", steps=0)

    su, sv = excess(X, u), excess(X, v)
    if su != sv:
        return EqualityVerdict(Equality.NOT_EQUAL, "excess images differ",
                               separator=perm_mul(su, perm_inv(sv)))

    P = pth_presentation(X)
    ab = abelianization(P)
    inside, coords = ab.contains_row(w.exponent_sums(X.order))
    if not inside:
        return EqualityVerdict(Equality.NOT_EQUAL, "abelianized images differ", separator=coords)

    steps = _rewrite_search(P, w, depth, length_cap, state_cap)
    if steps is not None:
        return EqualityVerdict(Equality.EQUAL, "rewrites to the empty word", steps=steps)
    logger.warning("word equality undecided within depth %d", depth)
    return EqualityVerdict(Equality.UNKNOWN, f"no rewriting found within depth {depth}")

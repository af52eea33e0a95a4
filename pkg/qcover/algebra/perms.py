"""Finite permutation groups given by generators.

Permutations are tuples ``p`` acting on the right: ``x . p = p[x]``.
Products are read left to right, ``perm_mul(p, q)`` applies ``p`` first,
which matches the convention ``x . (gh) = (x . g) . h`` used for racks.
"""
from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from qcover.config import CLOSURE_CAP
from qcover.errors import ClosureCapExceeded

logger = logging.getLogger(__name__)

Perm = tuple[int, ...]


def identity(degree: int) -> Perm:
    return tuple(range(degree))


def perm_mul(p: Perm, q: Perm) -> Perm:
    """Apply p, then q."""
    return tuple(q[i] for i in p)


def perm_inv(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def perm_pow(p: Perm, k: int) -> Perm:
    if k < 0:
        return perm_pow(perm_inv(p), -k)
    result = identity(len(p))
    base = p
    while k:
        if k & 1:
            result = perm_mul(result, base)
        base = perm_mul(base, base)
        k >>= 1
    return result


def conjugate(p: Perm, g: Perm) -> Perm:
    """g^-1 p g."""
    return perm_mul(perm_mul(perm_inv(g), p), g)


def is_identity(p: Perm) -> bool:
    return all(i == j for i, j in enumerate(p))


def cycles(p: Perm) -> list[tuple[int, ...]]:
    """Non-trivial cycles of p, each starting at its least point."""
    seen = set()
    result = []
    for start in range(len(p)):
        if start in seen:
            continue
        cycle = [start]
        seen.add(start)
        nxt = p[start]
        while nxt != start:
            cycle.append(nxt)
            seen.add(nxt)
            nxt = p[nxt]
        if len(cycle) > 1:
            result.append(tuple(cycle))
    return result


def format_perm(p: Perm, labels: Sequence[str]) -> str:
    cyc = cycles(p)
    if not cyc:
        return "()"
    return "".join("(" + " ".join(labels[i] for i in c) + ")" for c in cyc)


@dataclass(frozen=True)
class PermGroup:
    """Subgroup of Sym(degree) generated by ``generators``.

    The element set is materialized lazily by breadth-first multiplication
    and refuses to grow past ``cap``.
    """

    degree: int
    generators: tuple[Perm, ...]
    cap: int = field(default=CLOSURE_CAP, compare=False)

    def __post_init__(self):
        gens = tuple(sorted({tuple(g) for g in self.generators if not is_identity(g)}))
        object.__setattr__(self, "generators", gens)

    @cached_property
    def elements(self) -> tuple[Perm, ...]:
        e = identity(self.degree)
        seen = {e}
        queue = deque([e])
        while queue:
            g = queue.popleft()
            for s in self.generators:
                h = perm_mul(g, s)
                if h not in seen:
                    seen.add(h)
                    if len(seen) > self.cap:
                        raise ClosureCapExceeded(self.cap)
                    queue.append(h)
        logger.debug("closure of %d generators on %d points: %d elements",
                     len(self.generators), self.degree, len(seen))
        return tuple(sorted(seen))

    @cached_property
    def _element_set(self) -> frozenset[Perm]:
        return frozenset(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def is_trivial(self) -> bool:
        return not self.generators

    def __contains__(self, p: Perm) -> bool:
        return tuple(p) in self._element_set

    def orbit_transversal(self, point: int) -> dict[int, Perm]:
        """Orbit of ``point`` with, for each y, a word u with point . u = y."""
        transversal = {point: identity(self.degree)}
        queue = deque([point])
        while queue:
            y = queue.popleft()
            for s in self.generators:
                z = s[y]
                if z not in transversal:
                    transversal[z] = perm_mul(transversal[y], s)
                    queue.append(z)
        return transversal

    def orbit(self, point: int) -> list[int]:
        return sorted(self.orbit_transversal(point))

    def orbits(self) -> list[list[int]]:
        seen = set()
        result = []
        for x in range(self.degree):
            if x not in seen:
                orb = self.orbit(x)
                seen.update(orb)
                result.append(orb)
        return result

    def stabilizer_generators(self, point: int) -> list[Perm]:
        """Schreier generators of the stabilizer of ``point``."""
        transversal = self.orbit_transversal(point)
        schreier = set()
        for y, u in transversal.items():
            for s in self.generators:
                g = perm_mul(perm_mul(u, s), perm_inv(transversal[s[y]]))
                if not is_identity(g):
                    schreier.add(g)
        return sorted(schreier)

    def stabilizer(self, point: int) -> "PermGroup":
        return PermGroup(self.degree, tuple(self.stabilizer_generators(point)), self.cap)

    def normal_closure(self, seeds: Iterable[Perm]) -> "PermGroup":
        """Smallest subgroup normal in self containing ``seeds``.

        The seed set is closed under conjugation by the generators first,
        then handed over as generators of the subgroup.
        """
        closed = {tuple(s) for s in seeds if not is_identity(s)}
        queue = deque(closed)
        while queue:
            n = queue.popleft()
            for g in self.generators:
                c = conjugate(n, g)
                if c not in closed:
                    closed.add(c)
                    if len(closed) > self.cap:
                        raise ClosureCapExceeded(self.cap)
                    queue.append(c)
        return PermGroup(self.degree, tuple(closed), self.cap)

    def is_normal_in(self, ambient: "PermGroup") -> bool:
        return all(conjugate(h, g) in self for h in self.generators for g in ambient.generators)

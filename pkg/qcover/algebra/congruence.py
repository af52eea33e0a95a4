"""Congruences on finite racks.

A congruence is stored as a canonical parent array: each element points at
the least member of its class.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from qcover.algebra.perms import PermGroup
from qcover.algebra.racks import FiniteRack, RackHom, inn_group, validate_rack
from qcover.errors import DegreeMismatch, IncompatiblePartition, ShapeError

logger = logging.getLogger(__name__)


class UnionFind:
    """Union-find with path compression; the root of a class is its least member."""

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if ra < rb:
            self.parent[rb] = ra
        else:
            self.parent[ra] = rb
        return True

    def roots(self) -> tuple[int, ...]:
        return tuple(self.find(x) for x in range(len(self.parent)))


@dataclass(frozen=True, eq=False)
class Congruence:
    carrier: FiniteRack
    parent: tuple[int, ...]

    @property
    def class_count(self) -> int:
        return len(set(self.parent))

    def same(self, a: int, b: int) -> bool:
        return self.parent[a] == self.parent[b]

    def classes(self) -> list[list[int]]:
        """Classes ordered by least member."""
        blocks: dict[int, list[int]] = {}
        for x, r in enumerate(self.parent):
            blocks.setdefault(r, []).append(x)
        return [blocks[r] for r in sorted(blocks)]

    def class_index(self) -> list[int]:
        """Position of each element's class in :meth:`classes`."""
        roots = sorted(set(self.parent))
        pos = {r: i for i, r in enumerate(roots)}
        return [pos[r] for r in self.parent]

    def pairs(self) -> set[tuple[int, int]]:
        return {(a, b) for block in self.classes() for a in block for b in block}

    def is_discrete(self) -> bool:
        return self.class_count == self.carrier.order

    def __le__(self, other: "Congruence") -> bool:
        return all(other.same(x, r) for x, r in enumerate(self.parent))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Congruence):
            return NotImplemented
        return self.parent == other.parent

    def __hash__(self) -> int:
        return hash(self.parent)

    def format(self) -> str:
        X = self.carrier
        return " ".join("{" + ",".join(X.label(x) for x in block) + "}" for block in self.classes())

    def __repr__(self) -> str:
        return f"Congruence({self.format()})"


def discrete(X: FiniteRack) -> Congruence:
    return Congruence(X, tuple(range(X.order)))


def _close(X: FiniteRack, uf: UnionFind) -> None:
    """Merge until a = b, c = d imply a <^s c = b <^s d."""
    rounds = 0
    changed = True
    while changed:
        changed = False
        rounds += 1
        for x in range(X.order):
            r = uf.find(x)
            if r == x:
                continue
            for table in (X.table_pos, X.table_neg):
                for c in range(X.order):
                    changed |= uf.union(int(table[r, c]), int(table[x, c]))
                    changed |= uf.union(int(table[c, r]), int(table[c, x]))
    logger.debug("congruence closure settled after %d rounds", rounds)


def congruence_from_pairs(X: FiniteRack, pairs: Iterable[tuple[int, int]]) -> Congruence:
    """Smallest congruence containing ``pairs``."""
    uf = UnionFind(X.order)
    for a, b in pairs:
        if not (0 <= a < X.order and 0 <= b < X.order):
            raise ShapeError(f"pair {(a, b)} out of range for order {X.order}")
        uf.union(a, b)
    _close(X, uf)
    return Congruence(X, uf.roots())


def from_partition(X: FiniteRack, blocks: Sequence[Sequence[int]]) -> Congruence:
    """Congruence given by an explicit partition; checked for compatibility."""
    uf = UnionFind(X.order)
    seen = [x for block in blocks for x in block]
    if sorted(seen) != list(range(X.order)):
        raise ShapeError("blocks must partition the carrier")
    for block in blocks:
        for x in block[1:]:
            uf.union(block[0], x)
    C = Congruence(X, uf.roots())
    witness = incompatibility(C)
    if witness is not None:
        raise IncompatiblePartition(witness)
    return C


def incompatibility(C: Congruence):
    """A witness (a, b, c, d) with a = b, c = d but a < c != b < d, or None."""
    X = C.carrier
    p = np.array(C.parent)
    for table in (X.table_pos, X.table_neg):
        # comparing each element against its root on both sides covers all pairs
        left = p[table] != p[table[p, :]]
        right = p[table] != p[table[:, p]]
        for bad, kind in ((left, "left"), (right, "right")):
            hits = np.argwhere(bad)
            if hits.size:
                x, c = (int(v) for v in hits[0])
                if kind == "left":
                    return (x, int(p[x]), c, c)
                return (x, x, c, int(p[c]))
    return None


def quotient(X: FiniteRack, C: Congruence, name: str = "") -> tuple[FiniteRack, RackHom]:
    """X/C on classes ordered by least member, with the canonical surjection."""
    if C.carrier != X:
        raise ShapeError("congruence lives on another rack")
    witness = incompatibility(C)
    if witness is not None:
        raise IncompatiblePartition(witness)
    blocks = C.classes()
    cls = C.class_index()
    reps = [block[0] for block in blocks]
    table = [[cls[X.op(a, b)] for b in reps] for a in reps]
    labels = ["{" + ",".join(X.label(x) for x in block) + "}" if len(block) > 1 else X.label(block[0])
              for block in blocks]
    Q = validate_rack(table, labels, name=name or f"{X.name}/~")
    return Q, RackHom(X, Q, tuple(cls), True)


def kernel_congruence(f: RackHom) -> Congruence:
    """Eq(f) as a congruence on dom(f)."""
    uf = UnionFind(f.dom.order)
    for block in f.fibers():
        for x in block[1:]:
            uf.union(block[0], x)
    return Congruence(f.dom, uf.roots())


def join(C: Congruence, D: Congruence) -> Congruence:
    return congruence_from_pairs(C.carrier, list(C.pairs()) + list(D.pairs()))


def orbit_congruence(X: FiniteRack, H: PermGroup, check_normal: bool = False) -> Congruence:
    """Partition of X into H-orbits."""
    if H.degree != X.order:
        raise DegreeMismatch(X.order, H.degree)
    if check_normal and not H.is_normal_in(inn_group(X, materialize=False)):
        raise ShapeError("subgroup is not normal in Inn(X)")
    uf = UnionFind(X.order)
    for g in H.generators:
        for x in range(X.order):
            uf.union(x, g[x])
    return Congruence(X, uf.roots())


def relation_matrix(n: int, pairs: Iterable[tuple[int, int]]) -> np.ndarray:
    m = np.zeros((n, n), dtype=bool)
    for a, b in pairs:
        m[a, b] = True
    return m


def relations_permute(R: Congruence, S) -> bool:
    """True iff R o S = S o R as relations on the carrier.

    ``S`` is a congruence or an iterable of pairs.
    """
    n = R.carrier.order
    s_pairs = S.pairs() if isinstance(S, Congruence) else S
    r = relation_matrix(n, R.pairs()).astype(np.int64)
    s = relation_matrix(n, s_pairs).astype(np.int64)
    return bool(np.array_equal((r @ s) > 0, (s @ r) > 0))


def internal_relation(X: FiniteRack, pairs: Iterable[tuple[int, int]]) -> set[tuple[int, int]]:
    """Reflexive internal relation generated by ``pairs``: a subrack of X x X
    containing the diagonal."""
    rel = {(x, x) for x in range(X.order)} | {tuple(p) for p in pairs}
    frontier = list(rel)
    while frontier:
        new = []
        for (a, b) in frontier:
            for (c, d) in list(rel):
                for s in (1, -1):
                    for p in ((X.op(a, c, s), X.op(b, d, s)), (X.op(c, a, s), X.op(d, b, s))):
                        if p not in rel:
                            rel.add(p)
                            new.append(p)
        frontier = new
    return rel

"""Seeded random racks, congruences and words.

Random tables almost never satisfy R2, so racks are built from
constructions that always do: trivial and permutation racks, dihedral and
Alexander quandles, augmented racks over small permutation groups, disjoint
unions and quotients, each relabelled by a random permutation.
"""
from __future__ import annotations

from collections import deque
from typing import Sequence

import numpy as np

from qcover.algebra.congruence import Congruence, congruence_from_pairs, quotient
from qcover.algebra.free import FreeQuandleElem, FreeRackElem, fq_normalize
from qcover.algebra.perms import PermGroup, conjugate, identity
from qcover.algebra.racks import (
    FiniteRack,
    alexander_quandle,
    dihedral_quandle,
    permutation_rack,
    trivial_rack,
    unchecked_rack,
    validate_rack,
)
from qcover.algebra.words import GroupWord


SMALL_GROUPS = {
    "Z2": (2, [(1, 0)]),
    "Z3": (3, [(1, 2, 0)]),
    "S3": (3, [(1, 0, 2), (1, 2, 0)]),
    "Z4": (4, [(1, 2, 3, 0)]),
    "V4": (4, [(1, 0, 3, 2), (2, 3, 0, 1)]),
    "D4": (4, [(1, 2, 3, 0), (3, 2, 1, 0)]),
    "A4": (4, [(1, 2, 0, 3), (0, 2, 3, 1)]),
    "S4": (4, [(1, 0, 2, 3), (1, 2, 3, 0)]),
}


def augmented_rack(G: PermGroup, seeds: Sequence[tuple[int, tuple[int, ...]]],
                   on_points: bool = True, max_order: int | None = None) -> FiniteRack:
    """x < y = x . d(y) on G-orbits of pairs (p, h), with d(p, h) = h.

    G acts by (p, h) . g = (p . g, g^-1 h g); without ``on_points`` the
    point coordinate is frozen at 0. Orbits that would push the order past
    ``max_order`` are left out.
    """
    elements: list[tuple[int, tuple[int, ...]]] = []
    for seed in seeds:
        seed = (seed[0] if on_points else 0, tuple(seed[1]))
        if seed in elements:
            continue
        orbit = [seed]
        queue = deque([seed])
        while queue:
            p, h = queue.popleft()
            for g in G.generators:
                nxt = (g[p] if on_points else 0, conjugate(h, g))
                if nxt not in orbit:
                    orbit.append(nxt)
                    queue.append(nxt)
        if max_order is not None and len(elements) + len(orbit) > max_order:
            continue
        elements.extend(orbit)
    if not elements:
        elements = [(0, identity(G.degree))]
    pos = {e: i for i, e in enumerate(elements)}
    table = [[pos[((h[p] if on_points else 0), conjugate(hx, h))] for (_, h) in elements]
             for (p, hx) in elements]
    labels = [f"{p}:{''.join(map(str, h))}" for p, h in elements]
    return validate_rack(table, labels, name="Aug")


def disjoint_union(X: FiniteRack, Y: FiniteRack) -> FiniteRack:
    """X and Y side by side, acting trivially on each other."""
    n, m = X.order, Y.order
    table = np.empty((n + m, n + m), dtype=np.int64)
    table[:n, :n] = X.table_pos
    table[n:, n:] = Y.table_pos + n
    table[:n, n:] = np.arange(n)[:, None]
    table[n:, :n] = np.arange(n, n + m)[:, None]
    labels = [f"L{l}" for l in X.elements] + [f"R{l}" for l in Y.elements]
    return validate_rack(table, labels, name=f"{X.name}+{Y.name}")


def relabel(X: FiniteRack, perm: Sequence[int]) -> FiniteRack:
    """Isomorphic copy in which element i becomes perm[i]."""
    perm = np.asarray(perm)
    inv = np.argsort(perm)
    table = perm[X.table_pos[inv[:, None], inv[None, :]]]
    labels = [X.elements[i] for i in inv]
    return validate_rack(table, labels, name=X.name)


def random_rack(rng: np.random.Generator, max_order: int = 6) -> FiniteRack:
    kind = rng.choice(["trivial", "permutation", "dihedral", "alexander", "augmented",
                       "augmented", "union", "quotient"])
    if kind == "trivial":
        X = trivial_rack(int(rng.integers(1, max_order + 1)))
    elif kind == "permutation":
        X = permutation_rack(rng.permutation(int(rng.integers(1, max_order + 1))).tolist())
    elif kind == "dihedral":
        X = dihedral_quandle(int(rng.integers(1, max_order + 1)))
    elif kind == "alexander" and max_order >= 2:
        n = int(rng.integers(2, max_order + 1))
        units = [t for t in range(1, n) if np.gcd(t, n) == 1]
        X = alexander_quandle(n, int(rng.choice(units)))
    elif kind == "augmented":
        X = random_augmented_rack(rng, max_order)
    elif kind == "union" and max_order >= 2:
        k = int(rng.integers(1, max_order))
        X = disjoint_union(random_rack(rng, k), random_rack(rng, max_order - k))
    else:
        Y = random_rack(rng, max_order)
        X, _ = quotient(Y, random_congruence(rng, Y, max_pairs=1))
    return relabel(X, rng.permutation(X.order).tolist())


def random_augmented_rack(rng: np.random.Generator, max_order: int = 6) -> FiniteRack:
    degree, gens = SMALL_GROUPS[str(rng.choice(sorted(SMALL_GROUPS)))]
    G = PermGroup(degree, tuple(gens))
    elems = G.elements
    seeds = [(int(rng.integers(degree)), elems[int(rng.integers(len(elems)))])
             for _ in range(int(rng.integers(1, 4)))]
    return augmented_rack(G, seeds, on_points=bool(rng.integers(2)), max_order=max_order)


def random_pairs(rng: np.random.Generator, n: int, k: int) -> list[tuple[int, int]]:
    return [(int(rng.integers(n)), int(rng.integers(n))) for _ in range(k)]


def random_congruence(rng: np.random.Generator, X: FiniteRack, max_pairs: int = 2) -> Congruence:
    return congruence_from_pairs(X, random_pairs(rng, X.order, int(rng.integers(0, max_pairs + 1))))


def mutate_rack(X: FiniteRack, rng: np.random.Generator) -> FiniteRack:
    """Swap two entries of one column: R1 survives, R2 usually does not."""
    if X.order < 2:
        return X
    t = X.table_pos.copy()
    y = int(rng.integers(X.order))
    i, j = rng.choice(X.order, size=2, replace=False)
    t[i, y], t[j, y] = t[j, y], t[i, y]
    return unchecked_rack(t, X.elements, name=f"{X.name}*")


def random_word(rng: np.random.Generator, gens: int, max_len: int = 8) -> GroupWord:
    length = int(rng.integers(0, max_len + 1))
    return GroupWord(tuple((int(rng.integers(gens)), int(rng.choice([1, -1]))) for _ in range(length)))


def random_fr_elem(rng: np.random.Generator, gens: int, max_len: int = 6) -> FreeRackElem:
    return FreeRackElem(int(rng.integers(gens)), random_word(rng, gens, max_len))


def random_fq_elem(rng: np.random.Generator, gens: int, max_len: int = 6) -> FreeQuandleElem:
    head = int(rng.integers(gens))
    return fq_normalize(head, random_word(rng, gens, max_len))


def random_kernel_word(rng: np.random.Generator, f: Sequence[int], max_len: int = 8) -> GroupWord:
    """v v'^-1 where v' replaces letters of v by letters with the same image."""
    gens = len(f)
    fibers: dict[int, list[int]] = {}
    for g, fg in enumerate(f):
        fibers.setdefault(fg, []).append(g)
    v = random_word(rng, gens, max_len)
    v_prime = GroupWord(tuple((int(rng.choice(fibers[f[g]])), s) for g, s in v.letters))
    return v * ~v_prime

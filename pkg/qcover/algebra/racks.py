"""Finite racks and quandles as validated operation tables.

Tables are oriented ``table[x][y] = x < y``: the row is the element acted
upon, the column the acting element. ``x <^-1 y`` is never supplied, it is
derived by inverting each column permutation.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from qcover.algebra.perms import Perm, PermGroup, perm_inv, perm_mul
from qcover.config import CLOSURE_CAP
from qcover.errors import (
    NotAGroup,
    NotAHomomorphism,
    NotBijectiveColumn,
    SelfDistributivityFail,
    ShapeError,
    UnknownLabel,
)

logger = logging.getLogger(__name__)


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=np.int64)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class FiniteRack:
    """A finite rack. Build it with :func:`validate_rack`."""

    elements: tuple[str, ...]
    table_pos: np.ndarray
    table_neg: np.ndarray
    name: str = ""

    @property
    def order(self) -> int:
        return len(self.elements)

    def op(self, x: int, y: int, sign: int = 1) -> int:
        table = self.table_pos if sign > 0 else self.table_neg
        return int(table[x, y])

    def power(self, x: int, y: int, k: int) -> int:
        """x <^k y."""
        for _ in range(abs(k)):
            x = self.op(x, y, 1 if k > 0 else -1)
        return x

    def symmetry(self, y: int, sign: int = 1) -> Perm:
        """S_y : x -> x < y (or its inverse for sign -1)."""
        table = self.table_pos if sign > 0 else self.table_neg
        return tuple(int(v) for v in table[:, y])

    def symmetries(self) -> list[Perm]:
        return [self.symmetry(y) for y in range(self.order)]

    def index(self, label: str) -> int:
        try:
            return self.elements.index(label)
        except ValueError:
            raise UnknownLabel(label) from None

    def label(self, i: int) -> str:
        return self.elements[i]

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiniteRack):
            return NotImplemented
        return self.elements == other.elements and np.array_equal(self.table_pos, other.table_pos)

    def __hash__(self) -> int:
        return hash((self.elements, self.table_pos.tobytes()))

    def __repr__(self) -> str:
        return f"FiniteRack({self.name or '?'}, order={self.order})"


def _invert_columns(table: np.ndarray) -> np.ndarray:
    n = table.shape[0]
    neg = np.empty_like(table)
    neg[table, np.arange(n)[None, :]] = np.arange(n)[:, None]
    return neg


def first_r2_failure(table: np.ndarray) -> Optional[tuple[int, int, int]]:
    # One slice per z keeps memory at n^2 for the larger covers.
    for z in range(table.shape[0]):
        col = table[:, z]
        lhs = table[table, z]
        rhs = table[col[:, None], col[None, :]]
        bad = np.argwhere(lhs != rhs)
        if bad.size:
            x, y = bad[0]
            return int(x), int(y), z
    return None


def validate_rack(table, labels: Optional[Sequence[str]] = None, name: str = "",
                  row_acts: bool = False) -> FiniteRack:
    """Validate ``table`` against R1 and R2 and build a FiniteRack.

    With ``row_acts`` the table is read as printed with the acting element
    on the rows and is transposed first.
    """
    try:
        t = np.array(table, dtype=np.int64)
    except (TypeError, ValueError) as e:
        raise ShapeError(f"table is not an integer array: {e}") from None
    if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
        raise ShapeError(f"table must be a non-empty square array, got shape {t.shape}")
    n = t.shape[0]
    if t.min() < 0 or t.max() >= n:
        raise ShapeError(f"table entries must lie in 0..{n - 1}")
    if labels is None:
        labels = [str(i) for i in range(n)]
    labels = tuple(str(l) for l in labels)
    if len(labels) != n or len(set(labels)) != n:
        raise ShapeError(f"need {n} distinct labels, got {list(labels)}")
    if row_acts:
        t = t.T.copy()

    for y in range(n):
        if not np.array_equal(np.sort(t[:, y]), np.arange(n)):
            raise NotBijectiveColumn(y)
    failure = first_r2_failure(t)
    if failure is not None:
        raise SelfDistributivityFail(*failure)

    logger.debug("validated rack %s of order %d", name or "?", n)
    return FiniteRack(labels, _frozen(t), _frozen(_invert_columns(t)), name)


def unchecked_rack(table, labels: Sequence[str], name: str = "") -> FiniteRack:
    """Build a FiniteRack without checking R2. Only for fault injection."""
    t = np.array(table, dtype=np.int64)
    return FiniteRack(tuple(labels), _frozen(t), _frozen(_invert_columns(t)), name)


def classify(X: FiniteRack) -> dict[str, bool]:
    t = X.table_pos
    idx = np.arange(X.order)
    return {
        "is_quandle": bool(np.all(t[idx, idx] == idx)),
        "is_involutive": bool(np.array_equal(t, X.table_neg)),
        "is_trivial": bool(np.all(t == idx[:, None])),
    }


def trivial_rack(n: int, labels: Optional[Sequence[str]] = None) -> FiniteRack:
    return validate_rack(np.repeat(np.arange(n)[:, None], n, axis=1), labels, name=f"T{n}")


def permutation_rack(sigma: Sequence[int], labels: Optional[Sequence[str]] = None) -> FiniteRack:
    """x < y = sigma(x) for every y."""
    n = len(sigma)
    return validate_rack(np.repeat(np.asarray(sigma)[:, None], n, axis=1), labels,
                         name=f"Perm{tuple(sigma)}")


def alexander_quandle(n: int, t: int) -> FiniteRack:
    """Z_n with x < y = t x + (1 - t) y, t a unit mod n."""
    x = np.arange(n)
    return validate_rack((t * x[:, None] + (1 - t) * x[None, :]) % n, name=f"Alex({n},{t})")


def dihedral_quandle(n: int) -> FiniteRack:
    """R_n: Z_n with x < y = 2y - x."""
    x = np.arange(n)
    return validate_rack((2 * x[None, :] - x[:, None]) % n, name=f"R{n}")


def _check_group(cayley: np.ndarray) -> int:
    n = cayley.shape[0]
    idx = np.arange(n)
    # associativity: (ab)c == a(bc)
    lhs = cayley[cayley[:, :, None], idx[None, None, :]]
    rhs = cayley[idx[:, None, None], cayley[None, :, :]]
    bad = np.argwhere(lhs != rhs)
    if bad.size:
        raise NotAGroup("associativity", tuple(int(v) for v in bad[0]))
    ids = [e for e in range(n) if np.array_equal(cayley[e], idx) and np.array_equal(cayley[:, e], idx)]
    if not ids:
        raise NotAGroup("identity", ())
    e = ids[0]
    for a in range(n):
        if not np.any(cayley[a] == e):
            raise NotAGroup("inverse", (a,))
    return e


def conj_of_group(cayley, labels: Optional[Sequence[str]] = None, name: str = "") -> FiniteRack:
    """Conj(G): x < a = a^-1 x a."""
    c = np.array(cayley, dtype=np.int64)
    if c.ndim != 2 or c.shape[0] != c.shape[1] or c.shape[0] == 0:
        raise ShapeError(f"Cayley table must be a non-empty square array, got shape {c.shape}")
    n = c.shape[0]
    if c.min() < 0 or c.max() >= n:
        raise ShapeError(f"Cayley entries must lie in 0..{n - 1}")
    e = _check_group(c)
    inv = np.array([int(np.argmax(c[a] == e)) for a in range(n)])
    # table[x][a] = a^-1 x a
    table = c[c[inv[None, :], np.arange(n)[:, None]], np.arange(n)[None, :]]
    return validate_rack(table, labels, name=f"Conj({name})" if name else "Conj")


def commutator_subgroup(cayley) -> list[int]:
    """[G, G] of a Cayley table, by closing the commutators under products."""
    c = np.array(cayley, dtype=np.int64)
    e = _check_group(c)
    n = c.shape[0]
    inv = [int(np.argmax(c[a] == e)) for a in range(n)]
    members = {int(c[c[inv[a], inv[b]], c[a, b]]) for a in range(n) for b in range(n)}
    frontier = list(members)
    while frontier:
        new = []
        for x in frontier:
            for y in list(members):
                for z in (int(c[x, y]), int(c[y, x])):
                    if z not in members:
                        members.add(z)
                        new.append(z)
        frontier = new
    return sorted(members)


def abelianization_order(cayley) -> int:
    """|G / [G, G]|."""
    return len(cayley) // len(commutator_subgroup(cayley))


@dataclass(frozen=True, eq=False)
class RackHom:
    dom: FiniteRack
    cod: FiniteRack
    map: tuple[int, ...]
    surjective: bool

    def __call__(self, x: int) -> int:
        return self.map[x]

    def kernel_pairs(self) -> list[tuple[int, int]]:
        """Eq(f) as a list of pairs, diagonal included."""
        return [(a, b) for a in range(self.dom.order) for b in range(self.dom.order)
                if self.map[a] == self.map[b]]

    def fibers(self) -> list[list[int]]:
        fibers: dict[int, list[int]] = {}
        for x, fx in enumerate(self.map):
            fibers.setdefault(fx, []).append(x)
        return [fibers[k] for k in sorted(fibers)]

    def missing(self) -> Optional[int]:
        hit = set(self.map)
        return next((y for y in range(self.cod.order) if y not in hit), None)


def check_hom(dom: FiniteRack, cod: FiniteRack, mapping: Sequence[int]) -> RackHom:
    m = np.array(mapping, dtype=np.int64)
    if m.shape != (dom.order,) or (m.size and (m.min() < 0 or m.max() >= cod.order)):
        raise ShapeError(f"map must list {dom.order} indices into 0..{cod.order - 1}")
    lhs = m[dom.table_pos]
    rhs = cod.table_pos[m[:, None], m[None, :]]
    bad = np.argwhere(lhs != rhs)
    if bad.size:
        raise NotAHomomorphism(int(bad[0][0]), int(bad[0][1]))
    surjective = len(set(m.tolist())) == cod.order
    return RackHom(dom, cod, tuple(int(v) for v in m), surjective)


def identity_hom(X: FiniteRack) -> RackHom:
    return RackHom(X, X, tuple(range(X.order)), True)


def compose(f: RackHom, g: RackHom) -> RackHom:
    """g after f."""
    return check_hom(f.dom, g.cod, [g.map[v] for v in f.map])


def subrack(X: FiniteRack, members: Iterable[int], name: str = "") -> tuple[FiniteRack, RackHom]:
    """Restriction of X to ``members`` with the inclusion."""
    members = sorted(set(members))
    pos = {m: i for i, m in enumerate(members)}
    try:
        table = [[pos[X.op(x, y)] for y in members] for x in members]
        for x in members:
            for y in members:
                pos[X.op(x, y, -1)]
    except KeyError:
        raise ShapeError(f"{[X.label(m) for m in members]} is not closed under the operations") from None
    S = validate_rack(table, [X.label(m) for m in members], name=name)
    return S, RackHom(S, X, tuple(members), len(members) == X.order)


def product(X: FiniteRack, Y: FiniteRack) -> FiniteRack:
    n, m = X.order, Y.order
    i = np.arange(n * m)
    xs, ys = i // m, i % m
    table = X.table_pos[xs[:, None], xs[None, :]] * m + Y.table_pos[ys[:, None], ys[None, :]]
    labels = [f"({X.label(a)},{Y.label(b)})" for a, b in zip(xs, ys)]
    return validate_rack(table, labels, name=f"{X.name}x{Y.name}")


def pullback(f: RackHom, g: RackHom) -> tuple[FiniteRack, RackHom, RackHom]:
    """A x_C B with its two projections; f and g share their codomain."""
    if f.cod != g.cod:
        raise ShapeError("pullback needs a common codomain")
    pairs = [(a, b) for a in range(f.dom.order) for b in range(g.dom.order) if f.map[a] == g.map[b]]
    pos = {p: i for i, p in enumerate(pairs)}
    table = [[pos[(f.dom.op(a, c), g.dom.op(b, d))] for (c, d) in pairs] for (a, b) in pairs]
    labels = [f"({f.dom.label(a)},{g.dom.label(b)})" for a, b in pairs]
    P = validate_rack(table, labels, name=f"{f.dom.name}x_{f.cod.name}{g.dom.name}")
    p1 = check_hom(P, f.dom, [a for a, _ in pairs])
    p2 = check_hom(P, g.dom, [b for _, b in pairs])
    return P, p1, p2


def inn_group(X: FiniteRack, cap: int = CLOSURE_CAP, materialize: bool = True) -> PermGroup:
    """Inn(X), generated by the symmetries S_y."""
    G = PermGroup(X.order, tuple(X.symmetries()), cap)
    if materialize:
        logger.info("Inn(%s) has order %d", X.name or "?", G.order)
    return G


def transvection_group(X: FiniteRack, cap: int = CLOSURE_CAP) -> PermGroup:
    """Inn°(X), generated by S_a S_b^-1."""
    gens = [perm_mul(X.symmetry(a), perm_inv(X.symmetry(b)))
            for a in range(X.order) for b in range(X.order)]
    return PermGroup(X.order, tuple(gens), cap)

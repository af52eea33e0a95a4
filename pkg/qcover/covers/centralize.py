"""Centralization of extensions and the reflection of racks into quandles."""
from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass

from qcover.algebra.congruence import (
    Congruence,
    UnionFind,
    congruence_from_pairs,
    from_partition,
    kernel_congruence,
    orbit_congruence,
    quotient,
)
from qcover.algebra.paths import kernel_image_subgroup
from qcover.algebra.racks import FiniteRack, RackHom, check_hom, classify, first_r2_failure
from qcover.config import CLOSURE_CAP
from qcover.covers.components import require_surjective
from qcover.covers.coverings import is_covering
from qcover.errors import MethodDisagreement, SelfDistributivityFail, ShapeError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Centralization:
    congruence: Congruence
    unit: RackHom
    central: RackHom
    methods: dict


def _by_generating_pairs(f: RackHom) -> Congruence:
    X = f.dom
    pairs = [(X.op(X.op(x, a), b, -1), x) for a, b in f.kernel_pairs() if a != b
             for x in range(X.order)]
    return congruence_from_pairs(X, pairs)


def _by_horn_endpoints(f: RackHom) -> Congruence:
    """Endpoints of all f-horns, by BFS on pairs from the diagonal."""
    X = f.dom
    steps = [(a, b) for a, b in f.kernel_pairs()]
    reached = {(x, x) for x in range(X.order)}
    queue = deque(reached)
    while queue:
        u, v = queue.popleft()
        for a, b in steps:
            for d in (1, -1):
                nxt = (X.op(u, a, d), X.op(v, b, d))
                if nxt not in reached:
                    reached.add(nxt)
                    queue.append(nxt)
    uf = UnionFind(X.order)
    for u, v in reached:
        uf.union(u, v)
    return Congruence(X, uf.roots())


def centralize(f: RackHom, cap: int = CLOSURE_CAP) -> Centralization:
    """C1(f) by three routes, the unit eta1 and the covering F1(f)."""
    require_surjective(f)
    X = f.dom
    routes = {
        "generating_pairs": _by_generating_pairs(f),
        "horn_endpoints": _by_horn_endpoints(f),
        "kernel_orbits": orbit_congruence(X, kernel_image_subgroup(f, cap)),
    }
    c1 = routes["generating_pairs"]
    methods = {name: C.format() for name, C in routes.items()}
    if any(C != c1 for C in routes.values()):
        raise MethodDisagreement("centralize", methods)
    if not c1 <= kernel_congruence(f):
        raise MethodDisagreement("centralize", {**methods, "below_kernel_pair": False})

    Y, unit = quotient(X, c1, name=f"F1({X.name})")
    reps = [block[0] for block in c1.classes()]
    central = check_hom(Y, f.cod, [f.map[r] for r in reps])
    if not is_covering(central, cap).verdict:
        raise MethodDisagreement("centralize", {**methods, "F1_is_covering": False})
    logger.info("C1 for %s -> %s has %d classes", X.name or "?", f.cod.name or "?", c1.class_count)
    return Centralization(c1, unit, central, methods)


def quandle_congruence(X: FiniteRack) -> Congruence:
    """Q_X: x ~ x <^k x, by following x -> x < x around its cycle.

    On a table that is not a rack the walk can fall into a cycle that misses
    its start; that is reported with an R2 witness.
    """
    blocks = []
    seen = set()
    for x in range(X.order):
        if x in seen:
            continue
        cycle = [x]
        y = X.op(x, x)
        while y != x:
            if y in seen or y in cycle:
                witness = first_r2_failure(X.table_pos)
                if witness is None:
                    raise ShapeError(f"x -> x < x is not a bijection at {X.label(y)}")
                raise SelfDistributivityFail(*witness)
            cycle.append(y)
            y = X.op(y, y)
        seen.update(cycle)
        blocks.append(cycle)
    return from_partition(X, blocks)


def frq(X: FiniteRack, cap: int = CLOSURE_CAP) -> tuple[FiniteRack, RackHom]:
    """Frq(X) = X/Q_X with its unit; the unit is checked to be a covering."""
    Q, unit = quotient(X, quandle_congruence(X), name=f"Frq({X.name})")
    if not classify(Q)["is_quandle"]:
        raise MethodDisagreement("frq", {"quotient_is_quandle": False})
    if not is_covering(unit, cap).verdict:
        raise MethodDisagreement("frq", {"unit_is_covering": False})
    return Q, unit

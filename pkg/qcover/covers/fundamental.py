"""Finite shadows of the weakly universal cover and the fundamental groupoid.

Both are Inn-truncated: paths are only seen through their image in Inn(X),
so the endpoint cover is X x| Inn(X) rather than X x| Pth(X), and loop groups
are replaced by stabilizers in Inn(X).
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from qcover.algebra.perms import Perm, perm_mul
from qcover.algebra.racks import FiniteRack, RackHom, check_hom, inn_group, validate_rack
from qcover.config import CLOSURE_CAP
from qcover.covers.components import pi0
from qcover.covers.coverings import is_covering
from qcover.errors import BadPointing, MethodDisagreement

logger = logging.getLogger(__name__)

TRUNCATION = "Inn-truncated"


@dataclass(frozen=True)
class EndpointCover:
    rack: FiniteRack
    endpoint: RackHom
    inn_elements: tuple[Perm, ...]
    truncation: str = TRUNCATION


def endpoint_cover(X: FiniteRack, cap: int = CLOSURE_CAP) -> EndpointCover:
    """(a, g) < (b, h) = (a, g S_{b.h}) on X x Inn(X), with (a, g) -> a.g."""
    inn = inn_group(X, cap).elements
    m = len(inn)
    pos = {g: i for i, g in enumerate(inn)}
    syms = X.symmetries()
    # right_mul[i][e] = index of inn[i] S_e
    right_mul = np.array([[pos[perm_mul(g, syms[e])] for e in range(X.order)] for g in inn],
                         dtype=np.int64)
    inn_arr = np.array(inn, dtype=np.int64).reshape(m, X.order)
    idx = np.arange(X.order * m)
    heads, gs = idx // m, idx % m
    ends = inn_arr[gs, heads]
    table = heads[:, None] * m + right_mul[gs[:, None], ends[None, :]]
    labels = [f"{X.label(int(a))}|{int(g)}" for a, g in zip(heads, gs)]
    E = validate_rack(table, labels, name=f"{X.name}x|Inn")
    endpoint = check_hom(E, X, [int(v) for v in ends])
    if not is_covering(endpoint, cap).verdict:
        raise MethodDisagreement("endpoint_cover", {"endpoint_is_covering": False})
    logger.info("endpoint cover of %s is %s: weak universality is not claimed",
                X.name or "?", TRUNCATION)
    return EndpointCover(E, endpoint, inn)


@dataclass(frozen=True)
class SkeletonComponent:
    members: tuple[int, ...]
    representative: int
    loop_image_generators: tuple[Perm, ...]
    loop_image_order: int
    orbit_size: int


@dataclass(frozen=True)
class SkeletonReport:
    rack: FiniteRack
    components: tuple[SkeletonComponent, ...]
    inn_order: int
    truncation: str = TRUNCATION


def fundamental_skeleton(X: FiniteRack, pointing: Optional[Sequence[int]] = None,
                         cap: int = CLOSURE_CAP) -> SkeletonReport:
    """One vertex per component; the Inn-image of Loop_a as a stabilizer."""
    co = pi0(X).congruence
    blocks = co.classes()
    if pointing is None:
        pointing = [block[0] for block in blocks]
    pointing = list(pointing)
    if len(pointing) != len(blocks):
        raise BadPointing(f"need {len(blocks)} representatives, got {len(pointing)}")
    by_block: dict[int, int] = {}
    for rep in pointing:
        if not 0 <= rep < X.order:
            raise BadPointing(f"representative {rep} out of range")
        root = co.parent[rep]
        if root in by_block:
            raise BadPointing(f"{X.label(rep)} and {X.label(by_block[root])} lie in one component")
        by_block[root] = rep

    inn = inn_group(X, cap)
    components = []
    for block in blocks:
        rep = by_block[block[0]]
        stab = inn.stabilizer(rep)
        components.append(SkeletonComponent(tuple(block), rep, stab.generators, stab.order, len(block)))
    logger.info("skeleton of %s reports loop groups %s", X.name or "?", TRUNCATION)
    return SkeletonReport(X, tuple(components), inn.order)

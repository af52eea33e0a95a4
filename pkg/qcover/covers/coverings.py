"""Coverings (central extensions), horns and membranes.

A surjection f: A -> B is a covering when x < a <^-1 b = x whenever
f(a) = f(b). The verdict is computed twice, by the triple test and by the
triviality of the kernel image in Inn(A); the two must agree.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from qcover.algebra.paths import act, kernel_image_subgroup
from qcover.algebra.racks import RackHom
from qcover.algebra.words import GroupWord
from qcover.config import CLOSURE_CAP
from qcover.covers.components import require_surjective
from qcover.errors import InvalidHorn, MethodDisagreement

logger = logging.getLogger(__name__)

Step = tuple[int, int, int]


@dataclass(frozen=True)
class CoveringReport:
    verdict: bool
    witness: Optional[tuple[int, int, int]] = None
    method_agreement: dict = field(default_factory=dict)


def _triple_witness(f: RackHom) -> Optional[tuple[int, int, int]]:
    """Least (x, a, b) with f(a) = f(b) and x < a != x < b."""
    t = f.dom.table_pos
    best = None
    for fiber in f.fibers():
        first = fiber[0]
        bad = np.argwhere(t[:, fiber] != t[:, [first]])
        if bad.size:
            x, k = (int(v) for v in bad[0])
            cand = (x, first, fiber[k])
            best = cand if best is None or cand < best else best
    return best


def is_covering(f: RackHom, cap: int = CLOSURE_CAP) -> CoveringReport:
    require_surjective(f)
    witness = _triple_witness(f)
    by_triples = witness is None
    by_kernel = kernel_image_subgroup(f, cap).is_trivial
    methods = {"triple_loop": by_triples, "kernel_image": by_kernel}
    if by_triples != by_kernel:
        raise MethodDisagreement("is_covering", methods)
    logger.info("covering verdict for %s -> %s: %s", f.dom.name or "?", f.cod.name or "?", by_triples)
    return CoveringReport(by_triples, witness, methods)


@dataclass(frozen=True)
class Horn:
    """Two primitive trails from ``base`` whose steps are f-related."""

    base: int
    steps: tuple[Step, ...]
    hom: RackHom

    def top(self) -> GroupWord:
        return GroupWord(tuple((a, d) for a, _, d in self.steps))

    def bottom(self) -> GroupWord:
        return GroupWord(tuple((b, d) for _, b, d in self.steps))


@dataclass(frozen=True)
class Membrane:
    """Like a horn, but the two trails start at the f-related pair ``base``."""

    base: tuple[int, int]
    steps: tuple[Step, ...]
    hom: RackHom


@dataclass(frozen=True)
class HornAnalysis:
    endpoints: tuple[int, int]
    closes: bool
    retracts: bool


@dataclass(frozen=True)
class MembraneAnalysis:
    endpoints: tuple[int, int]
    closes: bool
    top_is_loop: bool
    bottom_is_loop: bool

    @property
    def is_cylinder(self) -> bool:
        return self.top_is_loop and self.bottom_is_loop


def _check_steps(f: RackHom, steps) -> None:
    for i, (a, b, _) in enumerate(steps):
        if f.map[a] != f.map[b]:
            raise InvalidHorn(i)


def horn_analyze(h: Horn) -> HornAnalysis:
    _check_steps(h.hom, h.steps)
    X = h.hom.dom
    top = bottom = h.base
    retracts = True
    for a, b, d in h.steps:
        top, bottom = X.op(top, a, d), X.op(bottom, b, d)
        retracts &= top == bottom
    return HornAnalysis((top, bottom), top == bottom, retracts)


def membrane_analyze(m: Membrane) -> MembraneAnalysis:
    f = m.hom
    a0, b0 = m.base
    if f.map[a0] != f.map[b0]:
        raise InvalidHorn(-1)
    _check_steps(f, m.steps)
    X = f.dom
    top = act(X, a0, GroupWord(tuple((a, d) for a, _, d in m.steps)))
    bottom = act(X, b0, GroupWord(tuple((b, d) for _, b, d in m.steps)))
    return MembraneAnalysis((top, bottom), top == bottom, top == a0, bottom == b0)


def horn_from_witness(f: RackHom, witness: tuple[int, int, int]) -> Horn:
    x, a, b = witness
    return Horn(x, ((a, b, 1),), f)


def sample_horn(f: RackHom, rng: np.random.Generator, max_len: int = 6) -> Horn:
    """Uniform steps from Eq(f); length geometric with mean 3, capped."""
    pairs = f.kernel_pairs()
    length = min(int(rng.geometric(1 / 3)), max_len)
    steps = []
    for _ in range(length):
        a, b = pairs[int(rng.integers(len(pairs)))]
        steps.append((a, b, int(rng.choice([1, -1]))))
    return Horn(int(rng.integers(f.dom.order)), tuple(steps), f)

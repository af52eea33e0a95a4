"""Connected components and trivial/normal extensions."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional

from qcover.algebra.congruence import Congruence, orbit_congruence, quotient
from qcover.algebra.racks import FiniteRack, RackHom, inn_group, pullback, subrack
from qcover.errors import NotSurjective

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Components:
    congruence: Congruence
    rack: FiniteRack
    unit: RackHom


@dataclass(frozen=True)
class ExtensionVerdict:
    verdict: bool
    witness: Optional[tuple] = None
    detail: str = ""


def require_surjective(f: RackHom) -> None:
    missing = f.missing()
    if missing is not None:
        raise NotSurjective(missing)


def pi0(X: FiniteRack) -> Components:
    """Co as the Inn(X)-orbit congruence, pi0(X) and the unit eta_X."""
    co = orbit_congruence(X, inn_group(X, materialize=False))
    Y, eta = quotient(X, co, name=f"pi0({X.name})")
    logger.info("%s has %d connected components", X.name or "?", co.class_count)
    return Components(co, Y, eta)


def connected_component(X: FiniteRack, a: int) -> FiniteRack:
    co = pi0(X).congruence
    members = [x for x in range(X.order) if co.same(x, a)]
    C, _ = subrack(X, members, name=f"C_{X.label(a)}")
    return C


def is_trivial_ext(f: RackHom) -> ExtensionVerdict:
    """Eq(f) meets Co(dom f) only in the diagonal."""
    require_surjective(f)
    co = pi0(f.dom).congruence
    for block in co.classes():
        seen: dict[int, int] = {}
        for x in block:
            if f.map[x] in seen:
                witness = (seen[f.map[x]], x)
                return ExtensionVerdict(False, witness, "connected elements with equal image")
            seen[f.map[x]] = x
    return ExtensionVerdict(True)


def is_normal_ext(f: RackHom) -> ExtensionVerdict:
    """Both projections of the kernel pair are trivial extensions."""
    require_surjective(f)
    _, p1, p2 = pullback(f, f)
    for name, proj in (("first", p1), ("second", p2)):
        verdict = is_trivial_ext(proj)
        if not verdict.verdict:
            # two connected elements of Eq(f), given as pairs of dom(f)
            i, j = verdict.witness
            membrane = ((p1.map[i], p2.map[i]), (p1.map[j], p2.map[j]))
            return ExtensionVerdict(False, membrane, f"{name} kernel-pair projection is not trivial")
    return ExtensionVerdict(True)

"""The property batteries run by ``qcover suite``.

Each property draws a case from a seeded generator, checks it, and on
failure is shrunk greedily: racks shrink to proper subracks, horns lose
steps, as long as the failure persists.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Iterator, Optional

import numpy as np
from sympy.utilities.iterables import multiset_partitions

from qcover.algebra.congruence import (
    Congruence,
    congruence_from_pairs,
    discrete,
    from_partition,
    internal_relation,
    join,
    kernel_congruence,
    orbit_congruence,
    quotient,
    relations_permute,
)
from qcover.algebra.free import (
    FreeQuandleElem,
    FreeRackElem,
    NotInKernel,
    SymmetricPairWitness,
    fq_op,
    fr_op,
    kernel_pairing,
)
from qcover.algebra.paths import (
    Equality,
    abelianization,
    act,
    excess,
    kernel_image_subgroup,
    pth_presentation,
    word_eq3,
)
from qcover.algebra.perms import conjugate, identity, perm_mul
from qcover.algebra.racks import (
    FiniteRack,
    RackHom,
    check_hom,
    classify,
    compose,
    identity_hom,
    inn_group,
    pullback,
    unchecked_rack,
    validate_rack,
)
from qcover.algebra.words import GroupWord, fg_map, word_char
from qcover.covers.centralize import centralize, frq, quandle_congruence
from qcover.covers.components import is_normal_ext, is_trivial_ext, pi0
from qcover.covers.coverings import Horn, horn_analyze, horn_from_witness, is_covering, sample_horn
from qcover.covers.fundamental import endpoint_cover
from qcover.errors import IncompatiblePartition, QcoverError
from qcover.schemas import RunConfig
from qcover.suite import generators as gen

logger = logging.getLogger(__name__)


class Failure(Exception):
    """A property does not hold for the case at hand."""


class Skip(Exception):
    """The case does not meet the property's hypotheses."""


@dataclass
class SuiteContext:
    config: RunConfig
    mutate: bool = False

    def rack(self, rng: np.random.Generator, max_order: int = 6) -> FiniteRack:
        X = gen.random_rack(rng, max_order)
        return gen.mutate_rack(X, rng) if self.mutate else X


@dataclass(frozen=True)
class Property:
    name: str
    module: str
    generate: Callable[[np.random.Generator, SuiteContext], Any]
    check: Callable[[Any, SuiteContext], None]
    shrink: Callable[[Any], Iterator[Any]] = field(default=lambda case: iter(()))
    # RunConfig field holding the sample count, when not ``samples``
    samples_field: Optional[str] = None


# --- cases and shrinking ---

@dataclass(frozen=True)
class SurjCase:
    """X with the surjection X -> X/C, C generated by ``pairs``."""

    rack: FiniteRack
    pairs: tuple[tuple[int, int], ...]
    seed: int = 0

    def hom(self) -> RackHom:
        _, f = quotient(self.rack, congruence_from_pairs(self.rack, self.pairs))
        return f

    def __str__(self) -> str:
        X = self.rack
        return (f"rack {X.elements} table {X.table_pos.tolist()} "
                f"pairs {[(X.label(a), X.label(b)) for a, b in self.pairs]}")


def _closure(X: FiniteRack, members: set[int]) -> set[int]:
    members = set(members)
    frontier = list(members)
    while frontier:
        new = []
        for x in frontier:
            for y in list(members):
                for s in (1, -1):
                    for z in (X.op(x, y, s), X.op(y, x, s)):
                        if z not in members:
                            members.add(z)
                            new.append(z)
        frontier = new
    return members


def smaller_subracks(X: FiniteRack) -> Iterator[tuple[FiniteRack, dict[int, int]]]:
    """Proper subracks generated by all but one element, with index maps."""
    seen = set()
    for x in range(X.order):
        members = _closure(X, set(range(X.order)) - {x})
        key = frozenset(members)
        if not members or len(members) == X.order or key in seen:
            continue
        seen.add(key)
        kept = sorted(members)
        pos = {m: i for i, m in enumerate(kept)}
        table = [[pos[X.op(a, b)] for b in kept] for a in kept]
        yield unchecked_rack(table, [X.label(m) for m in kept], name=X.name), pos


def shrink_rack(X: FiniteRack) -> Iterator[FiniteRack]:
    for S, _ in smaller_subracks(X):
        yield S


def shrink_surj(case: SurjCase) -> Iterator[SurjCase]:
    for k in range(len(case.pairs)):
        yield SurjCase(case.rack, case.pairs[:k] + case.pairs[k + 1:], case.seed)
    for S, pos in smaller_subracks(case.rack):
        pairs = tuple((pos[a], pos[b]) for a, b in case.pairs if a in pos and b in pos)
        yield SurjCase(S, pairs, case.seed)


def shrink_horn(h: Horn, fails: Callable[[Horn], bool]) -> Horn:
    """Drop steps one at a time while the horn keeps failing."""
    changed = True
    while changed:
        changed = False
        for k in range(len(h.steps)):
            cand = Horn(h.base, h.steps[:k] + h.steps[k + 1:], h.hom)
            if fails(cand):
                h, changed = cand, True
                break
    return h


def _surj_case(max_order: int = 6) -> Callable[[np.random.Generator, SuiteContext], SurjCase]:
    def generate(rng, ctx):
        X = ctx.rack(rng, max_order)
        pairs = gen.random_pairs(rng, X.order, int(rng.integers(0, 3)))
        return SurjCase(X, tuple(pairs), int(rng.integers(2**31)))
    return generate


def _rack_case(max_order: int = 6) -> Callable[[np.random.Generator, SuiteContext], FiniteRack]:
    def generate(rng, ctx):
        return ctx.rack(rng, max_order)
    return generate


def _covers(f: RackHom, ctx: SuiteContext) -> bool:
    return is_covering(f, ctx.config.closure_cap).verdict


def _brute_covering(f: RackHom) -> bool:
    X = f.dom
    return all(X.op(x, a) == X.op(x, b)
               for a, b in f.kernel_pairs() for x in range(X.order))


def _reps(C: Congruence) -> list[int]:
    return [block[0] for block in C.classes()]


def _same_quotient(K1: Congruence, K2: Congruence) -> bool:
    if K1 != K2:
        return False
    Q1, _ = quotient(K1.carrier, K1)
    Q2, _ = quotient(K2.carrier, K2)
    return np.array_equal(Q1.table_pos, Q2.table_pos)


# --- rack-core ---

def check_rack_axioms(X: FiniteRack, ctx) -> None:
    try:
        validate_rack(X.table_pos, X.elements)
    except QcoverError as exc:
        raise Failure(str(exc)) from None
    n = X.order
    x = np.arange(n)
    for a in (1, -1):
        for b in (1, -1):
            A = X.table_pos if a > 0 else X.table_neg
            B = X.table_pos if b > 0 else X.table_neg
            B_inv = X.table_neg if b > 0 else X.table_pos
            lhs = A[x[:, None, None], B[None, :, :]]
            inner = A[B_inv[:, None, :], x[None, :, None]]
            rhs = B[inner, x[None, None, :]]
            bad = np.argwhere(lhs != rhs)
            if bad.size:
                raise Failure(f"unfolding identity ({a},{b}) fails at {tuple(int(v) for v in bad[0])}")


def check_weak_idempotency(X: FiniteRack, ctx) -> None:
    for y in range(X.order):
        for k in range(-3, 4):
            z = X.power(y, y, k)
            for x in range(X.order):
                if X.op(x, z) != X.op(x, y):
                    raise Failure(f"x={X.label(x)} y={X.label(y)} k={k}")


def check_co_routes(X: FiniteRack, ctx) -> None:
    by_orbits = orbit_congruence(X, inn_group(X, ctx.config.closure_cap, materialize=False))
    by_pairs = congruence_from_pairs(X, [(x, X.op(x, y)) for x in range(X.order) for y in range(X.order)])
    if by_orbits != by_pairs:
        raise Failure(f"orbits {by_orbits.format()} vs generated {by_pairs.format()}")


def check_discrete_requotient(X: FiniteRack, ctx) -> None:
    Q, f = quotient(X, discrete(X))
    if f.map != tuple(range(X.order)) or not np.array_equal(Q.table_pos, X.table_pos):
        raise Failure("quotient by the discrete congruence is not the identity")


def check_orbit_permutes(case: SurjCase, ctx) -> None:
    X = case.rack
    rng = np.random.default_rng(case.seed)
    G = inn_group(X, ctx.config.closure_cap, materialize=False)
    seeds = []
    for _ in range(int(rng.integers(0, 3))):
        p = identity(X.order)
        for _ in range(int(rng.integers(1, 4))):
            p = perm_mul(p, X.symmetry(int(rng.integers(X.order)), int(rng.choice([1, -1]))))
        seeds.append(p)
    H = G.normal_closure(seeds)
    R = internal_relation(X, case.pairs)
    if not relations_permute(orbit_congruence(X, H), R):
        raise Failure(f"orbit congruence of a normal subgroup of order {H.order} does not permute")


# --- free-words ---

def _free_case(elem):
    def generate(rng, ctx):
        gens = int(rng.integers(2, 5))
        return tuple(elem(rng, gens) for _ in range(3))
    return generate


def check_fr_axioms(case: tuple[FreeRackElem, ...], ctx) -> None:
    x, y, z = case
    if fr_op(fr_op(x, y), y, -1) != x or fr_op(fr_op(x, y, -1), y) != x:
        raise Failure(f"R1 fails for {case}")
    if fr_op(fr_op(x, y), z) != fr_op(fr_op(x, z), fr_op(y, z)):
        raise Failure(f"R2 fails for {case}")


def check_fq_axioms(case: tuple[FreeQuandleElem, ...], ctx) -> None:
    x, y, z = case
    if fq_op(fq_op(x, y), y, -1) != x or fq_op(fq_op(x, y, -1), y) != x:
        raise Failure(f"R1 fails for {case}")
    if fq_op(fq_op(x, y), z) != fq_op(fq_op(x, z), fq_op(y, z)):
        raise Failure(f"R2 fails for {case}")
    if fq_op(x, x) != x:
        raise Failure(f"Q1 fails for {x}")


def _action_case(rng, ctx):
    gens = int(rng.integers(2, 5))
    h = gen.random_word(rng, gens)
    while not h:
        h = gen.random_word(rng, gens)
    return gen.random_fr_elem(rng, gens), gen.random_fq_elem(rng, gens), h, int(rng.integers(gens))


def check_free_action(case, ctx) -> None:
    x, _, h, _ = case
    if x.act(h) == x:
        raise Failure(f"{h} fixes {x}")


def check_free_action_fq(case, ctx) -> None:
    _, q, h, b = case
    h = h * GroupWord.power(b, -word_char(h))
    if not h:
        raise Skip()
    if q.act(h) == q:
        raise Failure(f"{h} fixes {q}")


def _kernel_case(rng, ctx):
    gens = int(rng.integers(2, 6))
    f = [int(v) for v in rng.integers(0, max(1, gens - 1), size=gens)]
    if rng.integers(4):
        return f, gen.random_kernel_word(rng, f)
    return f, gen.random_word(rng, gens)


def check_kernel_pairing(case, ctx) -> None:
    f, u = case
    result = kernel_pairing(f, u)
    if isinstance(result, NotInKernel):
        if not fg_map(f, u) or result.image != fg_map(f, u):
            raise Failure(f"{u} reported outside the kernel with image {result.image}")
        return
    assert isinstance(result, SymmetricPairWitness)
    if fg_map(f, u):
        raise Failure(f"pairing returned for {u} outside the kernel")
    if result.nu * ~result.nu_prime != u or fg_map(f, result.nu_prime):
        raise Failure(f"round trip fails for {u}")
    if [f[g] for g, _ in result.top] != [f[g] for g, _ in result.bottom]:
        raise Failure(f"pair for {u} is not f-symmetric")


# --- path-groups ---

def check_excess_kills_relations(X: FiniteRack, ctx) -> None:
    e = identity(X.order)
    for r in pth_presentation(X).relations:
        if excess(X, r) != e:
            raise Failure(f"excess of relator {r} is {excess(X, r)}")


def _augmented_case(rng, ctx):
    X = ctx.rack(rng)
    return (X, int(rng.integers(X.order)), int(rng.integers(X.order)),
            gen.random_word(rng, X.order), gen.random_word(rng, X.order))


def check_augmented_identities(case, ctx) -> None:
    X, x, y, u, v = case
    if act(X, x, u * v) != act(X, act(X, x, u), v):
        raise Failure(f"x.(uv) != (x.u).v for x={X.label(x)}")
    if act(X, X.op(x, y), u) != X.op(act(X, x, u), act(X, y, u)):
        raise Failure(f"(x<y).u != (x.u)<(y.u) for x={X.label(x)} y={X.label(y)}")
    g = excess(X, u)
    if X.symmetry(act(X, x, u)) != conjugate(X.symmetry(x), g):
        raise Failure(f"S_(x.u) is not the conjugate of S_x for x={X.label(x)}")


def check_ab_components(X: FiniteRack, ctx) -> None:
    ab = abelianization(pth_presentation(X))
    count = pi0(X).congruence.class_count
    if ab.rank_free != count or ab.torsion:
        raise Failure(f"ab Pth = {ab.format()} but {count} components")


def check_kernel_image(case: SurjCase, ctx) -> None:
    f = case.hom()
    K = kernel_image_subgroup(f, ctx.config.closure_cap)
    X = f.dom
    same = all(X.symmetry(a) == X.symmetry(b) for a, b in f.kernel_pairs())
    if K.is_trivial != same:
        raise Failure(f"kernel image trivial={K.is_trivial}, symmetries agree={same}")


def _word_case(rng, ctx):
    X = ctx.rack(rng, 4)
    u = gen.random_word(rng, X.order, 6)
    if rng.integers(2):
        rels = pth_presentation(X).relations
        r = rels[int(rng.integers(len(rels)))]
        k = int(rng.integers(len(u) + 1))
        v = GroupWord(u.letters[:k] + (r if rng.integers(2) else ~r).letters + u.letters[k:])
        return X, u, v, True
    return X, u, gen.random_word(rng, X.order, 6), False


def check_word_eq3(case, ctx) -> None:
    X, u, v, related = case
    verdict = word_eq3(X, u, v, depth=min(ctx.config.rewrite_depth, 2), state_cap=200)
    if verdict.result is Equality.EQUAL and excess(X, u) != excess(X, v):
        raise Failure(f"Equal but excess images differ for {u} and {v}")
    if verdict.result is Equality.NOT_EQUAL:
        if verdict.separator is None:
            raise Failure(f"NotEqual without a separator for {u} and {v}")
        if related:
            raise Failure(f"{v} differs from {u} by one relator, yet NotEqual")


# --- galois-covers ---

def check_covering_agreement(case: SurjCase, ctx) -> None:
    f = case.hom()
    report = is_covering(f, ctx.config.closure_cap)
    if report.verdict != _brute_covering(f):
        raise Failure(f"is_covering says {report.verdict}, brute force disagrees")


def check_pullback_stability(case: SurjCase, ctx) -> None:
    f = case.hom()
    rng = np.random.default_rng(case.seed)
    B = f.cod
    candidates = [f, identity_hom(B), centralize(f, ctx.config.closure_cap).central]
    within = [p for p in f.kernel_pairs() if p[0] != p[1]]
    if within:
        C = congruence_from_pairs(f.dom, [within[int(rng.integers(len(within)))]])
        Y, _ = quotient(f.dom, C)
        candidates.append(check_hom(Y, B, [f.map[r] for r in _reps(C)]))
    for c in candidates:
        _, p1, _ = pullback(f, c)
        if _covers(p1, ctx) != _covers(c, ctx):
            raise Failure(f"pullback of {c.map} along {f.map} changes the covering verdict")


def check_horn_retraction(case: SurjCase, ctx) -> None:
    f = case.hom()
    report = is_covering(f, ctx.config.closure_cap)
    if not report.verdict:
        h = horn_from_witness(f, report.witness)
        if horn_analyze(h).closes:
            raise Failure(f"witness {report.witness} gives a closing horn")
        return
    rng = np.random.default_rng(case.seed)

    def fails(h: Horn) -> bool:
        return not horn_analyze(h).retracts

    for _ in range(ctx.config.horn_samples):
        h = sample_horn(f, rng)
        if fails(h):
            h = shrink_horn(h, fails)
            raise Failure(f"horn from {h.base} with steps {h.steps} does not retract")


def check_centralize_agreement(case: SurjCase, ctx) -> None:
    f = case.hom()
    c = centralize(f, ctx.config.closure_cap)
    if not c.congruence <= kernel_congruence(f):
        raise Failure("C1 is not below Eq(f)")
    if not _covers(c.central, ctx):
        raise Failure("F1(f) is not a covering")


def check_centralize_minimal(case: SurjCase, ctx) -> None:
    f = case.hom()
    X = f.dom
    c1 = centralize(f, ctx.config.closure_cap).congruence
    eq = kernel_congruence(f)
    for blocks in multiset_partitions(list(range(X.order))):
        try:
            D = from_partition(X, blocks)
        except IncompatiblePartition:
            continue
        if not D <= eq:
            continue
        Y, _ = quotient(X, D)
        induced = check_hom(Y, f.cod, [f.map[r] for r in _reps(D)])
        if _covers(induced, ctx) and not c1 <= D:
            raise Failure(f"{D.format()} gives a covering but does not contain C1 {c1.format()}")


def check_c1_permutes(case: SurjCase, ctx) -> None:
    f = case.hom()
    rng = np.random.default_rng(case.seed)
    c1 = centralize(f, ctx.config.closure_cap).congruence
    D = gen.random_congruence(rng, f.dom)
    if not relations_permute(c1, D):
        raise Failure(f"C1 {c1.format()} does not permute with {D.format()}")


def check_qx_permutes(case: SurjCase, ctx) -> None:
    X = case.rack
    R = internal_relation(X, case.pairs)
    if not relations_permute(quandle_congruence(X), R):
        raise Failure(f"Q_X does not permute with the relation generated by {case.pairs}")


def symmetry_congruence(X: FiniteRack) -> Congruence:
    """a ~ b iff S_a = S_b: the largest congruence with a covering quotient."""
    blocks: dict[tuple, list[int]] = {}
    for a in range(X.order):
        blocks.setdefault(X.symmetry(a), []).append(a)
    return from_partition(X, list(blocks.values()))


def check_double_extension(case: SurjCase, ctx) -> None:
    X = case.rack
    rng = np.random.default_rng(case.seed)
    sym = symmetry_congruence(X)
    inside = [p for p in sym.pairs() if p[0] < p[1]]
    picks = [inside[int(i)] for i in rng.permutation(len(inside))[:int(rng.integers(0, 3))]]
    K = congruence_from_pairs(X, picks)
    L = congruence_from_pairs(X, case.pairs)
    if not relations_permute(K, L):
        raise Skip()
    _, top = quotient(X, K)
    if not _covers(top, ctx):
        raise Failure(f"X -> X/K is not a covering for K = {K.format()} below the symmetry congruence")
    KL = join(K, L)
    XL, _ = quotient(X, L)
    XKL, _ = quotient(X, KL)
    cls = KL.class_index()
    bottom = check_hom(XL, XKL, [cls[r] for r in _reps(L)])
    if not _covers(bottom, ctx):
        raise Failure(f"X/L -> X/(K v L) is not a covering for K = {K.format()}, L = {L.format()}")


def check_frq_unit(X: FiniteRack, ctx) -> None:
    Q, unit = frq(X, ctx.config.closure_cap)
    if classify(X)["is_quandle"] and Q.order != X.order:
        raise Failure("Frq of a quandle is not an isomorphism")


def _frq_of(f: RackHom, ctx) -> tuple[RackHom, RackHom]:
    """Frq(f) and the unit of the domain."""
    QA, uA = frq(f.dom, ctx.config.closure_cap)
    _, uB = frq(f.cod, ctx.config.closure_cap)
    reps = _reps(kernel_congruence(uA))
    return check_hom(QA, uB.cod, [uB.map[f.map[r]] for r in reps]), uA


def check_frq_centralize_commute(case: SurjCase, ctx) -> None:
    f = case.hom()
    cap = ctx.config.closure_cap
    frq_f, unit_a = _frq_of(f, ctx)
    first = compose(unit_a, centralize(frq_f, cap).unit)
    c = centralize(f, cap)
    _, unit_f1 = frq(c.unit.cod, cap)
    second = compose(c.unit, unit_f1)
    K1, K2 = kernel_congruence(first), kernel_congruence(second)
    if not _same_quotient(K1, K2):
        raise Failure(f"F1(Frq f) gives {K1.format()}, Frq(F1 f) gives {K2.format()}")


def check_trivial_normal_covering(case: SurjCase, ctx) -> None:
    f = case.hom()
    trivial = is_trivial_ext(f).verdict
    normal = is_normal_ext(f).verdict
    covering = _covers(f, ctx)
    if trivial and not normal:
        raise Failure("trivial but not normal")
    if normal and not covering:
        raise Failure("normal but not a covering")


def check_endpoint_cover(X: FiniteRack, ctx) -> None:
    inn = inn_group(X, ctx.config.closure_cap)
    E = endpoint_cover(X, ctx.config.closure_cap)
    if E.rack.order != X.order * inn.order:
        raise Failure(f"endpoint cover has {E.rack.order} elements")
    if not _covers(E.endpoint, ctx):
        raise Failure("endpoint map is not a covering")


PROPERTIES: list[Property] = [
    Property("rack_axioms", "rack-core", _rack_case(), check_rack_axioms, shrink_rack),
    Property("weak_idempotency", "rack-core", _rack_case(), check_weak_idempotency, shrink_rack),
    Property("co_routes_agree", "rack-core", _rack_case(), check_co_routes, shrink_rack),
    Property("discrete_requotient", "rack-core", _rack_case(), check_discrete_requotient, shrink_rack),
    Property("orbit_congruence_permutes", "rack-core", _surj_case(), check_orbit_permutes, shrink_surj),
    Property("free_rack_axioms", "free-words", _free_case(gen.random_fr_elem), check_fr_axioms,
             samples_field="free_samples"),
    Property("free_quandle_axioms", "free-words", _free_case(gen.random_fq_elem), check_fq_axioms,
             samples_field="free_samples"),
    Property("free_action", "free-words", _action_case, check_free_action),
    Property("free_action_quandle", "free-words", _action_case, check_free_action_fq),
    Property("kernel_pairing_round_trip", "free-words", _kernel_case, check_kernel_pairing,
             samples_field="kernel_samples"),
    Property("excess_kills_relations", "path-groups", _rack_case(), check_excess_kills_relations, shrink_rack),
    Property("augmented_identities", "path-groups", _augmented_case, check_augmented_identities),
    Property("ab_pth_is_free_on_components", "path-groups", _rack_case(), check_ab_components, shrink_rack),
    Property("kernel_image_vs_symmetries", "path-groups", _surj_case(), check_kernel_image, shrink_surj),
    Property("word_eq3_sound", "path-groups", _word_case, check_word_eq3),
    Property("covering_methods_agree", "galois-covers", _surj_case(), check_covering_agreement, shrink_surj),
    Property("pullback_stability", "galois-covers", _surj_case(), check_pullback_stability, shrink_surj),
    Property("horn_retraction", "galois-covers", _surj_case(), check_horn_retraction, shrink_surj),
    Property("centralize_agreement", "galois-covers", _surj_case(), check_centralize_agreement, shrink_surj),
    Property("centralize_minimal", "galois-covers", _surj_case(5), check_centralize_minimal, shrink_surj),
    Property("c1_permutes_with_congruences", "galois-covers", _surj_case(), check_c1_permutes, shrink_surj),
    Property("qx_permutes_with_relations", "galois-covers", _surj_case(), check_qx_permutes, shrink_surj),
    Property("double_extension_quotient", "galois-covers", _surj_case(), check_double_extension, shrink_surj),
    Property("frq_unit_covering", "galois-covers", _rack_case(), check_frq_unit, shrink_rack),
    Property("frq_centralize_commute", "galois-covers", _surj_case(), check_frq_centralize_commute, shrink_surj),
    Property("trivial_normal_covering", "galois-covers", _surj_case(), check_trivial_normal_covering, shrink_surj),
    Property("endpoint_cover_covers", "galois-covers", _rack_case(5), check_endpoint_cover, shrink_rack),
]


def find_property(name: str) -> Optional[Property]:
    return next((p for p in PROPERTIES if p.name == name), None)

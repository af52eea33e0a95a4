import argparse
import json
import logging
import sys
from dataclasses import dataclass
from typing import Callable, Optional

from pydantic import ValidationError

import qcover.config as config
from qcover.algebra.paths import Equality, abelianization, pth_presentation, word_eq3
from qcover.algebra.perms import format_perm
from qcover.algebra.racks import (
    FiniteRack,
    RackHom,
    abelianization_order,
    classify,
    inn_group,
    pullback,
    transvection_group,
)
from qcover.algebra.words import parse_word
from qcover.covers.centralize import centralize, frq
from qcover.covers.components import connected_component, is_normal_ext, is_trivial_ext, pi0
from qcover.covers.coverings import Horn, horn_analyze, is_covering
from qcover.covers.fundamental import endpoint_cover, fundamental_skeleton
from qcover.errors import BadWordSyntax, MethodDisagreement, QcoverInputError, QcoverLimitError
from qcover.schemas import Report, RunConfig
from qcover.suite.runner import format_summary, suite_run
from qcover.tools.dot import components_dot, skeleton_dot
from qcover.tools.rack_db import load_group, load_group_conj, load_hom, load_rack, rack_to_model

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_FALSE, EXIT_INPUT, EXIT_DISAGREE = 0, 1, 2, 3


@dataclass
class Outcome:
    """A report plus its text and (optionally) DOT renderings."""

    report: Report
    text: str
    dot: Optional[str] = None

    def __post_init__(self):
        if not self.text.endswith("\n"):
            self.text += "\n"


def _labels(X: FiniteRack, indices) -> list[str]:
    return [X.label(i) for i in indices]


def _hom_name(f: RackHom) -> str:
    return f"{f.dom.name or 'dom'} -> {f.cod.name or 'cod'}"


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


# --- rack-core ---

def cmd_validate(args, cfg) -> Outcome:
    X = load_rack(args.file, args.row_acts)
    report = Report(op="validate", verdict=True, result={"name": X.name, "order": X.order})
    return Outcome(report, f"valid rack {X.name or args.file} of order {X.order}")


def cmd_classify(args, cfg) -> Outcome:
    X = load_rack(args.file, args.row_acts)
    flags = classify(X)
    text = ", ".join(f"{k.removeprefix('is_')}: {_yes(v)}" for k, v in flags.items())
    return Outcome(Report(op="classify", verdict=True, result=flags), text)


def cmd_conj(args, cfg) -> Outcome:
    group = load_group(args.file)
    X = load_group_conj(args.file)
    model = rack_to_model(X)
    ab_order = abelianization_order(group.cayley)
    components = pi0(X).congruence.class_count
    rows = [" ".join(X.label(int(v)) for v in row) for row in X.table_pos]
    text = (f"{X.name}: {X.order} elements, {components} components, |ab(G)| = {ab_order}\n"
            + "\n".join(rows))
    result = {**model.model_dump(exclude={"row_acts"}), "components": components, "ab_order": ab_order}
    return Outcome(Report(op="conj", verdict=True, result=result), text)


def cmd_pi0(args, cfg) -> Outcome:
    X = load_rack(args.file, args.row_acts)
    comps = pi0(X)
    co = comps.congruence
    text = f"{co.class_count} components: {co.format()}"
    report = Report(op="pi0", verdict=True,
                    result={"count": co.class_count, "classes": [_labels(X, b) for b in co.classes()]})
    return Outcome(report, text, components_dot(X, comps))


def cmd_component(args, cfg) -> Outcome:
    X = load_rack(args.file, args.row_acts)
    C = connected_component(X, X.index(args.label))
    own = pi0(C).congruence
    text = (f"component of {args.label}: {{{','.join(C.elements)}}} "
            f"({C.order} elements, {own.class_count} components of its own: {own.format()})")
    report = Report(op="component", verdict=True,
                    result={"elements": list(C.elements), "own_components": own.class_count})
    return Outcome(report, text)


def cmd_inn(args, cfg) -> Outcome:
    X = load_rack(args.file, args.row_acts)
    G = inn_group(X, cfg.closure_cap)
    T = transvection_group(X, cfg.closure_cap)
    gens = [format_perm(g, X.elements) for g in G.generators]
    text = f"Inn: order {G.order}, generators {' '.join(gens) or '-'}\nInn°: order {T.order}"
    report = Report(op="inn", verdict=True,
                    result={"order": G.order, "generators": gens, "transvection_order": T.order})
    return Outcome(report, text)


# --- path-groups ---

def cmd_pth(args, cfg) -> Outcome:
    X = load_rack(args.file, args.row_acts)
    P = pth_presentation(X)
    if args.export:
        text = P.to_text()
    else:
        text = f"Pth({X.name or args.file}): {len(P.generators)} generators, {len(P.relations)} relations"
    report = Report(op="pth", verdict=True,
                    result={"generators": list(P.generators), "relations": P.to_text().splitlines()[1:]})
    return Outcome(report, text)


def cmd_abelianize(args, cfg) -> Outcome:
    X = load_rack(args.file, args.row_acts)
    ab = abelianization(pth_presentation(X))
    report = Report(op="abelianize", verdict=True,
                    result={"rank_free": ab.rank_free, "torsion": list(ab.torsion), "group": ab.format()})
    return Outcome(report, ab.format())


def cmd_word_eq(args, cfg) -> Outcome:
    X = load_rack(args.file, args.row_acts)
    u, v = parse_word(args.u, X.elements), parse_word(args.v, X.elements)
    verdict = word_eq3(X, u, v, depth=cfg.rewrite_depth)
    separator = list(verdict.separator) if verdict.separator is not None else None
    report = Report(op="word-eq", verdict=verdict.result is Equality.EQUAL, witness=separator,
                    result={"result": verdict.result.value, "reason": verdict.reason, "steps": verdict.steps})
    return Outcome(report, f"{verdict.result.value}: {verdict.reason}")


# --- galois-covers ---

def cmd_covering(args, cfg) -> Outcome:
    f = load_hom(args.file, args.row_acts)
    r = is_covering(f, cfg.closure_cap)
    witness = _labels(f.dom, r.witness) if r.witness else None
    if r.verdict:
        text = f"covering: {_hom_name(f)}"
    else:
        x, a, b = witness
        text = f"not a covering: {x} < {a} != {x} < {b} with f({a}) = f({b})"
    report = Report(op="covering", verdict=r.verdict, witness=witness, methods=r.method_agreement)
    return Outcome(report, text)


def _extension(op: str, check: Callable) -> Callable:
    def handler(args, cfg) -> Outcome:
        f = load_hom(args.file, args.row_acts)
        v = check(f)
        witness = None
        if v.witness is not None:
            if op == "trivial":
                witness = _labels(f.dom, v.witness)
            else:
                witness = [_labels(f.dom, pair) for pair in v.witness]
        text = f"{op} extension: {_yes(v.verdict)}" + (f" ({v.detail}: {witness})" if witness else "")
        return Outcome(Report(op=op, verdict=v.verdict, witness=witness), text)
    return handler


def cmd_centralize(args, cfg) -> Outcome:
    f = load_hom(args.file, args.row_acts)
    c = centralize(f, cfg.closure_cap)
    text = (f"C1: {c.congruence.format()} ({c.congruence.class_count} classes)\n"
            f"F1: {c.central.dom.order} elements over {c.central.cod.order}, covering")
    report = Report(op="centralize", verdict=True, methods=c.methods,
                    result={"classes": [_labels(f.dom, b) for b in c.congruence.classes()],
                            "central_map": list(c.central.map)})
    return Outcome(report, text)


def cmd_frq(args, cfg) -> Outcome:
    X = load_rack(args.file, args.row_acts)
    Q, unit = frq(X, cfg.closure_cap)
    classes = [_labels(X, b) for b in unit.fibers()]
    text = f"Frq: {Q.order} elements: {' '.join('{' + ','.join(b) + '}' for b in classes)}; unit is a covering"
    report = Report(op="frq", verdict=True, result={"classes": classes, "rack": rack_to_model(Q).model_dump()})
    return Outcome(report, text)


def cmd_pullback(args, cfg) -> Outcome:
    f = load_hom(args.file, args.row_acts)
    g = load_hom(args.other, args.row_acts)
    P, p1, p2 = pullback(f, g)
    text = f"pullback: {P.order} elements: {' '.join(P.elements)}"
    report = Report(op="pullback", verdict=True,
                    result={"rack": rack_to_model(P).model_dump(), "p1": list(p1.map), "p2": list(p2.map)})
    return Outcome(report, text)


def cmd_endpoint_cover(args, cfg) -> Outcome:
    X = load_rack(args.file, args.row_acts)
    E = endpoint_cover(X, cfg.closure_cap)
    text = (f"endpoint cover: {E.rack.order} elements over {X.order} ({E.truncation}); "
            f"endpoint map is a covering")
    report = Report(op="endpoint-cover", verdict=True, notes=[E.truncation],
                    result={"order": E.rack.order, "inn_order": len(E.inn_elements),
                            "endpoint": list(E.endpoint.map)})
    return Outcome(report, text)


def cmd_skeleton(args, cfg) -> Outcome:
    X = load_rack(args.file, args.row_acts)
    pointing = [X.index(l) for l in args.pointing] if args.pointing else None
    rep = fundamental_skeleton(X, pointing, cfg.closure_cap)
    lines, comps = [], []
    for c in rep.components:
        gens = [format_perm(g, X.elements) for g in c.loop_image_generators]
        lines.append(f"[{','.join(_labels(X, c.members))}] at {X.label(c.representative)}: "
                     f"loop image order {c.loop_image_order}, generators {' '.join(gens) or '-'}")
        comps.append({"members": _labels(X, c.members), "representative": X.label(c.representative),
                      "loop_image_order": c.loop_image_order, "generators": gens})
    lines.append(f"({rep.truncation}, |Inn| = {rep.inn_order})")
    report = Report(op="skeleton", verdict=True, result={"components": comps}, notes=[rep.truncation])
    return Outcome(report, "\n".join(lines), skeleton_dot(rep))


def _parse_steps(X: FiniteRack, text: str) -> tuple[tuple[int, int, int], ...]:
    """``a:b`` or ``a:b:-1`` tokens, separated by spaces."""
    steps = []
    for token in text.split():
        parts = token.split(":")
        if len(parts) not in (2, 3):
            raise BadWordSyntax(f"bad horn step {token!r}")
        sign = 1
        if len(parts) == 3:
            if parts[2] not in ("1", "+1", "-1"):
                raise BadWordSyntax(f"bad sign in horn step {token!r}")
            sign = int(parts[2])
        steps.append((X.index(parts[0]), X.index(parts[1]), sign))
    return tuple(steps)


def cmd_horn(args, cfg) -> Outcome:
    f = load_hom(args.file, args.row_acts)
    X = f.dom
    h = Horn(X.index(args.base), _parse_steps(X, args.steps), f)
    a = horn_analyze(h)
    top, bottom = _labels(X, a.endpoints)
    text = f"endpoints {top}, {bottom}: closes {_yes(a.closes)}, retracts {_yes(a.retracts)}"
    report = Report(op="horn", verdict=a.closes, witness=None if a.closes else [top, bottom],
                    result={"retracts": a.retracts})
    return Outcome(report, text)


# --- suite ---

def cmd_suite(args, cfg) -> Outcome:
    summary = suite_run(cfg, mutate=args.mutate_table, names=args.only)
    report = Report(op="suite", verdict=summary.ok, result=json.loads(summary.model_dump_json()))
    return Outcome(report, format_summary(summary))


COMMANDS = {
    "validate": (cmd_validate, "check R1 and R2 of a rack file"),
    "classify": (cmd_classify, "quandle / involutive / trivial flags"),
    "conj": (cmd_conj, "conjugation quandle of a group file"),
    "pi0": (cmd_pi0, "connected components"),
    "component": (cmd_component, "connected component of one element"),
    "inn": (cmd_inn, "inner automorphism group"),
    "pth": (cmd_pth, "presentation of the group of paths"),
    "abelianize": (cmd_abelianize, "abelianization of the group of paths"),
    "covering": (cmd_covering, "is a surjection a covering?"),
    "trivial": (_extension("trivial", is_trivial_ext), "is a surjection a trivial extension?"),
    "normal": (_extension("normal", is_normal_ext), "is a surjection a normal extension?"),
    "centralize": (cmd_centralize, "centralization of a surjection"),
    "frq": (cmd_frq, "reflection into quandles"),
    "pullback": (cmd_pullback, "pullback of two homs with a common codomain"),
    "endpoint-cover": (cmd_endpoint_cover, "Inn-truncated endpoint cover"),
    "skeleton": (cmd_skeleton, "Inn-images of the loop groups"),
    "horn": (cmd_horn, "analyze a horn of a surjection"),
    "word-eq": (cmd_word_eq, "three-valued equality of words in the group of paths"),
    "suite": (cmd_suite, "run the property batteries"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print a JSON report")
    common.add_argument("--dot", action="store_true", help="print Graphviz DOT where available")
    common.add_argument("--row-acts", action="store_true", help="tables list the acting element on rows")
    common.add_argument("--cap", type=int, help="closure cap for permutation groups")
    common.add_argument("--samples", type=int, help="samples per property (free-word batteries included)")
    common.add_argument("--depth", type=int, help="rewriting depth for word-eq")
    common.add_argument("--seed", type=lambda s: int(s, 0), help="seed (overrides QCOVER_SEED)")
    common.add_argument("-v", "--verbose", action="store_true", help="log at INFO")

    parser = argparse.ArgumentParser(prog="qcover", description="Finite racks, quandles and their coverings")
    sub = parser.add_subparsers(dest="command", required=True)
    parsers = {name: sub.add_parser(name, parents=[common], help=help_text)
               for name, (_, help_text) in COMMANDS.items()}

    for name in ("validate", "classify", "conj", "pi0", "inn", "pth", "abelianize", "frq",
                 "endpoint-cover", "skeleton", "covering", "trivial", "normal", "centralize", "horn"):
        parsers[name].add_argument("file")
    parsers["component"].add_argument("file")
    parsers["component"].add_argument("label")
    parsers["pth"].add_argument("--export", action="store_true", help="print generators and relators")
    parsers["pullback"].add_argument("file")
    parsers["pullback"].add_argument("other")
    parsers["skeleton"].add_argument("--pointing", nargs="+", help="one representative per component")
    parsers["horn"].add_argument("--base", required=True)
    parsers["horn"].add_argument("--steps", required=True, help='e.g. "a:b b:a:-1"')
    parsers["word-eq"].add_argument("file")
    parsers["word-eq"].add_argument("u")
    parsers["word-eq"].add_argument("v")
    parsers["suite"].add_argument("--mutate-table", action="store_true", help="inject a table fault")
    parsers["suite"].add_argument("--only", nargs="+", help="run only these properties")
    return parser


def run_config(args) -> RunConfig:
    overrides = {"seed": args.seed, "closure_cap": args.cap, "samples": args.samples,
                 "free_samples": args.samples, "kernel_samples": args.samples,
                 "rewrite_depth": args.depth}
    output = "json" if args.json else "dot" if args.dot else "text"
    return RunConfig(output=output, **{k: v for k, v in overrides.items() if v is not None})


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    level = logging.INFO if args.verbose else getattr(logging, config.LOG_LEVEL.upper(), logging.WARNING)
    logging.basicConfig(level=level, format='%(asctime)s - %(levelname)s - %(message)s', stream=sys.stderr)

    handler, _ = COMMANDS[args.command]
    try:
        cfg = run_config(args)
        outcome = handler(args, cfg)
    except MethodDisagreement as e:
        logger.error("internal consistency failure: %s", e)
        print(json.dumps({"op": e.op, "error": "MethodDisagreement", "methods": e.methods}, default=str))
        return EXIT_DISAGREE
    except (QcoverInputError, QcoverLimitError) as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INPUT
    except (ValidationError, json.JSONDecodeError, FileNotFoundError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT

    if cfg.output == "json":
        sys.stdout.write(outcome.report.model_dump_json(indent=2) + "\n")
    elif cfg.output == "dot" and outcome.dot is not None:
        sys.stdout.write(outcome.dot)
    else:
        sys.stdout.write(outcome.text)
    return EXIT_FALSE if outcome.report.verdict is False else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

"""Graphviz DOT text for components and fundamental skeletons."""
from qcover.algebra.perms import format_perm
from qcover.algebra.racks import FiniteRack
from qcover.covers.components import Components
from qcover.covers.fundamental import SkeletonReport


def _q(s: str) -> str:
    return '"' + s.replace('"', '\\"') + '"'


def components_dot(X: FiniteRack, comps: Components) -> str:
    """One cluster per connected component, edges x -> x < y labelled y."""
    lines = [f"digraph {_q(X.name or 'rack')} {{"]
    for k, block in enumerate(comps.congruence.classes()):
        lines.append(f"  subgraph cluster_{k} {{")
        lines.append(f"    label={_q('component ' + str(k))};")
        for x in block:
            lines.append(f"    {_q(X.label(x))};")
        lines.append("  }")
    for x in range(X.order):
        for y in range(X.order):
            z = X.op(x, y)
            if z != x:
                lines.append(f"  {_q(X.label(x))} -> {_q(X.label(z))} [label={_q(X.label(y))}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def skeleton_dot(report: SkeletonReport) -> str:
    """One node per component; loop-image generators label self-loops."""
    X = report.rack
    lines = [f"digraph {_q('skeleton ' + (X.name or 'rack'))} {{",
             f"  label={_q(report.truncation)};"]
    for comp in report.components:
        node = _q(X.label(comp.representative))
        members = ",".join(X.label(x) for x in comp.members)
        lines.append(f"  {node} [label={_q(X.label(comp.representative) + ' {' + members + '}')}];")
        for g in comp.loop_image_generators:
            lines.append(f"  {node} -> {node} [label={_q(format_perm(g, X.elements))}];")
    lines.append("}")
    return "\n".join(lines) + "\n"

"""Graphviz DOT text for the curve-incidence graph and the F_1 boundary graph."""
from __future__ import annotations

from .arcs import ArcSystem
from .curves import MarkedCurveSystem


def _q(s: str) -> str:
    return '"' + s.replace('"', '\\"') + '"'


def incidence_dot(system: MarkedCurveSystem) -> str:
    """Bipartite graph: curves L*_{i,j} and marked points, edges labelled by angle class."""
    lines = ["graph incidence {", "  node [fontsize=10];"]
    for i, j in system.curves:
        lines.append(f"  {_q(f'L{i},{j}')} [shape=box];")
    for pt in system.marked_points:
        lines.append(f"  {_q(str(pt))} [shape=point, xlabel={_q(str(pt))}];")
    for pt in system.marked_points:
        for c in system.curves_at(pt):
            lines.append(f"  {_q(f'L{c[0]},{c[1]}')} -- {_q(str(pt))} [label={system.angle_class(c, pt)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def f1_dot(arcs: ArcSystem) -> str:
    lines = ["digraph F1 {", "  node [shape=circle, fontsize=10];"]
    for j in range(arcs.system.p):
        for s in (1, 2):
            lines.append(f"  {_q(f'beta{s}^{j}')};")
    for arc in sorted(arcs.odd(), key=lambda a: (a.curve, a.slot)):
        i, k = arc.curve
        lines.append(
            f"  {_q(arc.tail.label())} -> {_q(arc.head.label())} [label={_q(f'L{arc.slot}_{i},{k}')}];"
        )
    lines.append("}")
    return "\n".join(lines) + "\n"

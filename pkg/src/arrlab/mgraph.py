"""
The weighted m-graph of an arrangement, m-efficiency and m-complexity.

Vertices are the points whose multiplicity is divisible by m; every line
through at least two of them is an edge (stored as a hyperedge listing all
its vertices).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .arrangement import Incidence, stratum_div


@dataclass(frozen=True)
class MVertex:
    point: int
    weight: int    # k_P: multiplicity is weight * m
    n: int         # lines through P carrying another vertex
    r: int         # lines through P carrying no other vertex


@dataclass(frozen=True)
class MEdge:
    line: int
    vertices: tuple[int, ...]


@dataclass(frozen=True)
class MGraph:
    m: int
    degree: int
    vertices: tuple[MVertex, ...]
    edges: tuple[MEdge, ...]

    def vertex(self, point: int) -> MVertex:
        for v in self.vertices:
            if v.point == point:
                return v
        raise KeyError(point)


@dataclass(frozen=True)
class MGraphSummary:
    efficiency: Fraction
    complexity: int
    reduced: bool
    unsaturated: bool
    connected: bool


def _check_m(m: int) -> None:
    if m < 3:
        raise ValueError("m-graphs are defined for m >= 3")


def build_mgraph(inc: Incidence, m: int) -> MGraph:
    _check_m(m)
    verts = stratum_div(inc, m)
    edges = []
    for line, pts in enumerate(inc.line_points):
        on = tuple(sorted(p for p in pts if p in verts))
        if len(on) >= 2:
            edges.append(MEdge(line, on))
    edge_lines = {e.line for e in edges}
    vertices = []
    for pid in sorted(verts):
        p = inc.points[pid]
        n = sum(1 for i in p.lines if i in edge_lines)
        vertices.append(MVertex(pid, p.multiplicity // m, n, p.multiplicity - n))
    return MGraph(m, inc.degree, tuple(vertices), tuple(edges))


def efficiency(inc: Incidence, m: int) -> Fraction:
    """Sum of multiplicities of m-divisible points, divided by d."""
    _check_m(m)
    if inc.degree == 0:
        return Fraction(0)
    total = sum(n for n in inc.multiplicities if n % m == 0)
    return Fraction(total, inc.degree)


def efficiency_from_strata(degree: int, strata: Mapping[int, int], m: int) -> Fraction:
    """Efficiency from a table multiplicity -> point count."""
    _check_m(m)
    return Fraction(sum(k * c for k, c in strata.items() if k % m == 0), degree)


def complexity(inc: Incidence, m: int) -> int:
    """Largest n_P over the vertices of the m-graph; 0 without vertices."""
    return max((v.n for v in build_mgraph(inc, m).vertices), default=0)


def _connected(g: MGraph) -> bool:
    parent = {v.point: v.point for v in g.vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in g.edges:
        root = find(e.vertices[0])
        for v in e.vertices[1:]:
            parent[find(v)] = root
    return len({find(p) for p in parent}) <= 1


def classify(g: MGraph) -> MGraphSummary:
    total = sum(v.weight * g.m for v in g.vertices)
    eff = Fraction(total, g.degree) if g.degree else Fraction(0)
    comp = max((v.n for v in g.vertices), default=0)
    return MGraphSummary(
        efficiency=eff,
        complexity=comp,
        reduced=all(v.weight == 1 for v in g.vertices),
        unsaturated=comp <= g.m - 1,
        connected=_connected(g),
    )


def export_dot(g: MGraph) -> str:
    """Render the m-graph as undirected DOT text.

    Nodes are ``p<id>``; a line with v vertices becomes C(v, 2) edges sharing
    the attribute ``line=<index>``.  Node weights appear in the label unless
    every weight is 1.
    """
    reduced = all(v.weight == 1 for v in g.vertices)
    out = [f"graph mgraph_m{g.m} {{", f"  // m={g.m} degree={g.degree}",
           "  node [shape=circle];"]
    for v in g.vertices:
        label = f"P{v.point}" if reduced else f"P{v.point} w={v.weight}"
        out.append(f'  p{v.point} [label="{label}"];')
    for e in g.edges:
        vs = e.vertices
        for i in range(len(vs)):
            for j in range(i + 1, len(vs)):
                out.append(f"  p{vs[i]} -- p{vs[j]} [line={e.line}];")
    out.append("}")
    return "\n".join(out) + "\n"

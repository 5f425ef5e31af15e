"""Colored (gain) multigraphs over Gamma_k or Z/k.

Vertices are 0-indexed in memory and 1-indexed in the text format.  A cone
graph reuses the Gamma_k machinery with every translation part equal to
(0, 0), so its subgroups are finite rotation groups about the origin.
"""

from __future__ import annotations

import math
import re
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple, Optional, Sequence

from .group_algebra import (
    TRIVIAL_LATTICE,
    GroupContext,
    GroupElement,
    Lattice,
    SubgroupDescriptor,
    compose,
    gamma,
    inverse,
    lattice_join,
    rep_dim,
    subgroup_from_generators,
    t_dim,
)


class Edge(NamedTuple):
    tail: int
    head: int
    color: GroupElement


Step = tuple[int, int]  # (edge id, +1 forward / -1 backward)


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class ColoredGraph:
    ctx: GroupContext
    n: int
    edges: tuple[Edge, ...]
    cone: bool = False

    def __post_init__(self) -> None:
        if self.n < 0:
            raise GraphError("vertex count must be non-negative")
        for e in self.edges:
            if not (0 <= e.tail < self.n and 0 <= e.head < self.n):
                raise GraphError(f"edge {e} has an endpoint outside 0..{self.n - 1}")
            if not 0 <= e.color.r < self.ctx.k:
                raise GraphError(f"color {e.color} out of range for k={self.ctx.k}")
            if self.cone and e.color.t != (0, 0):
                raise GraphError("cone graph colors must have zero translation part")

    @classmethod
    def build(cls, k: int, n: int, edges: Iterable[tuple], cone: bool = False) -> "ColoredGraph":
        """Convenience constructor.

        Crystal edges are (tail, head, (tx, ty), r) and cone edges are
        (tail, head, r), both 0-indexed.
        """
        ctx = gamma(k)
        out = []
        for e in edges:
            if cone:
                t, h, r = e
                out.append(Edge(t, h, GroupElement((0, 0), r % k)))
            else:
                t, h, tv, r = e
                out.append(Edge(t, h, GroupElement((int(tv[0]), int(tv[1])), r % k)))
        return cls(ctx, n, tuple(out), cone)

    @property
    def k(self) -> int:
        return self.ctx.k

    @property
    def m(self) -> int:
        return len(self.edges)

    def with_edges(self, edges: Sequence[Edge]) -> "ColoredGraph":
        return ColoredGraph(self.ctx, self.n, tuple(edges), self.cone)

    def edge_subgraph(self, edge_ids: Iterable[int]) -> "ColoredGraph":
        """Same vertex set, only the listed edges (in the given order)."""
        return self.with_edges([self.edges[i] for i in edge_ids])

    def add_edge(self, e: Edge) -> "ColoredGraph":
        return self.with_edges(self.edges + (e,))

    def normalized(self) -> "ColoredGraph":
        return self.with_edges(sorted(self.edges, key=_edge_key))

    @cached_property
    def invariants(self) -> "GraphInvariants":
        return graph_invariants(self)


def _edge_key(e: Edge) -> tuple:
    return (e.tail, e.head, e.color.t[0], e.color.t[1], e.color.r)


# ---------------------------------------------------------------------------
# rho and marked graphs


def rho(path: Sequence[Step], g: ColoredGraph) -> GroupElement:
    ctx = g.ctx
    out = ctx.identity
    cur: Optional[int] = None
    for eid, direction in path:
        e = g.edges[eid]
        if direction == 1:
            start, end, col = e.tail, e.head, e.color
        elif direction == -1:
            start, end, col = e.head, e.tail, inverse(e.color, ctx)
        else:
            raise GraphError(f"direction must be +1 or -1, got {direction}")
        if cur is not None and start != cur:
            raise GraphError(f"walk is not contiguous at edge {eid}")
        out = compose(out, col, ctx)
        cur = end
    return out


@dataclass(frozen=True)
class MarkedGraph:
    """A graph with a base vertex per component and a spanning forest."""

    graph: ColoredGraph
    bases: tuple[int, ...]
    forest: frozenset[int]
    component_of: tuple[int, ...]
    parent: tuple[Optional[Step], ...]  # tree step entering each vertex
    potential: tuple[GroupElement, ...]  # rho of the tree path base -> v

    def tree_path(self, v: int) -> list[Step]:
        """Tree path from the base of v's component to v."""
        steps: list[Step] = []
        g = self.graph
        while self.parent[v] is not None:
            eid, d = self.parent[v]
            steps.append((eid, d))
            e = g.edges[eid]
            v = e.tail if d == 1 else e.head
        steps.reverse()
        return steps

    def components(self) -> list[list[int]]:
        comps: list[list[int]] = [[] for _ in self.bases]
        for v, c in enumerate(self.component_of):
            comps[c].append(v)
        return comps


def mark(
    g: ColoredGraph,
    bases: Optional[Sequence[int]] = None,
    edge_order: Optional[Sequence[int]] = None,
) -> MarkedGraph:
    """Breadth-first spanning forest.

    By default each component is rooted at its lowest-numbered vertex and
    edges are scanned in id order.  `bases` (one vertex per component, any
    order) and `edge_order` allow alternative markings.
    """
    ctx = g.ctx
    order = list(range(g.m)) if edge_order is None else list(edge_order)
    adj: list[list[tuple[int, int, int]]] = [[] for _ in range(g.n)]
    for eid in order:
        e = g.edges[eid]
        if e.tail == e.head:
            continue
        adj[e.tail].append((eid, e.head, 1))
        adj[e.head].append((eid, e.tail, -1))
    comp = [-1] * g.n
    parent: list[Optional[Step]] = [None] * g.n
    pot = [ctx.identity] * g.n
    forest: set[int] = set()
    roots: list[int] = []
    starts = list(range(g.n))
    if bases is not None:
        starts = list(bases) + starts
    for s in starts:
        if comp[s] != -1:
            continue
        ci = len(roots)
        roots.append(s)
        comp[s] = ci
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for eid, w, d in adj[u]:
                if comp[w] != -1:
                    continue
                comp[w] = ci
                parent[w] = (eid, d)
                forest.add(eid)
                col = g.edges[eid].color
                pot[w] = compose(pot[u], col if d == 1 else inverse(col, ctx), ctx)
                queue.append(w)
    if bases is not None and (len(roots) != len(bases) or set(roots) != set(bases)):
        raise GraphError("bases must contain exactly one vertex per component")
    return MarkedGraph(g, tuple(roots), frozenset(forest), tuple(comp), tuple(parent), tuple(pot))


def fundamental_closed_path(eid: int, mg: MarkedGraph) -> list[Step]:
    if eid in mg.forest:
        raise GraphError(f"edge {eid} is a forest edge")
    e = mg.graph.edges[eid]
    back = [(i, -d) for i, d in reversed(mg.tree_path(e.head))]
    return mg.tree_path(e.tail) + [(eid, 1)] + back


def fundamental_image(eid: int, mg: MarkedGraph) -> GroupElement:
    """rho of the fundamental closed path, via tree potentials."""
    ctx = mg.graph.ctx
    e = mg.graph.edges[eid]
    return compose(compose(mg.potential[e.tail], e.color, ctx), inverse(mg.potential[e.head], ctx), ctx)


def component_subgroup(g: ColoredGraph, component: int, mg: Optional[MarkedGraph] = None) -> SubgroupDescriptor:
    mg = mg or mark(g)
    gens = [
        fundamental_image(eid, mg)
        for eid, e in enumerate(g.edges)
        if eid not in mg.forest and mg.component_of[e.tail] == component
    ]
    return subgroup_from_generators(gens, g.ctx)


@dataclass(frozen=True)
class GraphInvariants:
    n: int
    m: int
    components: tuple[tuple[int, ...], ...]
    descriptors: tuple[SubgroupDescriptor, ...]
    lattice: Lattice
    rep: int

    @property
    def t_values(self) -> tuple[int, ...]:
        return tuple(t_dim(d) for d in self.descriptors)


def graph_invariants(g: ColoredGraph, mg: Optional[MarkedGraph] = None) -> GraphInvariants:
    mg = mg or mark(g)
    comps = mg.components()
    gens: list[list[GroupElement]] = [[] for _ in comps]
    for eid, e in enumerate(g.edges):
        if eid not in mg.forest:
            gens[mg.component_of[e.tail]].append(fundamental_image(eid, mg))
    descs = tuple(subgroup_from_generators(gs, g.ctx) for gs in gens)
    lat = TRIVIAL_LATTICE
    for d in descs:
        lat = lattice_join(lat, d.lattice)
    return GraphInvariants(g.n, g.m, tuple(tuple(c) for c in comps), descs, lat, rep_dim(lat, g.ctx))


# ---------------------------------------------------------------------------
# Lifts


def rotation_matrix(k: int, r: int) -> tuple[tuple[float, float], tuple[float, float]]:
    """Cartesian rotation by 2*pi*r/k, exact for quarter turns."""
    quarter = (4 * r) / k
    if quarter == int(quarter):
        c, s = [(1, 0), (0, 1), (-1, 0), (0, -1)][int(quarter) % 4]
    else:
        a = 2 * math.pi * r / k
        c, s = math.cos(a), math.sin(a)
    return ((c, -s), (s, c))


@dataclass(frozen=True)
class PlaneRealization:
    """Points for each quotient vertex plus the translation images v1, v2.

    The rotation generator acts as the rotation by 2*pi/k about the origin;
    for k >= 3, v2 is forced to equal the rotation applied to v1.
    """

    k: int
    points: tuple[tuple[float, float], ...]
    v1: tuple[float, float]
    v2: tuple[float, float]

    def phi(self, g: GroupElement, x: Sequence[float]) -> tuple[float, float]:
        (a, b), (c, d) = rotation_matrix(self.k, g.r)
        tx, ty = g.t
        return (
            a * x[0] + b * x[1] + tx * self.v1[0] + ty * self.v2[0],
            c * x[0] + d * x[1] + tx * self.v1[1] + ty * self.v2[1],
        )


@dataclass(frozen=True)
class LiftFragment:
    vertices: tuple[tuple[int, GroupElement], ...]
    edges: tuple[tuple[int, int, int], ...]  # (index of lifted tail, index of lifted head, quotient edge id)
    positions: Optional[tuple[tuple[float, float], ...]] = None


def lift_fragment(
    g: ColoredGraph,
    box: tuple[int, int, int, int],
    rotations: Optional[Iterable[int]] = None,
    realization: Optional[PlaneRealization] = None,
) -> LiftFragment:
    x0, x1, y0, y1 = box
    if x0 > x1 or y0 > y1:
        raise GraphError(f"empty translation box {box}")
    ctx = g.ctx
    classes = sorted(set(range(ctx.k) if rotations is None else (r % ctx.k for r in rotations)))
    if not classes:
        raise GraphError("no rotation classes selected")
    xs = [0] if g.cone else range(x0, x1 + 1)
    ys = [0] if g.cone else range(y0, y1 + 1)
    verts: list[tuple[int, GroupElement]] = []
    index: dict[tuple[int, GroupElement], int] = {}
    for i in range(g.n):
        for r in classes:
            for tx in xs:
                for ty in ys:
                    key = (i, GroupElement((tx, ty), r))
                    index[key] = len(verts)
                    verts.append(key)
    edges = []
    for eid, e in enumerate(g.edges):
        for r in classes:
            for tx in xs:
                for ty in ys:
                    gm = GroupElement((tx, ty), r)
                    target = (e.head, compose(gm, e.color, ctx))
                    if target in index:
                        edges.append((index[(e.tail, gm)], index[target], eid))
    positions = None
    if realization is not None:
        positions = tuple(realization.phi(gm, realization.points[i]) for i, gm in verts)
    return LiftFragment(tuple(verts), tuple(edges), positions)


def quotient_colors(frag: LiftFragment, ctx: GroupContext) -> dict[int, set[GroupElement]]:
    """Colors recovered from lifted edges: gamma^-1 * delta for i_gamma -> j_delta."""
    out: dict[int, set[GroupElement]] = {}
    for a, b, eid in frag.edges:
        ga = frag.vertices[a][1]
        gb = frag.vertices[b][1]
        out.setdefault(eid, set()).add(compose(inverse(ga, ctx), gb, ctx))
    return out


# ---------------------------------------------------------------------------
# Text format


class ParseError(ValueError):
    def __init__(self, line: int, message: str) -> None:
        super().__init__(f"line {line}: {message}")
        self.line = line


_EDGE_CRYSTAL = re.compile(r"^edge\s+(-?\d+)\s+(-?\d+)\s+\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)\s+(-?\d+)$")
_EDGE_CONE = re.compile(r"^edge\s+(-?\d+)\s+(-?\d+)\s+(-?\d+)$")


def parse_colored_graph(text: str) -> ColoredGraph:
    kind: Optional[str] = None
    k = 0
    n: Optional[int] = None
    edges: list[Edge] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        words = line.split()
        head = words[0]
        if head == "group":
            if kind is not None:
                raise ParseError(lineno, "duplicate group directive")
            if len(words) != 3 or words[1] not in ("gamma", "cone"):
                raise ParseError(lineno, "expected 'group gamma <k>' or 'group cone <k>'")
            try:
                k = int(words[2])
            except ValueError:
                raise ParseError(lineno, f"bad group order {words[2]!r}") from None
            if k not in (2, 3, 4, 6):
                raise ParseError(lineno, f"unsupported group order {k}; expected 2, 3, 4 or 6")
            kind = words[1]
        elif head == "vertices":
            if kind is None:
                raise ParseError(lineno, "vertices before group directive")
            if n is not None:
                raise ParseError(lineno, "duplicate vertices directive")
            if len(words) != 2 or not words[1].isdigit():
                raise ParseError(lineno, "expected 'vertices <n>'")
            n = int(words[1])
        elif head == "edge":
            if n is None or kind is None:
                raise ParseError(lineno, "edge before group and vertices directives")
            if kind == "cone":
                mt = _EDGE_CONE.match(line)
                if not mt:
                    raise ParseError(lineno, "expected 'edge <tail> <head> <r>'")
                a, b, r = (int(x) for x in mt.groups())
                tx = ty = 0
            else:
                mt = _EDGE_CRYSTAL.match(line)
                if not mt:
                    raise ParseError(lineno, "expected 'edge <tail> <head> (<tx>,<ty>) <r>'")
                a, b, tx, ty, r = (int(x) for x in mt.groups())
            if not (1 <= a <= n and 1 <= b <= n):
                raise ParseError(lineno, f"vertex out of range 1..{n}")
            if not 0 <= r < k:
                raise ParseError(lineno, f"rotation class {r} out of range 0..{k - 1}")
            edges.append(Edge(a - 1, b - 1, GroupElement((tx, ty), r)))
        else:
            raise ParseError(lineno, f"unknown directive {head!r}")
    if kind is None:
        raise ParseError(0, "missing group directive")
    if n is None:
        raise ParseError(0, "missing vertices directive")
    return ColoredGraph(gamma(k), n, tuple(edges), kind == "cone")


def serialize_colored_graph(g: ColoredGraph) -> str:
    lines = [f"group {'cone' if g.cone else 'gamma'} {g.k}", f"vertices {g.n}"]
    for e in sorted(g.edges, key=_edge_key):
        if g.cone:
            lines.append(f"edge {e.tail + 1} {e.head + 1} {e.color.r}")
        else:
            lines.append(f"edge {e.tail + 1} {e.head + 1} ({e.color.t[0]},{e.color.t[1]}) {e.color.r}")
    return "\n".join(lines) + "\n"

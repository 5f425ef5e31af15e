"""Seeded random group elements, subgroups and colored graphs for testing."""

from __future__ import annotations

import random
from typing import Optional

from .colored_graph import ColoredGraph, Edge
from .group_algebra import GroupContext, GroupElement, gamma
from .sparsity import full_rep, laman_check


def random_element(ctx: GroupContext, rng: random.Random, coord: int = 3, rotation: Optional[bool] = None) -> GroupElement:
    t = (rng.randint(-coord, coord), rng.randint(-coord, coord))
    if rotation is None:
        r = rng.randrange(ctx.k)
    elif rotation:
        r = rng.randrange(1, ctx.k)
    else:
        r = 0
    return GroupElement(t, r)


def random_generators(ctx: GroupContext, rng: random.Random, coord: int = 3, max_gens: int = 3) -> list[GroupElement]:
    """A few generators; a third of the draws are translation-only."""
    count = rng.randint(1, max_gens)
    rot = None if rng.random() < 2 / 3 else False
    return [random_element(ctx, rng, coord, rot) for _ in range(count)]


def random_crystal_graph(k: int, n: int, m: int, rng: random.Random, coord: int = 2) -> ColoredGraph:
    ctx = gamma(k)
    edges = tuple(
        Edge(rng.randrange(n), rng.randrange(n), random_element(ctx, rng, coord)) for _ in range(m)
    )
    return ColoredGraph(ctx, n, edges)


def random_cone_graph(k: int, n: int, m: int, rng: random.Random) -> ColoredGraph:
    ctx = gamma(k)
    edges = tuple(Edge(rng.randrange(n), rng.randrange(n), GroupElement((0, 0), rng.randrange(k))) for _ in range(m))
    return ColoredGraph(ctx, n, edges, cone=True)


def random_graph(k: int, n: int, m: int, rng: random.Random, cone: bool = False) -> ColoredGraph:
    return random_cone_graph(k, n, m, rng) if cone else random_crystal_graph(k, n, m, rng)


def laman_edge_count(k: int, n: int, cone: bool) -> int:
    return 2 * n - 1 + (0 if cone else (4 if k == 2 else 2))


def random_laman_graph(k: int, n: int, rng: random.Random, cone: bool = False, tries: int = 2000) -> ColoredGraph:
    """Rejection sampling on graphs with the Laman edge count."""
    m = laman_edge_count(k, n, cone)
    for _ in range(tries):
        g = random_graph(k, n, m, rng, cone)
        if laman_check(g).verdict:
            return g
    raise RuntimeError(f"no Laman graph found for k={k}, n={n} in {tries} tries")


def with_extra_edge(g: ColoredGraph, rng: random.Random) -> ColoredGraph:
    if g.cone:
        color = GroupElement((0, 0), rng.randrange(g.k))
    else:
        color = random_element(g.ctx, rng, 2)
    return g.add_edge(Edge(rng.randrange(g.n), rng.randrange(g.n), color))


def tight_edge_count(g: ColoredGraph) -> int:
    return 2 * g.n + full_rep(g)

from __future__ import annotations

import random
from pathlib import Path

import pytest

from crystal_rigidity.colored_graph import (
    ColoredGraph,
    Edge,
    GraphError,
    ParseError,
    PlaneRealization,
    component_subgroup,
    fundamental_closed_path,
    fundamental_image,
    graph_invariants,
    lift_fragment,
    mark,
    parse_colored_graph,
    quotient_colors,
    rho,
    serialize_colored_graph,
)
from crystal_rigidity.group_algebra import FULL_LATTICE, TRIVIAL_SUBGROUP, GroupElement, compose, gamma, t_dim
from crystal_rigidity.random_graphs import random_crystal_graph

FIXTURES = Path(__file__).parent / "fixtures"
G = GroupElement
ID = G((0, 0), 0)
R = G((0, 0), 1)
T1 = G((1, 0), 0)
T2 = G((0, 1), 0)


def build(k, n, edges):
    return ColoredGraph(gamma(k), n, tuple(Edge(a, b, c) for a, b, c in edges))


def test_rho_examples():
    tri = build(4, 3, [(0, 1, ID), (1, 2, ID), (2, 0, ID)])
    assert rho([(0, 1), (1, 1), (2, 1)], tri) == ID
    loop = build(4, 1, [(0, 0, G((1, 2), 3))])
    assert rho([(0, 1)], loop) == G((1, 2), 3)
    assert rho([(0, 1), (0, -1)], loop) == ID


def test_rho_rejects_broken_walk():
    g = build(4, 3, [(0, 1, ID), (2, 0, ID)])
    with pytest.raises(GraphError):
        rho([(0, 1), (1, 1)], g)


def test_fundamental_paths():
    loop = build(4, 1, [(0, 0, R)])
    mg = mark(loop)
    assert fundamental_closed_path(0, mg) == [(0, 1)]
    tri = build(4, 3, [(0, 1, ID), (1, 2, ID), (0, 2, T1)])
    mg = mark(tri)
    (non_tree,) = [e for e in range(3) if e not in mg.forest]
    path = fundamental_closed_path(non_tree, mg)
    assert rho(path, tri) in (T1, G((-1, 0), 0))
    assert rho(path, tri) == fundamental_image(non_tree, mg)
    tree = build(4, 3, [(0, 1, R), (1, 2, T1)])
    mg = mark(tree)
    assert mg.forest == frozenset({0, 1})
    with pytest.raises(GraphError):
        fundamental_closed_path(0, mg)


def test_rho_is_homomorphism_on_closed_paths():
    rng = random.Random(2)
    for _ in range(50):
        g = random_crystal_graph(4, 3, 6, rng)
        mg = mark(g)
        cyc = [e for e in range(g.m) if e not in mg.forest and mg.component_of[g.edges[e].tail] == 0]
        if len(cyc) < 2:
            continue
        p, q = fundamental_closed_path(cyc[0], mg), fundamental_closed_path(cyc[1], mg)
        assert rho(p + q, g) == compose(rho(p, g), rho(q, g), g.ctx)


def test_component_subgroup_examples():
    tree = build(4, 2, [(0, 1, R)])
    assert component_subgroup(tree, 0) == TRIVIAL_SUBGROUP
    g = build(4, 1, [(0, 0, T1), (0, 0, R)])
    d = component_subgroup(g, 0)
    assert d.lattice == FULL_LATTICE and d.has_rotation
    g = build(2, 1, [(0, 0, T1)])
    d = component_subgroup(g, 0)
    assert d.lattice.basis == ((1, 0),) and not d.has_rotation


def test_invariant_examples():
    inv = graph_invariants(build(4, 3, []))
    assert inv.rep == 0 and inv.t_values == (2, 2, 2)
    inv = parse_colored_graph((FIXTURES / "gamma4_laman.txt").read_text()).invariants
    assert inv.rep == 2 and inv.t_values == (0,)
    inv = graph_invariants(build(2, 2, [(0, 0, T1), (1, 1, T2)]))
    assert inv.rep == 4


def test_invariants_independent_of_marking():
    rng = random.Random(17)
    for k in (2, 3, 4, 6):
        for _ in range(40):
            g = random_crystal_graph(k, rng.randint(1, 5), rng.randint(0, 8), rng)
            base = graph_invariants(g)
            comps = base.components
            for _ in range(3):
                bases = [rng.choice(c) for c in comps]
                rng.shuffle(bases)
                order = list(range(g.m))
                rng.shuffle(order)
                mg = mark(g, bases, order)
                other = graph_invariants(g, mg)
                assert other.rep == base.rep
                by_comp = {c: t_dim(d) for c, d in zip(comps, base.descriptors)}
                for d, verts in zip(other.descriptors, mg.components()):
                    assert t_dim(d) == by_comp[tuple(sorted(verts))]


def test_mark_rejects_bad_bases():
    g = build(4, 3, [(0, 1, ID)])
    with pytest.raises(GraphError):
        mark(g, [0, 1])


def test_lift_identity_bound_is_a_copy():
    g = build(4, 2, [(0, 1, ID), (0, 1, R), (1, 1, T1)])
    frag = lift_fragment(g, (0, 0, 0, 0), rotations=[0])
    assert len(frag.vertices) == 2
    assert sorted(e[2] for e in frag.edges) == [0]


def test_lift_counts():
    for k in (2, 3, 4, 6):
        g = build(k, 1, [(0, 0, T1)])
        frag = lift_fragment(g, (-1, 1, -1, 1))
        assert len(frag.vertices) == 9 * k
    with pytest.raises(GraphError):
        lift_fragment(g, (1, 0, 0, 0))


def test_lift_equivariance_and_quotient():
    rng = random.Random(4)
    for k in (2, 3, 4, 6):
        g = random_crystal_graph(k, 2, 4, rng, coord=1)
        pts = ((0.3, 0.1), (-0.2, 0.7))
        v1 = (1.0, 0.0)
        v2 = (0.0, 1.0) if k == 2 else PlaneRealization(k, pts, v1, v1).phi(G((0, 0), 1), v1)
        real = PlaneRealization(k, pts, v1, v2)
        frag = lift_fragment(g, (-2, 2, -2, 2), realization=real)
        for (i, gm), pos in zip(frag.vertices, frag.positions):
            assert pos == pytest.approx(real.phi(gm, pts[i]))
        colors = quotient_colors(frag, g.ctx)
        for eid, e in enumerate(g.edges):
            assert colors.get(eid, {e.color}) == {e.color}
        assert set(colors) == set(range(g.m))


def test_parse_example():
    g = parse_colored_graph("group gamma 4\nvertices 1\nedge 1 1 (0,0) 1\n")
    assert g.n == 1 and g.edges == (Edge(0, 0, R),)


def test_round_trip():
    rng = random.Random(9)
    for k in (2, 3, 4, 6):
        for _ in range(20):
            g = random_crystal_graph(k, rng.randint(1, 4), rng.randint(0, 7), rng)
            text = serialize_colored_graph(g)
            back = parse_colored_graph(text)
            assert back == g.normalized()
            assert serialize_colored_graph(back) == text
    for f in FIXTURES.glob("*.txt"):
        g = parse_colored_graph(f.read_text())
        assert parse_colored_graph(serialize_colored_graph(g)) == g.normalized()


@pytest.mark.parametrize(
    "text,line",
    [
        ("group gamma 4\nvertices 2\nedge 1 3 (0,0) 0\n", 3),
        ("group gamma 4\nvertices 2\nedge 1 2 (0,0) 4\n", 3),
        ("group gamma 5\n", 1),
        ("vertices 2\n", 1),
        ("group gamma 2\nvertices 1\n\nedge 1 1 0 0\n", 4),
        ("group cone 3\nvertices 1\nedge 1 1 (0,0) 1\n", 3),
        ("group gamma 2\nvertices 1\nfoo\n", 3),
    ],
)
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(ParseError) as info:
        parse_colored_graph(text)
    assert info.value.line == line
    assert f"line {line}" in str(info.value)


def test_cone_parse():
    g = parse_colored_graph((FIXTURES / "cone3_laman.txt").read_text())
    assert g.cone and g.k == 3
    assert all(e.color.t == (0, 0) for e in g.edges)

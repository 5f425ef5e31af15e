from __future__ import annotations

import random
from collections import Counter
from itertools import combinations_with_replacement

import pytest

from crystal_rigidity.colored_graph import ColoredGraph, Edge
from crystal_rigidity.group_algebra import GroupElement, gamma
from crystal_rigidity.random_graphs import laman_edge_count, random_cone_graph, random_crystal_graph, random_graph
from crystal_rigidity.sparsity import (
    CountCache,
    Gamma11Oracle,
    cone_circuit_structure_ok,
    cone_class,
    decompose_gamma22,
    exhaustive_oracle,
    find_laman_circuit,
    gamma11_independent,
    gc_basis,
    generalized_cone_check,
    is_gamma11,
    is_gamma_laman,
    is_laman_circuit,
    laman_check,
    map_graph_decompose,
    one_one_check,
    overlap_graph,
    sparsity_values,
    spanned_subgraph,
    subgraph_counts,
    to_mask,
    two_two_check,
)

G = GroupElement
ID = G((0, 0), 0)
R = G((0, 0), 1)
T1 = G((1, 0), 0)
T2 = G((0, 1), 0)
RT1 = G((1, 0), 1)


def build(k, n, edges, cone=False):
    return ColoredGraph(gamma(k), n, tuple(Edge(a, b, c) for a, b, c in edges), cone)


def loops(k, colors):
    return build(k, 1, [(0, 0, c) for c in colors])


def cone_loops(k, classes):
    return build(k, 1, [(0, 0, G((0, 0), r)) for r in classes], cone=True)


def test_sparsity_value_examples():
    assert sparsity_values(build(4, 1, []))[0] == 0
    f, g, h, _ = sparsity_values(loops(4, [R, RT1, T1]))
    assert (f, h) == (4, 3) and g == 2
    assert sparsity_values(loops(4, [ID]))[0] == 0


def test_gamma11_examples():
    tree = build(4, 3, [(0, 1, R), (1, 2, T1)])
    assert gamma11_independent(tree)
    rep = is_gamma11(loops(4, [R, T1]))
    assert rep.verdict and rep.m == 2
    assert not gamma11_independent(loops(4, [ID]))
    assert one_one_check(loops(4, [ID])).witness == (0,)


def test_gamma22_examples():
    g = loops(4, [R, T1, RT1, T2])
    rep = decompose_gamma22(g)
    assert rep.verdict
    a, b = rep.decomposition
    assert sorted(a + b) == [0, 1, 2, 3]
    assert gamma11_independent(g, a) and gamma11_independent(g, b)
    assert exhaustive_oracle(g, "f").sparse
    bad = loops(4, [R, T1, RT1, ID])
    rep = decompose_gamma22(bad)
    assert not rep.sparse and rep.witness == (3,)
    rep = decompose_gamma22(build(4, 2, []))
    assert rep.sparse and not rep.verdict


def test_laman_examples():
    g = loops(4, [R, RT1, T1])
    assert is_gamma_laman(g).verdict
    assert exhaustive_oracle(g, "h").sparse
    bad = loops(4, [R, T1, T2])
    rep = is_gamma_laman(bad)
    assert not rep.verdict and not rep.sparse
    assert set(rep.witness) == {1, 2}
    assert rep.witness_bound == 1
    g2 = loops(2, [R, T1, T2, G((1, 1), 0), RT1])
    assert is_gamma_laman(g2).sparse == exhaustive_oracle(g2, "h").sparse


def test_laman_circuit_examples():
    assert find_laman_circuit(loops(4, [R, RT1, T1])) is None
    g = build(4, 2, [(0, 1, R), (1, 1, ID), (0, 0, T1)])
    assert find_laman_circuit(g) == (1,)
    base = loops(4, [R, RT1, T1])
    doubled = base.add_edge(base.edges[1])
    circ = find_laman_circuit(doubled)
    assert circ is not None and 3 in circ
    assert is_laman_circuit(doubled, circ)


def test_cone_examples():
    assert cone_class(cone_loops(3, [1]))["conelaman"].verdict
    rep = cone_class(cone_loops(3, [0]))["conelaman"]
    assert not rep.sparse
    assert cone_class(cone_loops(3, [1, 2]))["cone22"].verdict


def test_cone_checks_reject_crystal_graphs():
    with pytest.raises(ValueError):
        cone_class(loops(4, [R]))
    with pytest.raises(ValueError):
        generalized_cone_check(cone_loops(4, [1]))


def test_generalized_cone_examples():
    assert generalized_cone_check(loops(4, [R]))["gc11"].verdict
    assert gc_basis(loops(4, [R, T1])) == ((0,), (1,))
    assert not generalized_cone_check(loops(4, [T1]))["gc11"].verdict


def test_gamma11_graphs_contain_gc_bases():
    rng = random.Random(41)
    checked = 0
    for k in (2, 3, 4, 6):
        for _ in range(150):
            n = rng.randint(1, 3)
            g = random_crystal_graph(k, n, n + gamma(k).full_rep_dim // 2, rng)
            if not is_gamma11(g).verdict:
                continue
            basis, rest = gc_basis(g)
            assert len(basis) == n and len(rest) == g.m - n
            checked += 1
    assert checked > 20


def test_map_graph_examples():
    assert map_graph_decompose(1, [(0, 0)]) == [0]
    assert map_graph_decompose(3, [(0, 1), (1, 2)]) is None
    head = map_graph_decompose(2, [(0, 1), (0, 1)])
    assert sorted(head) == [0, 1]


def _random_map_graph(n, rng):
    edges = []
    for v in range(n):
        u = rng.randrange(n)
        edges.append((v, u) if rng.random() < 0.5 else (u, v))
    rng.shuffle(edges)
    return edges


def test_overlap_graphs_have_cycles():
    rng = random.Random(13)
    for _ in range(300):
        n = rng.randint(1, 8)
        x, y = _random_map_graph(n, rng), _random_map_graph(n, rng)
        for edges in (x, y):
            head = map_graph_decompose(n, edges)
            assert Counter(head) == Counter(range(n))
        ov = overlap_graph(n, x, y)
        assert all(v in ov.pred for v in ov.nodes)
        assert ov.every_component_has_cycle()


def test_oracle_guard_and_trivia():
    assert exhaustive_oracle(build(4, 2, []), "f").sparse
    assert not exhaustive_oracle(loops(4, [ID]), "f").sparse
    big = loops(4, [R] * 17)
    with pytest.raises(ValueError):
        exhaustive_oracle(big, "f")
    with pytest.raises(ValueError):
        exhaustive_oracle(loops(4, [R]), "nope")


def test_decider_matches_oracle_on_single_vertex_graphs():
    # every multiset of at most 4 loops from a small color palette
    palette = [ID, R, T1, T2, RT1, G((0, 0), 2), G((1, 1), 3), G((-1, 2), 0)]
    for size in range(5):
        for colors in combinations_with_replacement(palette, size):
            g = loops(4, colors)
            assert decompose_gamma22(g).sparse == exhaustive_oracle(g, "f").sparse


def test_deciders_match_oracle():
    rng = random.Random(77)
    for k in (2, 3, 4, 6):
        for cone in (False, True):
            for _ in range(40):
                n = rng.randint(1, 3)
                m = rng.randint(0, min(10, laman_edge_count(k, n, cone) + 1))
                g = random_graph(k, n, m, rng, cone)
                cache = CountCache(g)
                f_orc = exhaustive_oracle(g, "f", cache)
                h_orc = exhaustive_oracle(g, "h", cache)
                hp_orc = exhaustive_oracle(g, "hprime", cache)
                rep22 = two_two_check(g)
                lam = laman_check(g)
                assert rep22.sparse == f_orc.sparse
                assert lam.sparse == h_orc.sparse
                assert h_orc.sparse == hp_orc.sparse
                if not rep22.sparse:
                    ids = rep22.witness
                    assert len(ids) > subgraph_counts(g, ids).f
                if not lam.sparse:
                    assert len(lam.witness) > lam.witness_bound
                if rep22.verdict:
                    a, b = rep22.decomposition
                    assert not set(a) & set(b)
                    assert one_one_check(g, edge_ids=a).verdict and one_one_check(g, edge_ids=b).verdict


def test_doubling_equivalence():
    rng = random.Random(5)
    for k in (2, 3, 4, 6):
        for _ in range(40):
            n = rng.randint(1, 3)
            g = random_crystal_graph(k, n, laman_edge_count(k, n, False), rng)
            all_double = all(two_two_check(g.add_edge(e)).verdict for e in g.edges)
            assert laman_check(g).verdict == all_double


def test_cone_laman_structure():
    rng = random.Random(19)
    seen_circuits = 0
    for k in (2, 3, 4, 6):
        for _ in range(80):
            n = rng.randint(1, 4)
            g = random_cone_graph(k, n, laman_edge_count(k, n, True) + rng.randint(0, 1), rng)
            res = cone_class(g)
            if res["conelaman"].verdict:
                assert len(spanned_subgraph(g, range(g.m)).invariants.components) == 1
                assert g.invariants.components and len(g.invariants.components) == 1
            circ = res["conelaman"].extra.get("circuit")
            if circ is not None and len(circ) > 1:
                seen_circuits += 1
                assert res["conelaman"].extra["circuit_connected"]
                assert cone_circuit_structure_ok(g, circ)
    assert seen_circuits > 0


def test_gamma11_basis_exchange():
    rng = random.Random(23)
    trials = 0
    for k in (2, 3, 4, 6):
        for _ in range(60):
            n = rng.randint(1, 3)
            need = n + gamma(k).full_rep_dim // 2
            g = random_crystal_graph(k, n, 3 * need, rng)
            oracle = Gamma11Oracle(g)

            def greedy(order):
                mask = 0
                for e in order:
                    if oracle.independent(mask | 1 << e):
                        mask |= 1 << e
                return mask

            order = list(range(g.m))
            b1 = greedy(order)
            rng.shuffle(order)
            b2 = greedy(order)
            if bin(b1).count("1") != need or b1 == b2:
                continue
            assert bin(b2).count("1") == need
            for x in range(g.m):
                if not (b1 >> x & 1) or b2 >> x & 1:
                    continue
                swaps = [
                    y for y in range(g.m)
                    if b2 >> y & 1 and not b1 >> y & 1 and oracle.independent(b1 & ~(1 << x) | 1 << y)
                ]
                assert swaps
                trials += 1
    assert trials > 20
    assert to_mask([0, 2]) == 5

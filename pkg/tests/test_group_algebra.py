from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crystal_rigidity.group_algebra import (
    FULL_LATTICE,
    TRIVIAL_LATTICE,
    TRIVIAL_SUBGROUP,
    GroupElement,
    SubgroupDescriptor,
    cent_dim,
    compose,
    contains,
    gamma,
    inverse,
    is_subgroup,
    lattice_hnf,
    lattice_join,
    lattice_saturate,
    power,
    radical,
    rep_dim,
    same_subgroup,
    subgroup_from_generators,
    t_dim,
    teich_dim,
)
from crystal_rigidity.acceptance import closure_in_box

G = GroupElement
ks = st.sampled_from([2, 3, 4, 6])
small = st.integers(-3, 3)


@st.composite
def elements(draw, k):
    return G((draw(small), draw(small)), draw(st.integers(0, k - 1)))


def test_action_matrices_have_order_k():
    table = {2: ((-1, 0), (0, -1)), 3: ((0, -1), (1, -1)), 4: ((0, -1), (1, 0)), 6: ((0, -1), (1, 1))}
    for k, m in table.items():
        ctx = gamma(k)
        assert ctx.action_matrix == m
        assert ctx.act(k, (3, -5)) == (3, -5)
        assert all(ctx.act(j, (1, 0)) != (1, 0) for j in range(1, k))


def test_compose_examples():
    g4 = gamma(4)
    assert compose(G((0, 0), 1), G((1, 0), 0), g4) == G((0, 1), 1)
    g2 = gamma(2)
    assert compose(G((1, 0), 1), G((1, 0), 1), g2) == G((0, 0), 0)
    x = G((2, -1), 3)
    assert compose(g4.identity, x, g4) == x


def test_inverse_examples():
    assert inverse(G((1, 0), 0), gamma(4)) == G((-1, 0), 0)
    assert inverse(G((0, 0), 1), gamma(4)) == G((0, 0), 3)
    assert inverse(G((1, 0), 1), gamma(2)) == G((1, 0), 1)


def test_bad_k_rejected():
    with pytest.raises(ValueError):
        gamma(5)


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_group_laws(data):
    k = data.draw(ks)
    ctx = gamma(k)
    a, b, c = (data.draw(elements(k)) for _ in range(3))
    assert compose(compose(a, b, ctx), c, ctx) == compose(a, compose(b, c, ctx), ctx)
    assert compose(a, inverse(a, ctx), ctx) == ctx.identity
    assert compose(inverse(a, ctx), a, ctx) == ctx.identity
    assert power(a, -2, ctx) == inverse(power(a, 2, ctx), ctx)


def test_hnf_examples():
    assert lattice_hnf([(2, 0), (0, 3), (1, 1)]).basis == ((1, 0), (0, 1))
    assert lattice_hnf([]).rank == 0
    lat = lattice_hnf([(2, 4)])
    assert lat.rank == 1 and lat.basis == ((2, 4),)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.tuples(small, small), max_size=4), st.randoms(use_true_random=False))
def test_hnf_canonical(vecs, rnd):
    lat = lattice_hnf(vecs)
    shuffled = list(vecs)
    rnd.shuffle(shuffled)
    assert lattice_hnf(shuffled) == lat
    assert lattice_hnf(lat.basis) == lat
    for v in vecs:
        assert lat.contains(v)


def test_hnf_membership_against_enumeration():
    rng = random.Random(5)
    for _ in range(200):
        vecs = [(rng.randint(-3, 3), rng.randint(-3, 3)) for _ in range(rng.randint(1, 3))]
        lat = lattice_hnf(vecs)
        reach = {(0, 0)}
        frontier = [(0, 0)]
        steps = vecs + [(-a, -b) for a, b in vecs]
        while frontier:
            nxt = []
            for x, y in frontier:
                for a, b in steps:
                    p = (x + a, y + b)
                    if max(abs(p[0]), abs(p[1])) <= 10 and p not in reach:
                        reach.add(p)
                        nxt.append(p)
            frontier = nxt
        for x in range(-2, 3):
            for y in range(-2, 3):
                assert lat.contains((x, y)) == ((x, y) in reach)


def test_join_and_saturate():
    assert lattice_saturate(lattice_hnf([(2, 0), (0, 2)])) == FULL_LATTICE
    assert lattice_saturate(lattice_hnf([(2, 4)])).basis == ((1, 2),)
    lat = lattice_hnf([(3, 1)])
    assert lattice_join(TRIVIAL_LATTICE, lat) == lat


def test_subgroup_examples():
    g4 = gamma(4)
    d = subgroup_from_generators([G((0, 0), 1), G((1, 0), 0)], g4)
    assert d.lattice == FULL_LATTICE and d.has_rotation
    assert subgroup_from_generators([], g4) == TRIVIAL_SUBGROUP
    g2 = gamma(2)
    d = subgroup_from_generators([G((1, 0), 1), G((0, 0), 1)], g2)
    assert d.lattice.basis == ((1, 0),) and d.has_rotation


def test_subgroup_against_closure():
    rng = random.Random(11)
    for k in (2, 3, 4, 6):
        ctx = gamma(k)
        for _ in range(60):
            gens = [G((rng.randint(-2, 2), rng.randint(-2, 2)), rng.randrange(k)) for _ in range(rng.randint(1, 3))]
            d = subgroup_from_generators(gens, ctx)
            seen = closure_in_box(gens, ctx, 5)
            assert all(contains(d, x, ctx) for x in seen)
            for x in range(-1, 2):
                for y in range(-1, 2):
                    for r in range(k):
                        e = G((x, y), r)
                        if contains(d, e, ctx):
                            assert e in seen


def test_radical_examples():
    g2, g4 = gamma(2), gamma(4)
    d = SubgroupDescriptor(lattice_hnf([(2, 0)]))
    assert radical(d, g2) == SubgroupDescriptor(lattice_hnf([(1, 0)]))
    assert radical(SubgroupDescriptor(lattice_hnf([(3, 0)])), g4) == SubgroupDescriptor(FULL_LATTICE)
    assert radical(TRIVIAL_SUBGROUP, g4) == TRIVIAL_SUBGROUP


def test_radical_of_rotation_is_stabilizer_of_its_center():
    g4 = gamma(4)
    # half turn about (1/2, 0): no integral quarter turn fixes that point
    half_turn = subgroup_from_generators([G((1, 0), 2)], g4)
    assert same_subgroup(radical(half_turn, g4), half_turn, g4)
    # half turn about the origin: the quarter turn about the origin joins it
    origin = subgroup_from_generators([G((0, 0), 2)], g4)
    rad = radical(origin, g4)
    assert contains(rad, G((0, 0), 1), g4)
    assert not contains(rad, G((1, 0), 1), g4)


@settings(max_examples=150, deadline=None)
@given(st.data())
def test_radical_laws(data):
    k = data.draw(ks)
    ctx = gamma(k)
    gens = data.draw(st.lists(elements(k), min_size=0, max_size=3))
    d = subgroup_from_generators(gens, ctx)
    rad = radical(d, ctx)
    assert same_subgroup(radical(rad, ctx), rad, ctx)
    assert is_subgroup(d, rad, ctx)
    assert rep_dim(rad.lattice, ctx) == rep_dim(d.lattice, ctx)
    assert t_dim(rad) == t_dim(d)
    assert cent_dim(d) >= t_dim(d)
    g = data.draw(elements(k))
    bigger = subgroup_from_generators(gens + [g], ctx)
    q0 = rep_dim(d.lattice, ctx) - t_dim(d)
    q1 = rep_dim(bigger.lattice, ctx) - t_dim(bigger)
    assert q1 - q0 == (0 if contains(rad, g, ctx) else 2)
    assert is_subgroup(rad, radical(bigger, ctx), ctx)


def test_dimension_tables():
    g2, g4 = gamma(2), gamma(4)
    one = lattice_hnf([(1, 0)])
    assert rep_dim(one, g2) == 2 and rep_dim(one, g4) == 2
    assert rep_dim(TRIVIAL_LATTICE, g4) == 0
    rot = SubgroupDescriptor(TRIVIAL_LATTICE, True, G((0, 0), 1))
    assert t_dim(rot) == 0 and t_dim(TRIVIAL_SUBGROUP) == 2
    assert t_dim(SubgroupDescriptor(FULL_LATTICE)) == 2
    assert cent_dim(TRIVIAL_SUBGROUP) == 3 and cent_dim(rot) == 1
    assert teich_dim(FULL_LATTICE, g2) == 3 and teich_dim(TRIVIAL_LATTICE, g2) == 0

"""The acceptance suite: one function per criterion, shared by the tests and
the `selftest` command.

Every instance is drawn from its own `random.Random` seeded by a string
built from the suite seed, the criterion, the group and the instance index,
so a reported violation can be reproduced in isolation.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator, Optional

from .colored_graph import ColoredGraph, serialize_colored_graph
from .direction_networks import (
    UndefinedProjection,
    build_system,
    collapsed_space_dim,
    construct_collapsed_basis,
    generic_rank,
    projection_chain,
    projection_scale_factor,
    random_directions,
    rotation_angle,
    rotation_line_residual,
    satisfies,
    solve_realizations,
    vstar,
)
from .finite_field import field_for, rank
from .group_algebra import (
    GroupContext,
    GroupElement,
    compose,
    conjugate,
    contains,
    gamma,
    inverse,
    is_subgroup,
    power,
    radical,
    rep_dim,
    same_subgroup,
    subgroup_from_generators,
    t_dim,
)
from .group_matroid import GroundElement, SubsetState, g1_rank
from .random_graphs import (
    laman_edge_count,
    random_element,
    random_generators,
    random_graph,
    random_laman_graph,
    with_extra_edge,
)
from .rigidity import is_generically_rigid
from .sparsity import (
    CountCache,
    bits,
    exhaustive_oracle,
    find_laman_circuit,
    full_rep,
    laman_check,
    one_one_check,
    spanned_subgraph,
    two_two_check,
)

GROUPS = (2, 3, 4, 6)
SZ_BOUND = Fraction(1, 2**60)


@dataclass
class CriterionResult:
    number: int
    title: str
    checked: int = 0
    violations: int = 0
    seconds: float = 0.0
    notes: list[str] = field(default_factory=list)
    examples: list[str] = field(default_factory=list)
    time_limit: Optional[float] = None

    @property
    def passed(self) -> bool:
        if self.violations or not self.checked:
            return False
        return self.time_limit is None or self.seconds < self.time_limit

    def fail(self, what: str) -> None:
        self.violations += 1
        if len(self.examples) < 5:
            self.examples.append(what)

    def line(self, timing: bool = True) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f"; {'; '.join(self.notes)}" if self.notes else ""
        clock = f", {self.seconds:.1f}s" if timing else ""
        return (
            f"[{status}] criterion {self.number}: {self.title}: "
            f"{self.checked} checks, {self.violations} violations{clock}{extra}"
        )


def _rng(seed: int, *parts: object) -> random.Random:
    return random.Random("-".join(str(p) for p in (seed,) + parts))


def _count(base: int, scale: float) -> int:
    return max(1, int(math.ceil(base * scale)))


def _timed(fn: Callable[..., CriterionResult]) -> Callable[..., CriterionResult]:
    def wrapper(*args, **kwargs) -> CriterionResult:
        t0 = time.perf_counter()
        res = fn(*args, **kwargs)
        res.seconds = time.perf_counter() - t0
        return res

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


# ---------------------------------------------------------------------------
# 1. rank-function axioms


@_timed
def criterion_1(seed: int = 0, scale: float = 1.0) -> CriterionResult:
    """g1 axioms on random triples A <= B, x."""
    res = CriterionResult(1, "matroid rank axioms", time_limit=60.0)
    per_group = _count(10_000, scale)
    for k in GROUPS:
        ctx = gamma(k)
        for i in range(per_group):
            rng = _rng(seed, 1, k, i)
            n = rng.randint(1, 3)
            big = [GroundElement(random_element(ctx, rng, 3), rng.randrange(n)) for _ in range(rng.randint(0, 7))]
            small = [x for x in big if rng.random() < 0.5]
            x = GroundElement(random_element(ctx, rng, 3), rng.randrange(n))
            a = SubsetState.from_elements(ctx, n, small)
            b = SubsetState.from_elements(ctx, n, big)
            ga, gb = g1_rank(a), g1_rank(b)
            gax = g1_rank(a.with_element(*x))
            gbx = g1_rank(b.with_element(*x))
            ok = (
                0 <= ga <= len(small)
                and ga <= gb
                and gax - ga in (0, 1)
                and gbx - gb in (0, 1)
                and gax - ga >= gbx - gb
                and a.can_add(*x) == (gax == ga + 1)
            )
            res.checked += 1
            if not ok:
                res.fail(f"k={k} i={i}: g1(A)={ga} g1(B)={gb} g1(A+x)={gax} g1(B+x)={gbx}")
    return res


# ---------------------------------------------------------------------------
# 2. radicals against a brute-force membership oracle


def closure_in_box(gens: list[GroupElement], ctx: GroupContext, box: int) -> set[GroupElement]:
    """Elements reachable from the identity by multiplying by generators and
    their inverses without leaving the translation box |t| <= box."""
    letters = gens + [inverse(g, ctx) for g in gens]
    seen = {ctx.identity}
    frontier = [ctx.identity]
    while frontier:
        nxt = []
        for a in frontier:
            for g in letters:
                b = compose(a, g, ctx)
                if abs(b.t[0]) <= box and abs(b.t[1]) <= box and b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return seen


def _window(ctx: GroupContext, radius: int) -> Iterator[GroupElement]:
    for x in range(-radius, radius + 1):
        for y in range(-radius, radius + 1):
            for r in range(ctx.k):
                yield GroupElement((x, y), r)


def _q(d, ctx) -> int:
    return rep_dim(d.lattice, ctx) - t_dim(d)


@_timed
def criterion_2(seed: int = 0, scale: float = 1.0, box: int = 5) -> CriterionResult:
    """Radical lemmas; membership in the generated subgroup comes from the
    box-bounded closure, compared against the lattice descriptor."""
    res = CriterionResult(2, "radical and subgroup lemmas")
    per_group = _count(5_000, scale)
    tallies = dict.fromkeys(("roots", "conj", "push", "wider"), 0)
    for k in GROUPS:
        ctx = gamma(k)
        inner = list(_window(ctx, 1))
        roots = []
        for gm in _window(ctx, 2):
            for j in range(2, ctx.k + 1):
                pw = power(gm, j, ctx)
                if pw != ctx.identity:
                    roots.append((gm, j, pw, max(map(abs, pw.t)) <= box))
        for i in range(per_group):
            rng = _rng(seed, 2, k, i)
            gens = random_generators(ctx, rng, 3, 3)
            d = subgroup_from_generators(gens, ctx)
            oracle = closure_in_box(gens, ctx, box)
            rad = radical(d, ctx)
            res.checked += 1
            tag = f"k={k} i={i} gens={gens}"
            # the descriptor against the oracle, both directions
            if not all(contains(d, g, ctx) for g in oracle):
                res.fail(f"{tag}: oracle element outside descriptor")
                continue
            missing = [g for g in inner if contains(d, g, ctx) and g not in oracle]
            for wider in (box + 3, 2 * box + 2):
                if not missing:
                    break
                # short words can detour far from the window: widen the box
                tallies["wider"] += 1
                big = closure_in_box(gens, ctx, wider)
                missing = [g for g in missing if g not in big]
            if missing:
                res.fail(f"{tag}: descriptor elements {missing} missing from oracle")
                continue
            # Rad contains the subgroup and keeps rep and T
            if not all(contains(rad, g, ctx) for g in oracle) or _q(rad, ctx) != _q(d, ctx):
                res.fail(f"{tag}: radical does not preserve the subgroup invariants")
            if rep_dim(rad.lattice, ctx) != rep_dim(d.lattice, ctx) or t_dim(rad) != t_dim(d):
                res.fail(f"{tag}: radical changes rep or T")
            # monotone
            sub = [g for g in gens if rng.random() < 0.5]
            if not is_subgroup(radical(subgroup_from_generators(sub, ctx), ctx), rad, ctx):
                res.fail(f"{tag}: radical not monotone for {sub}")
            # roots: gamma^j in the subgroup, gamma^j != id  =>  gamma in Rad
            for gm, j, pw, near in roots:
                if pw in oracle if near else contains(d, pw, ctx):
                    tallies["roots"] += 1
                    if not contains(rad, gm, ctx):
                        res.fail(f"{tag}: root {gm} (power {j}) outside radical")
            # conjugation of translation subgroups
            if not d.has_rotation:
                tallies["conj"] += 1
                g = random_element(ctx, rng, 3)
                if not same_subgroup(radical(conjugate(d, g, ctx), ctx), rad, ctx):
                    res.fail(f"{tag}: radical changed under conjugation by {g}")
            # pushing translations
            extra = [random_element(ctx, rng, 3, rotation=False) for _ in range(rng.randint(0, 2))]
            lam = [GroupElement(v, 0) for v in d.lattice.basis]
            lhs = radical(subgroup_from_generators(lam + extra, ctx), ctx)
            both = subgroup_from_generators(gens + extra, ctx)
            rhs = radical(subgroup_from_generators([GroupElement(v, 0) for v in both.lattice.basis], ctx), ctx)
            tallies["push"] += 1
            if not same_subgroup(lhs, rhs, ctx):
                res.fail(f"{tag}: push-translations mismatch with {extra}")
            # rep - T jumps by 2 exactly outside the radical
            g = random_element(ctx, rng, 3)
            jump = _q(subgroup_from_generators(gens + [g], ctx), ctx) - _q(d, ctx)
            if jump != (0 if contains(rad, g, ctx) else 2):
                res.fail(f"{tag}: rep-T jump {jump} for {g}")
            # also an element known to be inside
            g_in = rng.choice(sorted(oracle))
            if _q(subgroup_from_generators(gens + [g_in], ctx), ctx) != _q(d, ctx):
                res.fail(f"{tag}: rep-T moved for member {g_in}")
    res.notes.append(
        f"root hits {tallies['roots']}, conjugations {tallies['conj']}, "
        f"pushes {tallies['push']}, widened oracles {tallies['wider']}"
    )
    return res


# ---------------------------------------------------------------------------
# 3 and 5. (2,2) decomposition, then direction-network collapse


def _tight_instances(seed: int, scale: float, cone: bool) -> Iterator[tuple[int, int, ColoredGraph]]:
    per_group = _count(1_000, scale)
    for k in GROUPS:
        for i in range(per_group):
            rng = _rng(seed, 3, "cone" if cone else "gamma", k, i)
            n = rng.randint(1, 3)
            m = 2 * n + (0 if cone else gamma(k).full_rep_dim)
            yield k, i, random_graph(k, n, m, rng, cone)


def _is_one_one_exhaustive(g: ColoredGraph, ids: tuple[int, ...]) -> bool:
    sub = g.edge_subgraph(ids)
    required = g.n + full_rep(g) // 2
    return len(ids) == required and exhaustive_oracle(sub, "g").sparse


def _check_decomposition(g: ColoredGraph) -> tuple[bool, bool, Optional[str]]:
    """(union verdict, oracle verdict, problem with the decomposition)."""
    rep = two_two_check(g)
    oracle = exhaustive_oracle(g, "f")
    truth = oracle.sparse and g.m == 2 * g.n + full_rep(g)
    problem = None
    if rep.verdict:
        parts = rep.decomposition or ()
        if len(parts) != 2 or sorted(parts[0] + parts[1]) != list(range(g.m)):
            problem = "decomposition is not a partition"
        else:
            for p in parts:
                if not one_one_check(g, edge_ids=p).verdict or not _is_one_one_exhaustive(g, p):
                    problem = f"part {p} is not a spanning (1,1) graph"
    elif rep.witness is not None and len(rep.witness) <= (rep.witness_bound or 0):
        problem = f"witness {rep.witness} does not violate its bound"
    return rep.verdict, truth, problem


@_timed
def criterion_3(seed: int = 0, scale: float = 1.0) -> CriterionResult:
    res = CriterionResult(3, "decomposition equivalence")
    tight = {True: 0, False: 0}
    for cone in (False, True):
        for k, i, g in _tight_instances(seed, scale, cone):
            union, truth, problem = _check_decomposition(g)
            res.checked += 1
            tight[cone] += union
            if union != truth or problem:
                res.fail(f"{'cone' if cone else 'gamma'} k={k} i={i}: union={union} oracle={truth} {problem or ''}\n"
                         + serialize_colored_graph(g))
    res.notes.append(f"tight instances: {tight[False]} crystal, {tight[True]} cone")
    return res


@_timed
def criterion_5(seed: int = 0, scale: float = 1.0) -> CriterionResult:
    res = CriterionResult(5, "direction-network collapse")
    worst = Fraction(0)
    for cone in (False, True):
        for k, i, g in _tight_instances(seed, scale, cone):
            if not two_two_check(g).verdict:
                continue
            rep = generic_rank(g, seed=seed + i, trials=3)
            worst = max(worst, rep.per_trial_bound)
            res.checked += 1
            want = 2 * g.n + full_rep(g)
            if rep.rank != want or rep.per_trial_bound > SZ_BOUND:
                res.fail(f"{'cone' if cone else 'gamma'} k={k} i={i}: rank {rep.ranks} want {want}")
    if worst:
        res.notes.append(f"per-trial failure bound <= 2^{math.log2(worst.numerator) - math.log2(worst.denominator):.1f}")
    return res


# ---------------------------------------------------------------------------
# 4 and 11. Laman by doubling against exhaustive h and h' counts


def _laman_instances(seed: int, scale: float, cone: bool) -> Iterator[tuple[int, int, ColoredGraph]]:
    per_group = _count(1_000, scale)
    for k in GROUPS:
        for i in range(per_group):
            rng = _rng(seed, 4, "cone" if cone else "gamma", k, i)
            n = rng.randint(1, 3)
            target = laman_edge_count(k, n, cone)
            m = target if rng.random() < 0.5 else rng.randint(1, min(10, target + 1))
            yield k, i, random_graph(k, n, min(m, 10), rng, cone)


@dataclass
class _LamanRow:
    cone: bool
    k: int
    i: int
    graph: ColoredGraph
    decider: bool
    decider_sparse: bool
    h_class: bool
    h_sparse: bool
    hp_class: bool
    hp_sparse: bool


_LAMAN_CACHE: dict[tuple[int, float], list[_LamanRow]] = {}


def laman_rows(seed: int, scale: float) -> list[_LamanRow]:
    key = (seed, scale)
    if key not in _LAMAN_CACHE:
        rows = []
        for cone in (False, True):
            for k, i, g in _laman_instances(seed, scale, cone):
                rep = laman_check(g)
                cache = CountCache(g)
                h = exhaustive_oracle(g, "h", cache)
                hp = exhaustive_oracle(g, "hprime", cache)
                target = laman_edge_count(k, g.n, cone)
                rows.append(
                    _LamanRow(cone, k, i, g, rep.verdict, rep.sparse,
                              h.sparse and g.m == target, h.sparse, hp.sparse and g.m == target, hp.sparse)
                )
        _LAMAN_CACHE[key] = rows
    return _LAMAN_CACHE[key]


@_timed
def criterion_4(seed: int = 0, scale: float = 1.0) -> CriterionResult:
    res = CriterionResult(4, "doubling equivalence")
    members = 0
    for row in laman_rows(seed, scale):
        res.checked += 1
        members += row.h_class
        if row.decider != row.h_class or row.decider_sparse != row.h_sparse:
            res.fail(f"{'cone' if row.cone else 'gamma'} k={row.k} i={row.i}: decider={row.decider} "
                     f"oracle={row.h_class}\n" + serialize_colored_graph(row.graph))
    res.notes.append(f"{members} Laman instances")
    return res


@_timed
def criterion_11(seed: int = 0, scale: float = 1.0) -> CriterionResult:
    res = CriterionResult(11, "h vs h' class agreement")
    sparse_mismatch = 0
    for row in laman_rows(seed, scale):
        res.checked += 1
        sparse_mismatch += row.h_sparse != row.hp_sparse
        if row.h_class != row.hp_class:
            res.fail(f"{'cone' if row.cone else 'gamma'} k={row.k} i={row.i}: h={row.h_class} h'={row.hp_class}\n"
                     + serialize_colored_graph(row.graph))
    res.notes.append(f"sparse-only disagreements {sparse_mismatch}")
    return res


# ---------------------------------------------------------------------------
# 6. faithful realizations and circuits


@_timed
def criterion_6(seed: int = 0, scale: float = 1.0) -> CriterionResult:
    res = CriterionResult(6, "faithful realization")
    per_group = _count(200, scale)
    circuits = 0
    for cone in (False, True):
        for k in GROUPS:
            F = field_for(k)
            for i in range(per_group):
                rng = _rng(seed, 6, cone, k, i)
                g = random_laman_graph(k, rng.randint(1, 6), rng, cone)
                tag = f"{'cone' if cone else 'gamma'} k={k} i={i}"
                sol = solve_realizations(build_system(g, random_directions(g, seed + i, F), F), g, seed=seed + i)
                res.checked += 1
                if sol.nullity != 1 or not sol.faithful or sol.sample_collapsed:
                    res.fail(f"{tag}: nullity {sol.nullity}, collapsed {sorted(sol.sample_collapsed)}\n"
                             + serialize_colored_graph(g))
                # one extra edge creates a circuit, whose edges must collapse
                g2 = with_extra_edge(g, rng)
                circ = find_laman_circuit(g2)
                if circ is None:
                    res.fail(f"{tag}: no circuit after adding an edge")
                    continue
                circuits += 1
                sol2 = solve_realizations(build_system(g2, random_directions(g2, seed + i, F), F), g2, seed=seed + i)
                res.checked += 1
                if not (sol2.always_collapsed & set(circ)) or not sol2.sample_collapsed:
                    res.fail(f"{tag}: circuit {circ} has a solution with no collapsed circuit edge\n"
                             + serialize_colored_graph(g2))
    res.notes.append(f"{circuits} circuit graphs")
    return res


# ---------------------------------------------------------------------------
# 7. collapsed-dimension formula


@_timed
def criterion_7(seed: int = 0, scale: float = 1.0) -> CriterionResult:
    res = CriterionResult(7, "collapsed-dimension formula")
    per_group = _count(100, scale)
    for cone in (False, True):
        for k in GROUPS:
            F = field_for(k)
            for i in range(per_group):
                rng = _rng(seed, 7, cone, k, i)
                n = rng.randint(1, 4)
                g = random_graph(k, n, rng.randint(0, 2 * n + 2), rng, cone)
                tag = f"{'cone' if cone else 'gamma'} k={k} i={i}"
                basis = construct_collapsed_basis(g, F)
                want = collapsed_space_dim(g)
                res.checked += 1
                ncols = 2 * g.n + (0 if cone else (4 if k == 2 else 2))
                if len(basis) != want or (basis and rank(F, basis, ncols) != want):
                    res.fail(f"{tag}: {len(basis)} vectors, want {want} independent")
                if g.m:
                    for t in range(2):
                        sysm = build_system(g, random_directions(g, seed * 31 + i * 2 + t, F), F)
                        if not all(satisfies(sysm, x) for x in basis):
                            res.fail(f"{tag}: collapsed vector violates a direction system")
                            break
                # circuit nullity
                g2 = with_extra_edge(random_laman_graph(k, rng.randint(1, 4), rng, cone), rng)
                circ = find_laman_circuit(g2)
                if circ is None:
                    continue
                sub = spanned_subgraph(g2, circ)
                rep = generic_rank(sub, seed=seed + i)
                res.checked += 1
                if rep.nullity != collapsed_space_dim(sub):
                    res.fail(f"{tag}: circuit nullity {rep.nullity}, formula {collapsed_space_dim(sub)}\n"
                             + serialize_colored_graph(sub))
    return res


# ---------------------------------------------------------------------------
# 8 and 9. rigidity verdicts and the Maxwell bound


def _rigidity_instances(seed: int, scale: float) -> Iterator[tuple[bool, int, int, ColoredGraph]]:
    per_group = _count(200, scale)
    for cone in (False, True):
        for k in GROUPS:
            max_n = 6 if cone else (4 if k == 2 else 5)
            for i in range(per_group):
                rng = _rng(seed, 8, cone, k, i)
                n = rng.randint(1, max_n)
                if i % 2 == 0:
                    g = random_laman_graph(k, n, rng, cone)
                else:
                    g = random_graph(k, n, laman_edge_count(k, n, cone), rng, cone)
                yield cone, k, i, g


_RIGIDITY_CACHE: dict[tuple[int, float], list] = {}


def rigidity_rows(seed: int, scale: float) -> list:
    key = (seed, scale)
    if key not in _RIGIDITY_CACHE:
        _RIGIDITY_CACHE[key] = [
            (cone, k, i, g, is_generically_rigid(g, seed=seed + i)) for cone, k, i, g in _rigidity_instances(seed, scale)
        ]
    return _RIGIDITY_CACHE[key]


@_timed
def criterion_8(seed: int = 0, scale: float = 1.0) -> CriterionResult:
    res = CriterionResult(8, "rigidity equivalence")
    seen: dict[str, int] = {}
    for cone, k, i, g, v in rigidity_rows(seed, scale):
        res.checked += 1
        seen[v.combinatorial] = seen.get(v.combinatorial, 0) + 1
        bad = not v.consistent or (v.combinatorial == "minimally_rigid" and v.nullity != 1)
        if bad:
            res.fail(f"{'cone' if cone else 'gamma'} k={k} i={i}: combinatorial {v.combinatorial}, numeric "
                     f"{v.numeric} (rank {v.rank}/{v.target}, nullity {v.nullity})\n" + serialize_colored_graph(g))
    res.notes.append(", ".join(f"{name} {seen[name]}" for name in sorted(seen)))
    return res


def subset_ranks(rows: list[list], F, ncols: int) -> list[int]:
    """Rank of every row subset (indexed by bitmask), by extending reduced
    echelon bases one row at a time along a depth-first walk."""
    m = len(rows)
    out = [0] * (1 << m)

    def reduce(basis: list[tuple[int, list]], row: list) -> Optional[tuple[int, list]]:
        v = list(row)
        for piv, b in basis:
            c = v[piv]
            if not F.is_zero(c):
                v = [F.sub(x, F.mul(c, y)) for x, y in zip(v, b)]
        for j, x in enumerate(v):
            if not F.is_zero(x):
                inv = F.inv(x)
                return j, [F.mul(inv, y) for y in v]
        return None

    def walk(mask: int, start: int, basis: list[tuple[int, list]]) -> None:
        out[mask] = len(basis)
        for e in range(start, m):
            nb = reduce(basis, rows[e])
            walk(mask | 1 << e, e + 1, basis + [nb] if nb is not None else basis)

    walk(0, 0, [])
    return out


@_timed
def criterion_9(seed: int = 0, scale: float = 1.0, max_m: int = 12) -> CriterionResult:
    res = CriterionResult(9, "Maxwell bound")
    skipped = 0
    for cone, k, i, g, v in rigidity_rows(seed, scale):
        if g.m > max_m or v.system is None:
            continue
        sysm = v.system
        F = sysm.field
        zero_rows = {e for e, row in enumerate(sysm.rows) if all(F.is_zero(x) for x in row)}
        ranks = subset_ranks(sysm.rows, F, sysm.ncols)
        cache = CountCache(g)
        zmask = sum(1 << e for e in zero_rows)
        for mask in range(1, 1 << g.m):
            if mask & zmask:
                skipped += 1
                continue
            if ranks[mask] <= 0:
                continue
            res.checked += 1
            h = cache(mask).h
            if ranks[mask] > h:
                res.fail(f"{'cone' if cone else 'gamma'} k={k} i={i} edges {bits(mask)}: rank {ranks[mask]} > h {h}")
    res.notes.append(f"{skipped} subgraphs with collapsed edges skipped")
    return res


# ---------------------------------------------------------------------------
# 10. projection gadgets


@_timed
def criterion_10(seed: int = 0, scale: float = 1.0) -> CriterionResult:
    res = CriterionResult(10, "projection gadgets")
    count = _count(1_000, scale)
    rng = _rng(seed, 10)
    undefined = 0

    def vec() -> tuple[float, float]:
        return (rng.uniform(-1, 1), rng.uniform(-1, 1))

    for _ in range(count):
        try:
            lam = projection_scale_factor(vec(), vec(), math.pi)
        except UndefinedProjection:
            undefined += 1
            continue
        res.checked += 1
        if lam != 0.0:
            res.fail(f"order-2 scale factor {lam!r}")
    closest = math.inf
    for k in (3, 4, 6):
        for _ in range(count):
            # a single line maps to itself with factor 1, so cycles need two lines
            length = rng.randint(2, 5)
            vs = [vec() for _ in range(length)]
            angles = [rotation_angle(k, rng.randrange(1, k)) for _ in range(length)]
            try:
                lam = projection_chain(vs, angles)
            except UndefinedProjection:
                undefined += 1
                continue
            res.checked += 1
            closest = min(closest, abs(lam - 1.0))
            if lam == 1.0:
                res.fail(f"chain with scale factor 1: k={k} {vs} {angles}")
    worst = 0.0
    for k in GROUPS:
        for _ in range(count):
            ang = rotation_angle(k, rng.randrange(1, k))
            vs = vstar(vec(), ang)
            r = rotation_line_residual(ang, vs, rng.uniform(-2, 2))
            worst = max(worst, r)
            res.checked += 1
            if r > 1e-12:
                res.fail(f"rotation line residual {r:.3g} at angle {ang}")
    res.notes.append(f"min |chain - 1| {closest:.3g}, max line residual {worst:.3g}, undefined {undefined}")
    return res


CRITERIA: dict[int, Callable[..., CriterionResult]] = {
    1: criterion_1,
    2: criterion_2,
    3: criterion_3,
    4: criterion_4,
    5: criterion_5,
    6: criterion_6,
    7: criterion_7,
    8: criterion_8,
    9: criterion_9,
    10: criterion_10,
    11: criterion_11,
}


def run_all(seed: int = 0, scale: float = 1.0, only: Optional[list[int]] = None) -> list[CriterionResult]:
    return [CRITERIA[c](seed, scale) for c in (only or sorted(CRITERIA))]

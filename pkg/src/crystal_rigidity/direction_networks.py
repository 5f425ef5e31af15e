"""Cone and crystallographic direction networks over an exact field.

Unknowns are the points p_0..p_{n-1} followed, for crystal systems, by the
images of the translation generators: v1 and v2 for k = 2, and only v1 for
k = 3, 4, 6 where the image of t2 is R_k v1.  The rotation generator is
pinned to the rotation R_k about the origin.

Each edge ij with color (t, r) gives the row

    < R^r p_j + t_x v1 + t_y v2 - p_i , d_perp > = 0.

Rows are assembled from the normal vector d_perp, so the rigidity matrix
(whose normals are the edge vectors) is produced by the same builder.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional, Sequence

from .colored_graph import ColoredGraph, mark
from .finite_field import FloatField, field_for, mat_vec, nullspace, rank, rotation_in_field
from .group_algebra import GroupElement, inverse, t_dim

Vec2 = tuple[Any, Any]


class DirectionError(ValueError):
    pass


def perp(F: Any, d: Vec2) -> Vec2:
    """Counter-clockwise quarter turn: (x, y) -> (-y, x)."""
    return (F.neg(d[1]), d[0])


def direction_from_normal(F: Any, nv: Vec2) -> Vec2:
    """The direction d with perp(d) = nv."""
    return (nv[1], F.neg(nv[0]))


def rep_columns(g: ColoredGraph) -> int:
    if g.cone:
        return 0
    return 4 if g.k == 2 else 2


@dataclass
class LinearSystem:
    field: Any
    rows: list[list[Any]]
    ncols: int
    n: int
    k: int
    cone: bool

    @property
    def n_rep_cols(self) -> int:
        return self.ncols - 2 * self.n

    def rank(self) -> int:
        return rank(self.field, self.rows, self.ncols)

    def nullspace(self) -> list[list[Any]]:
        return nullspace(self.field, self.rows, self.ncols)


class _Rot:
    """Cache of R^r and its inverse in a field."""

    def __init__(self, F: Any, k: int) -> None:
        self.mats = [rotation_in_field(F, k, r) for r in range(k)]
        self.k = k

    def __getitem__(self, r: int):
        return self.mats[r % self.k]


def rows_from_normals(g: ColoredGraph, normals: Sequence[Vec2], F: Any) -> LinearSystem:
    """One row per edge; `normals[e]` plays the role of d_perp."""
    k = g.k
    rot = _Rot(F, k)
    extra = rep_columns(g)
    ncols = 2 * g.n + extra
    rows = []
    for e, nv in zip(g.edges, normals):
        row = [F.zero] * ncols
        r = e.color.r
        # <R^r p_j, nv> = <p_j, R^{-r} nv>
        cj = mat_vec(F, rot[-r], nv)
        j, i = e.head, e.tail
        row[2 * j] = F.add(row[2 * j], cj[0])
        row[2 * j + 1] = F.add(row[2 * j + 1], cj[1])
        row[2 * i] = F.sub(row[2 * i], nv[0])
        row[2 * i + 1] = F.sub(row[2 * i + 1], nv[1])
        if not g.cone:
            tx, ty = (F.from_int(c) for c in e.color.t)
            base = 2 * g.n
            if k == 2:
                row[base] = F.mul(tx, nv[0])
                row[base + 1] = F.mul(tx, nv[1])
                row[base + 2] = F.mul(ty, nv[0])
                row[base + 3] = F.mul(ty, nv[1])
            else:
                # t2 acts as R v1, so <ty R v1, nv> = <v1, ty R^{-1} nv>
                w = mat_vec(F, rot[-1], nv)
                row[base] = F.add(F.mul(tx, nv[0]), F.mul(ty, w[0]))
                row[base + 1] = F.add(F.mul(tx, nv[1]), F.mul(ty, w[1]))
        rows.append(row)
    return LinearSystem(F, rows, ncols, g.n, k, g.cone)


def _check_directions(F: Any, directions: Sequence[Vec2], m: int) -> None:
    if len(directions) != m:
        raise DirectionError(f"need {m} directions, got {len(directions)}")
    for i, d in enumerate(directions):
        if F.is_zero(d[0]) and F.is_zero(d[1]):
            raise DirectionError(f"edge {i} has the zero direction")


def build_cone_system(g: ColoredGraph, directions: Sequence[Vec2], F: Optional[Any] = None) -> LinearSystem:
    if not g.cone:
        raise DirectionError("cone system needs a cone graph")
    F = F or field_for(g.k)
    _check_directions(F, directions, g.m)
    return rows_from_normals(g, [perp(F, d) for d in directions], F)


def build_crystal_system(g: ColoredGraph, directions: Sequence[Vec2], F: Optional[Any] = None) -> LinearSystem:
    if g.cone:
        raise DirectionError("crystal system needs a crystallographic graph")
    F = F or field_for(g.k)
    _check_directions(F, directions, g.m)
    return rows_from_normals(g, [perp(F, d) for d in directions], F)


def build_system(g: ColoredGraph, directions: Sequence[Vec2], F: Optional[Any] = None) -> LinearSystem:
    return (build_cone_system if g.cone else build_crystal_system)(g, directions, F)


def random_directions(g: ColoredGraph, seed: int, F: Optional[Any] = None) -> list[Vec2]:
    F = F or field_for(g.k)
    rng = random.Random(seed)
    out = []
    for _ in range(g.m):
        while True:
            d = (F.random(rng), F.random(rng))
            if not (F.is_zero(d[0]) and F.is_zero(d[1])):
                break
        out.append(d)
    return out


# ---------------------------------------------------------------------------
# Rank


@dataclass
class RankReport:
    rank: int
    rows: int
    cols: int
    trials: int
    ranks: list[int]
    field_name: str
    per_trial_bound: Fraction

    @property
    def nullity(self) -> int:
        return self.cols - self.rank

    @property
    def bound_log2(self) -> float:
        b = self.per_trial_bound
        return math.log2(b.numerator) - math.log2(b.denominator) if b else float("-inf")


def generic_rank(g: ColoredGraph, seed: int = 0, trials: int = 3) -> RankReport:
    """Maximum rank over random direction draws.

    A draw underestimates the generic rank only if a non-zero minor of size
    rank vanishes; that minor has degree at most rank in the direction
    entries, so each draw fails with probability at most rank / |F|.
    """
    F = field_for(g.k)
    ncols = 2 * g.n + rep_columns(g)
    full = min(g.m, ncols)
    ranks = []
    for t in range(max(1, trials)):
        sysm = build_system(g, random_directions(g, _trial_seed(seed, t), F), F)
        ranks.append(sysm.rank())
        if ranks[-1] == full:
            break
    best = max(ranks)
    return RankReport(best, g.m, ncols, len(ranks), ranks, F.name, Fraction(max(best, 1), F.size))


def _trial_seed(seed: int, t: int) -> int:
    return (seed * 1_000_003 + t) & ((1 << 64) - 1)


# ---------------------------------------------------------------------------
# Realizations


def split_solution(g: ColoredGraph, x: Sequence[Any], F: Any) -> tuple[list[Vec2], Vec2, Vec2]:
    """Points, v1 and v2 from a solution vector (v2 = R v1 when k >= 3)."""
    pts = [(x[2 * i], x[2 * i + 1]) for i in range(g.n)]
    if g.cone:
        z = (F.zero, F.zero)
        return pts, z, z
    b = 2 * g.n
    v1 = (x[b], x[b + 1])
    if g.k == 2:
        v2 = (x[b + 2], x[b + 3])
    else:
        v2 = mat_vec(F, rotation_in_field(F, g.k, 1), v1)
    return pts, v1, v2


def phi(F: Any, k: int, gm: GroupElement, p: Vec2, v1: Vec2, v2: Vec2) -> Vec2:
    q = mat_vec(F, rotation_in_field(F, k, gm.r), p)
    tx, ty = (F.from_int(c) for c in gm.t)
    return (
        F.add(q[0], F.add(F.mul(tx, v1[0]), F.mul(ty, v2[0]))),
        F.add(q[1], F.add(F.mul(tx, v1[1]), F.mul(ty, v2[1]))),
    )


def edge_vectors(g: ColoredGraph, x: Sequence[Any], F: Any) -> list[Vec2]:
    """Phi(gamma_ij) p_j - p_i for every edge."""
    pts, v1, v2 = split_solution(g, x, F)
    out = []
    for e in g.edges:
        q = phi(F, g.k, e.color, pts[e.head], v1, v2)
        out.append((F.sub(q[0], pts[e.tail][0]), F.sub(q[1], pts[e.tail][1])))
    return out


def collapsed_edges(g: ColoredGraph, x: Sequence[Any], F: Any) -> frozenset[int]:
    return frozenset(i for i, v in enumerate(edge_vectors(g, x, F)) if F.is_zero(v[0]) and F.is_zero(v[1]))


def _v_part_nonzero(g: ColoredGraph, x: Sequence[Any], F: Any) -> bool:
    return any(not F.is_zero(c) for c in x[2 * g.n :])


@dataclass
class RealizationResult:
    nullity: int
    basis: list[list[Any]]
    collapsed: list[frozenset[int]]
    always_collapsed: frozenset[int]
    v_nontrivial: bool
    faithful: bool
    sample: Optional[list[Any]] = None
    sample_collapsed: frozenset[int] = field(default_factory=frozenset)


def solve_realizations(sysm: LinearSystem, g: ColoredGraph, seed: int = 0) -> RealizationResult:
    F = sysm.field
    basis = sysm.nullspace()
    collapsed = [collapsed_edges(g, x, F) for x in basis]
    always = frozenset(range(g.m))
    for c in collapsed:
        always &= c
    if not basis:
        always = frozenset(range(g.m))
    v_ok = g.cone or any(_v_part_nonzero(g, x, F) for x in basis)
    faithful = bool(basis) and not always and v_ok
    sample = None
    sample_c: frozenset[int] = frozenset(range(g.m))
    if basis:
        rng = random.Random(seed)
        coeffs = [F.random(rng) for _ in basis]
        sample = [F.zero] * sysm.ncols
        for c, x in zip(coeffs, basis):
            sample = [F.add(s, F.mul(c, xi)) for s, xi in zip(sample, x)]
        sample_c = collapsed_edges(g, sample, F)
    return RealizationResult(len(basis), basis, collapsed, always, v_ok, faithful, sample, sample_c)


def satisfies(sysm: LinearSystem, x: Sequence[Any]) -> bool:
    F = sysm.field
    for row in sysm.rows:
        acc = F.zero
        for a, b in zip(row, x):
            acc = F.add(acc, F.mul(a, b))
        if not F.is_zero(acc):
            return False
    return True


# ---------------------------------------------------------------------------
# Collapsed solutions


def collapsed_space_dim(g: ColoredGraph) -> int:
    inv = g.invariants
    t_sum = sum(t_dim(d) for d in inv.descriptors)
    if g.cone:
        return t_sum
    return g.ctx.full_rep_dim - inv.rep + t_sum


def _trivial_v_basis(g: ColoredGraph, F: Any) -> list[tuple[Vec2, Vec2]]:
    """Translation images (v1, v2) killing the translation lattice of G."""
    if g.cone:
        return []
    lat = g.invariants.lattice
    z = F.zero
    o = F.one
    if g.k != 2:
        if lat.rank:
            return []
        return [((o, z), None), ((z, o), None)]  # v2 filled in later
    if lat.rank == 2:
        sols: list[tuple[Any, Any]] = []
    elif lat.rank == 1:
        a, b = lat.basis[0]
        sols = [(F.from_int(b), F.from_int(-a))]
    else:
        sols = [(o, z), (z, o)]
    out = []
    for s1, s2 in sols:
        out.append(((s1, z), (s2, z)))
        out.append(((z, s1), (z, s2)))
    return out


def _solve2(F: Any, m, rhs: Vec2) -> Vec2:
    det = F.sub(F.mul(m[0][0], m[1][1]), F.mul(m[0][1], m[1][0]))
    di = F.inv(det)
    return (
        F.mul(di, F.sub(F.mul(m[1][1], rhs[0]), F.mul(m[0][1], rhs[1]))),
        F.mul(di, F.sub(F.mul(m[0][0], rhs[1]), F.mul(m[1][0], rhs[0]))),
    )


def construct_collapsed_basis(g: ColoredGraph, F: Optional[Any] = None) -> list[list[Any]]:
    """Solutions with every edge collapsed, built component by component.

    The translation images are chosen to kill the translation lattice of G.
    A component without rotations puts its base point anywhere (the free
    choices give two vectors each); a component with a rotation puts its base
    point at that rotation's center.  Other points are p_i = Phi(eta_i^-1) p_b
    with eta_i the tree potential.
    """
    F = F or field_for(g.k)
    mg = mark(g)
    inv = g.invariants
    k = g.k
    ncols = 2 * g.n + rep_columns(g)
    rot1 = rotation_in_field(F, k, 1)
    z = (F.zero, F.zero)

    def assemble(v1: Vec2, v2: Vec2, base_pts: list[Vec2]) -> list[Any]:
        x = [F.zero] * ncols
        for v in range(g.n):
            c = mg.component_of[v]
            p = phi(F, k, inverse(mg.potential[v], g.ctx), base_pts[c], v1, v2)
            x[2 * v], x[2 * v + 1] = p
        if not g.cone:
            b = 2 * g.n
            x[b], x[b + 1] = v1
            if k == 2:
                x[b + 2], x[b + 3] = v2
        return x

    def base_points(v1: Vec2, v2: Vec2, free: Optional[tuple[int, Vec2]]) -> list[Vec2]:
        pts = []
        for c, d in enumerate(inv.descriptors):
            if d.has_rotation:
                rr = d.rotation_rep
                rm = rotation_in_field(F, k, rr.r)
                one_minus = ((F.sub(F.one, rm[0][0]), F.neg(rm[0][1])), (F.neg(rm[1][0]), F.sub(F.one, rm[1][1])))
                tau = phi(F, k, GroupElement(rr.t, 0), z, v1, v2)
                pts.append(_solve2(F, one_minus, tau))
            elif free is not None and free[0] == c:
                pts.append(free[1])
            else:
                pts.append(z)
        return pts

    out = []
    for v1, v2 in _trivial_v_basis(g, F):
        if v2 is None:
            v2 = mat_vec(F, rot1, v1)
        out.append(assemble(v1, v2, base_points(v1, v2, None)))
    for c, d in enumerate(inv.descriptors):
        if d.has_rotation:
            continue
        for e in ((F.one, F.zero), (F.zero, F.one)):
            out.append(assemble(z, z, base_points(z, z, (c, e))))
    return out


def cone11_collapsing_directions(g: ColoredGraph, vstar: Vec2, F: Optional[Any] = None) -> tuple[list[Vec2], list[int]]:
    """Directions on a connected cone-(1,1) graph that put one lifted copy of
    a spanning tree on a single line of direction vstar.

    The tree is G minus a cycle edge at the base vertex.  Returns the
    directions and the lift level (rotation class) of each vertex in the
    chosen copy; a tree edge u -> w with color r joins u at level l(u) to w
    at level l(u) + r, and its lifted direction R^{l(u)} d equals vstar.
    """
    if not g.cone:
        raise DirectionError("needs a cone graph")
    F = F or field_for(g.k)
    k = g.k
    from .sparsity import map_graph_decompose

    heads = map_graph_decompose(g.n, [(e.tail, e.head) for e in g.edges])
    if heads is None:
        raise DirectionError("needs a connected map-graph")
    # drop one cycle edge and use a BFS tree of the rest for levels
    closing = _cycle_edge(g, heads)
    order = [i for i in range(g.m) if i != closing]
    sub = g.edge_subgraph(order)
    mg = mark(sub)
    if len(mg.bases) != 1:
        raise DirectionError("needs a connected graph")
    level = [p.r for p in mg.potential]
    dirs: list[Vec2] = []
    for eid, e in enumerate(g.edges):
        if eid == closing:
            # the lifted copy touching the head's tree copy
            lev = (level[e.head] - e.color.r) % k
        else:
            lev = level[e.tail]
        dirs.append(mat_vec(F, rotation_in_field(F, k, -lev), vstar))
    return dirs, level


def _cycle_edge(g: ColoredGraph, heads: list[int]) -> int:
    """An edge on the unique cycle of a connected map-graph."""
    into = {}
    for i, (e, h) in enumerate(zip(g.edges, heads)):
        into[h] = (i, e.tail if e.head == h else e.head)
    v = 0
    seen = set()
    while v not in seen:
        seen.add(v)
        v = into[v][1]
    return into[v][0]


# ---------------------------------------------------------------------------
# Projection gadgets (floating point)


class UndefinedProjection(ArithmeticError):
    """The projection direction is parallel to the target line."""


def rotation_2x2(angle: float) -> tuple[tuple[float, float], tuple[float, float]]:
    """Rotation matrix, exact when the angle is a multiple of pi/2."""
    q = angle / (math.pi / 2)
    if abs(q - round(q)) < 1e-12:
        c, s = [(1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0)][int(round(q)) % 4]
    else:
        c, s = math.cos(angle), math.sin(angle)
    return ((c, -s), (s, c))


def _apply(m, v) -> tuple[float, float]:
    return (m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1])


def _fperp(v) -> tuple[float, float]:
    return (-v[1], v[0])


def _dot(a, b) -> float:
    return a[0] * b[0] + a[1] * b[1]


def rotation_angle(k: int, j: int) -> float:
    return 2 * math.pi * (j % k) / k


def vstar(v: Sequence[float], angle: float) -> tuple[float, float]:
    """(R^{1/2} v)^perp, with the square root taken at half the angle."""
    return _fperp(_apply(rotation_2x2(angle / 2), v))


def projection_scale_factor(v: Sequence[float], w: Sequence[float], angle: float, tol: float = 1e-12) -> float:
    """Scale factor of the projection from line(v) to line(w) along v*."""
    vs = vstar(v, angle)
    n = _fperp(vs)
    den = _dot(w, n)
    scale = math.hypot(*w) * math.hypot(*n)
    if abs(den) <= tol * scale:
        raise UndefinedProjection("v* is parallel to w")
    return _dot(v, n) / den


def projection_chain(vs: Sequence[Sequence[float]], angles: Sequence[float]) -> float:
    """Product of scale factors around the cycle v1 -> v2 -> ... -> vn -> v1."""
    if len(vs) != len(angles) or not vs:
        raise ValueError("need one rotation per vector")
    lam = 1.0
    n = len(vs)
    for i in range(n):
        lam *= projection_scale_factor(vs[i], vs[(i + 1) % n], angles[i])
    return lam


def rotation_line_residual(angle: float, vs: Sequence[float], lam: float) -> float:
    """Solve (R - I) p = lam * v* and return |sin| of the angle between p and
    R_{pi/2} R^{-1/2} v* (0 when p lies on the predicted line)."""
    r = rotation_2x2(angle)
    a = ((r[0][0] - 1.0, r[0][1]), (r[1][0], r[1][1] - 1.0))
    det = a[0][0] * a[1][1] - a[0][1] * a[1][0]
    rhs = (lam * vs[0], lam * vs[1])
    p = ((a[1][1] * rhs[0] - a[0][1] * rhs[1]) / det, (a[0][0] * rhs[1] - a[1][0] * rhs[0]) / det)
    line = _fperp(_apply(rotation_2x2(-angle / 2), vs))
    cross = p[0] * line[1] - p[1] * line[0]
    norm = math.hypot(*p) * math.hypot(*line)
    return abs(cross) / norm if norm else 0.0


def float_rows(g: ColoredGraph, normals: Sequence[Vec2]) -> LinearSystem:
    return rows_from_normals(g, normals, FloatField())

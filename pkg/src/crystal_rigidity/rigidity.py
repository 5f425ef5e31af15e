"""Infinitesimal rigidity of symmetric frameworks and generic verdicts.

The rotation generator is pinned to rotate about the origin, so the
configuration space has the 2n point coordinates plus the translation
images.  With edge vectors e_ij = Phi(gamma_ij) p_j - p_i, the rigidity
row of ij is the direction-network row with normal e_ij; both are produced
by `direction_networks.rows_from_normals`.
"""

from __future__ import annotations

import random
import warnings
from dataclasses import dataclass, field
from typing import Any, Optional

import numpy as np

from .colored_graph import ColoredGraph
from .direction_networks import (
    LinearSystem,
    build_system,
    edge_vectors,
    random_directions,
    rep_columns,
    rows_from_normals,
    solve_realizations,
    split_solution,
)
from .finite_field import FloatField, field_for
from .sparsity import full_rep, laman_check, laman_spanning

VERDICTS = ("minimally_rigid", "rigid_redundant", "flexible")


class RigidityError(ValueError):
    pass


@dataclass
class Framework:
    graph: ColoredGraph
    field: Any
    points: list[tuple[Any, Any]]
    v1: tuple[Any, Any]
    v2: tuple[Any, Any]
    lengths: Optional[list[float]] = None

    def vector(self) -> list[Any]:
        x = [c for p in self.points for c in p]
        if not self.graph.cone:
            x += list(self.v1)
            if self.graph.k == 2:
                x += list(self.v2)
        return x

    def edge_vectors(self) -> list[tuple[Any, Any]]:
        return edge_vectors(self.graph, self.vector(), self.field)


def target_rank(g: ColoredGraph) -> int:
    """Rank of a generic minimally rigid system: 2n + rep - 1 (cone: 2n - 1)."""
    return 2 * g.n + full_rep(g) - 1


def rigidity_system(fw: Framework) -> LinearSystem:
    F = fw.field
    normals = fw.edge_vectors()
    bad = [i for i, v in enumerate(normals) if F.is_zero(v[0]) and F.is_zero(v[1])]
    if bad:
        warnings.warn(f"collapsed edges {bad} give zero rigidity rows", RuntimeWarning, stacklevel=2)
    return rows_from_normals(fw.graph, normals, F)


def framework_from_vector(g: ColoredGraph, x: list[Any], F: Any) -> Framework:
    pts, v1, v2 = split_solution(g, x, F)
    return Framework(g, F, pts, v1, v2)


def random_framework(g: ColoredGraph, seed: int, F: Optional[Any] = None) -> Framework:
    F = F or field_for(g.k)
    rng = random.Random(seed)
    x = [F.random(rng) for _ in range(2 * g.n + rep_columns(g))]
    return framework_from_vector(g, x, F)


# ---------------------------------------------------------------------------
# Verdicts


@dataclass
class RigidityVerdict:
    verdict: str
    combinatorial: str
    numeric: str
    rank: int
    target: int
    cols: int
    m: int
    consistent: bool
    sources: list[str] = field(default_factory=list)
    witness: Optional[tuple[int, ...]] = None
    system: Optional[LinearSystem] = field(default=None, repr=False)

    @property
    def nullity(self) -> int:
        return self.cols - self.rank


def _classify(rank: int, target: int, m: int) -> str:
    if rank == target:
        return "minimally_rigid" if m == target else "rigid_redundant"
    return "flexible"


def combinatorial_verdict(g: ColoredGraph) -> tuple[str, Optional[tuple[int, ...]]]:
    rep = laman_check(g)
    if rep.verdict:
        return "minimally_rigid", None
    if rep.m > rep.required:
        spans, _ = laman_spanning(g)
        if spans:
            return "rigid_redundant", None
    return "flexible", rep.witness


@dataclass
class NumericRank:
    rank: int
    sources: list[str]
    system: LinearSystem


def numeric_rank(g: ColoredGraph, seed: int = 0, trials: int = 3) -> NumericRank:
    """Maximum exact rigidity rank over sampled realizations.

    Each trial solves a random direction network and, when the solution is
    faithful, uses it as the realization; a realization with uniformly
    random coordinates is always tried as well.
    """
    F = field_for(g.k)
    ceiling = min(g.m, target_rank(g))
    best, sources, best_sys = -1, [], None
    for t in range(max(1, trials)):
        s = seed * 7919 + t
        cands = []
        sysm = build_system(g, random_directions(g, s, F), F)
        res = solve_realizations(sysm, g, seed=s)
        if res.faithful and res.sample is not None and not res.sample_collapsed:
            cands.append(("directions", framework_from_vector(g, res.sample, F)))
        cands.append(("random", random_framework(g, s, F)))
        for name, fw in cands:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", RuntimeWarning)
                sysm = rigidity_system(fw)
            r = sysm.rank()
            if r > best:
                best, sources, best_sys = r, [f"{name}#{t}"], sysm
            if best == ceiling:
                return NumericRank(best, sources, best_sys)
    return NumericRank(best, sources, best_sys)


def is_generically_rigid(g: ColoredGraph, seed: int = 0, trials: int = 3) -> RigidityVerdict:
    """Combinatorial and numeric verdicts; `consistent` flags agreement."""
    comb, witness = combinatorial_verdict(g)
    nr = numeric_rank(g, seed, trials)
    target = target_rank(g)
    num = _classify(nr.rank, target, g.m)
    cols = 2 * g.n + rep_columns(g)
    return RigidityVerdict(comb, comb, num, nr.rank, target, cols, g.m, comb == num, nr.sources, witness, nr.system)


def cone_rigidity(g: ColoredGraph, seed: int = 0, trials: int = 3) -> RigidityVerdict:
    if not g.cone:
        raise RigidityError("cone_rigidity needs a cone graph")
    return is_generically_rigid(g, seed, trials)


@dataclass
class FrameworkReport:
    """Infinitesimal verdict at one given realization.

    `generic_rank` is the sampled generic rank of the graph; a realization
    with `rank < generic_rank` is special and its verdict says nothing
    about generic rigidity.
    """

    verdict: str
    rank: int
    target: int
    generic_rank: int
    collapsed: tuple[int, ...]

    @property
    def special(self) -> bool:
        return self.rank < self.generic_rank


def analyze_framework(fw: Framework, seed: int = 0, trials: int = 3) -> FrameworkReport:
    g = fw.graph
    F = fw.field
    collapsed = tuple(i for i, v in enumerate(fw.edge_vectors()) if F.is_zero(v[0]) and F.is_zero(v[1]))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        sysm = rigidity_system(fw)
    if isinstance(F, FloatField):
        r = int(np.linalg.matrix_rank(np.array(sysm.rows, dtype=float).reshape(g.m, sysm.ncols))) if g.m else 0
    else:
        r = sysm.rank()
    target = target_rank(g)
    return FrameworkReport(_classify(r, target, g.m), r, target, numeric_rank(g, seed, trials).rank, collapsed)


# ---------------------------------------------------------------------------
# Real realizations


def _float_nullspace(rows: list[list[float]], ncols: int, rtol: float = 1e-9) -> np.ndarray:
    a = np.array(rows, dtype=float).reshape(len(rows), ncols)
    if a.size == 0:
        return np.eye(ncols)
    _, s, vt = np.linalg.svd(a)
    tol = rtol * (s[0] if s.size else 1.0)
    r = int(np.sum(s > tol))
    return vt[r:].T


def realize_generic_framework(g: ColoredGraph, seed: int = 0, retries: int = 20) -> Framework:
    """A real faithful realization of a Laman graph with edge lengths.

    Exact random directions certify that the direction network has a
    unique faithful solution; the real coordinates then come from the same
    construction with seeded real directions, solved by SVD.
    """
    if not laman_check(g).verdict:
        raise RigidityError("realize_generic_framework needs a Laman graph")
    F = field_for(g.k)
    for t in range(retries):
        res = solve_realizations(build_system(g, random_directions(g, seed + t, F), F), g, seed=seed + t)
        if res.nullity == 1 and res.faithful:
            break
    else:
        raise RigidityError("no generic exact direction sample found")
    R = FloatField()
    rng = random.Random(seed)
    ncols = 2 * g.n + rep_columns(g)
    for _ in range(retries):
        dirs = []
        for _e in range(g.m):
            d = (rng.gauss(0, 1), rng.gauss(0, 1))
            dirs.append(d)
        sysm = rows_from_normals(g, [(-d[1], d[0]) for d in dirs], R)
        ns = _float_nullspace(sysm.rows, ncols)
        if ns.shape[1] != 1:
            continue
        x = ns[:, 0]
        x = x / np.max(np.abs(x))
        fw = framework_from_vector(g, [float(c) for c in x], R)
        ev = fw.edge_vectors()
        lengths = [float(np.hypot(*v)) for v in ev]
        if min(lengths, default=1.0) > 1e-6:
            fw.lengths = lengths
            return fw
    raise RigidityError("could not sample a non-degenerate real realization")

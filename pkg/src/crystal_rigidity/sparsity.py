"""Sparsity counts and deciders for colored graphs.

Subgraphs are arbitrary edge subsets, encoded as bitmasks over edge ids, and
their vertex set is the set of spanned vertices.  The (1,1) families are
matroids given by independence oracles; the (2,2) families are decided by
matroid union, and the Laman families by edge doubling.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence

from .colored_graph import ColoredGraph, Edge, graph_invariants, mark, fundamental_image
from .group_algebra import cent_dim, t_dim, teich_dim
from .group_matroid import SubsetState, g1_rank

Mask = int


def bits(mask: Mask) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def to_mask(ids: Iterable[int]) -> Mask:
    m = 0
    for i in ids:
        m |= 1 << i
    return m


# ---------------------------------------------------------------------------
# Counts


@dataclass(frozen=True)
class Counts:
    n: int
    m: int
    c: int
    rep: int
    t_sum: int
    teich: int
    cent_sum: int

    @property
    def f(self) -> int:
        return 2 * self.n + self.rep - self.t_sum

    @property
    def g(self) -> int:
        return self.f // 2

    @property
    def h(self) -> int:
        return self.f - 1

    @property
    def hprime(self) -> int:
        return 2 * self.n + self.teich - self.cent_sum


def _relabel(g: ColoredGraph, edges: Sequence[Edge]) -> ColoredGraph:
    """The subgraph on the spanned vertices only, vertices renumbered in order."""
    spanned = sorted({e.tail for e in edges} | {e.head for e in edges})
    idx = {v: i for i, v in enumerate(spanned)}
    return ColoredGraph(g.ctx, len(spanned), tuple(Edge(idx[e.tail], idx[e.head], e.color) for e in edges), g.cone)


def spanned_subgraph(g: ColoredGraph, edge_ids: Iterable[int]) -> ColoredGraph:
    return _relabel(g, [g.edges[i] for i in edge_ids])


def counts_of(g: ColoredGraph) -> Counts:
    inv = graph_invariants(g)
    return Counts(
        n=g.n,
        m=g.m,
        c=len(inv.components),
        rep=inv.rep,
        t_sum=sum(t_dim(d) for d in inv.descriptors),
        teich=teich_dim(inv.lattice, g.ctx),
        cent_sum=sum(cent_dim(d) for d in inv.descriptors),
    )


def subgraph_counts(g: ColoredGraph, edge_ids: Iterable[int]) -> Counts:
    return counts_of(_relabel(g, [g.edges[i] for i in edge_ids]))


def sparsity_values(g: ColoredGraph, edge_ids: Optional[Iterable[int]] = None) -> tuple[int, int, int, int]:
    """(f, g, h, h') of G (all vertices) or of an edge subset (spanned vertices)."""
    c = counts_of(g) if edge_ids is None else subgraph_counts(g, edge_ids)
    return c.f, c.g, c.h, c.hprime


class CountCache:
    """Counts of edge subsets of a fixed graph, memoized by bitmask."""

    def __init__(self, g: ColoredGraph) -> None:
        self.graph = g
        self._memo: dict[Mask, Counts] = {}

    def __call__(self, mask: Mask) -> Counts:
        c = self._memo.get(mask)
        if c is None:
            c = subgraph_counts(self.graph, bits(mask))
            self._memo[mask] = c
        return c


def full_rep(g: ColoredGraph) -> int:
    """rep(Lambda(Gamma_k)) for crystal graphs, 0 for cone graphs."""
    return 0 if g.cone else g.ctx.full_rep_dim


# ---------------------------------------------------------------------------
# Matroid independence oracles
#
# An oracle answers independence for a bitmask over the edges of a graph,
# optionally with one extra copy of an existing edge (used for doubling).


class EdgeOracle:
    def __init__(self, g: ColoredGraph) -> None:
        self.graph = g
        self._memo: dict[tuple[Mask, int], bool] = {}

    def edges_of(self, mask: Mask, extra: int = -1) -> list[Edge]:
        es = [self.graph.edges[i] for i in bits(mask)]
        if extra >= 0:
            es.append(self.graph.edges[extra])
        return es

    def independent(self, mask: Mask, extra: int = -1) -> bool:
        key = (mask, extra)
        v = self._memo.get(key)
        if v is None:
            v = self._compute(self.edges_of(mask, extra))
            self._memo[key] = v
        return v

    def _compute(self, edges: list[Edge]) -> bool:
        raise NotImplementedError

    def rank_bound(self) -> int:
        """Size of a basis of the full ground set when it is spanning."""
        raise NotImplementedError


def gamma11_rank(g: ColoredGraph) -> int:
    """g(G) = n - c + g1(A(G)) computed through the group matroid."""
    mg = mark(g)
    parts: list[list] = [[] for _ in range(g.n)]
    for eid, e in enumerate(g.edges):
        if eid not in mg.forest:
            parts[mg.component_of[e.tail]].append(fundamental_image(eid, mg))
    a = SubsetState(g.ctx, tuple(tuple(p) for p in parts))
    return g.n - len(mg.bases) + g1_rank(a)


class Gamma11Oracle(EdgeOracle):
    def _compute(self, edges: list[Edge]) -> bool:
        if not edges:
            return True
        return len(edges) == gamma11_rank(_relabel(self.graph, edges))

    def rank_bound(self) -> int:
        return self.graph.n + full_rep(self.graph) // 2


def _unicyclic_ok(n: int, edges: Sequence[Edge], k: int) -> bool:
    """Every component is a tree or has exactly one cycle whose rotation
    class is non-zero (self-loops and parallel pairs count as cycles)."""
    parent = list(range(n))
    offset = [0] * n  # rotation class from vertex to its root
    cyc = [False] * n

    def find(v: int) -> tuple[int, int]:
        acc = 0
        path = []
        while parent[v] != v:
            path.append(v)
            acc += offset[v]
            v = parent[v]
        # path compression
        root = v
        run = acc
        for u in path:
            o = offset[u]
            parent[u] = root
            offset[u] = run % k
            run -= o
        return root, acc % k

    for e in edges:
        ru, pu = find(e.tail)
        rw, pw = find(e.head)
        r = e.color.r
        if ru == rw:
            # cycle value: potential(tail) + r - potential(head), in the class group
            if cyc[ru] or (pu + r - pw) % k == 0:
                return False
            cyc[ru] = True
        else:
            if cyc[ru] and cyc[rw]:
                return False
            # attach ru under rw: pot(ru->rw) chosen so pot(head) = pot(tail) + r
            parent[ru] = rw
            offset[ru] = (pw - r - pu) % k
            cyc[rw] = cyc[rw] or cyc[ru]
    return True


class Cone11Oracle(EdgeOracle):
    """cone-(1,1) independence; on crystal graphs this is the generalized
    cone-(1,1) matroid, which only looks at rotation classes."""

    def _compute(self, edges: list[Edge]) -> bool:
        return _unicyclic_ok(self.graph.n, edges, self.graph.k)

    def rank_bound(self) -> int:
        return self.graph.n


# ---------------------------------------------------------------------------
# Matroid union


class MatroidUnion:
    """Augmenting-path partition of elements into independent sets.

    Elements are edge ids; id `extra_id` (if set) stands for a duplicate of
    edge `extra_of`.
    """

    def __init__(self, oracles: Sequence[EdgeOracle], extra_id: int = -1, extra_of: int = -1) -> None:
        self.oracles = list(oracles)
        self.parts: list[Mask] = [0] * len(self.oracles)
        self.extra_id = extra_id
        self.extra_of = extra_of

    def copy(self, extra_id: int = -1, extra_of: int = -1) -> "MatroidUnion":
        mu = MatroidUnion(self.oracles, extra_id, extra_of)
        mu.parts = list(self.parts)
        return mu

    def _indep(self, j: int, mask: Mask) -> bool:
        if self.extra_id >= 0 and mask >> self.extra_id & 1:
            return self.oracles[j].independent(mask & ~(1 << self.extra_id), self.extra_of)
        return self.oracles[j].independent(mask)

    def augment(self, x: int) -> Optional[Mask]:
        """Insert x; return None on success, else the set of reached elements."""
        pred: dict[int, Optional[tuple[int, int]]] = {x: None}
        queue = deque([x])
        while queue:
            e = queue.popleft()
            eb = 1 << e
            for j, part in enumerate(self.parts):
                if part & eb:
                    continue
                if self._indep(j, part | eb):
                    self.parts[j] |= eb
                    cur = e
                    while pred[cur] is not None:
                        p, jj = pred[cur]
                        self.parts[jj] = (self.parts[jj] & ~(1 << cur)) | (1 << p)
                        cur = p
                    return None
                for y in bits(part):
                    if y in pred:
                        continue
                    if self._indep(j, (part & ~(1 << y)) | eb):
                        pred[y] = (e, j)
                        queue.append(y)
        return to_mask(pred)


# ---------------------------------------------------------------------------
# Reports


@dataclass
class SparsityReport:
    family: str
    verdict: bool
    sparse: bool
    m: int
    required: int
    witness: Optional[tuple[int, ...]] = None
    witness_bound: Optional[int] = None
    decomposition: Optional[tuple[tuple[int, ...], ...]] = None
    extra: dict = field(default_factory=dict)


FAMILY_NAMES = {
    "g11": "gamma-(1,1)",
    "g22": "gamma-(2,2)",
    "laman": "gamma-colored-Laman",
    "cone11": "cone-(1,1)",
    "cone22": "cone-(2,2)",
    "conelaman": "cone-Laman",
    "gc11": "generalized-cone-(1,1)",
    "gc22": "generalized-cone-(2,2)",
}


def _require_crystal(g: ColoredGraph) -> None:
    if g.cone:
        raise ValueError("this check needs a crystallographic (gamma) graph")


def _require_cone(g: ColoredGraph) -> None:
    if not g.cone:
        raise ValueError("this check needs a cone graph")


def _one_one_oracle(g: ColoredGraph, generalized: bool = False) -> EdgeOracle:
    if g.cone or generalized:
        return Cone11Oracle(g)
    return Gamma11Oracle(g)


def _witness_bound(g: ColoredGraph, mask: Mask, generalized: bool) -> int:
    """f of a subgraph for the family in use (the (2,2) bound)."""
    if generalized:
        sub = _relabel(g, [g.edges[i] for i in bits(mask)])
        comps = graph_invariants(sub)
        # generalized cone counts look only at rotation classes
        t = sum(0 if _has_rotation_class(sub, c) else 2 for c in comps.components)
        return 2 * sub.n - t
    return subgraph_counts(g, bits(mask)).f


def _has_rotation_class(g: ColoredGraph, comp: Sequence[int]) -> bool:
    mg = mark(g)
    cs = set(comp)
    return any(
        fundamental_image(eid, mg).r != 0
        for eid, e in enumerate(g.edges)
        if eid not in mg.forest and e.tail in cs
    )


def one_one_check(g: ColoredGraph, generalized: bool = False, edge_ids: Optional[Iterable[int]] = None) -> SparsityReport:
    """Independence and basis check in the relevant (1,1) matroid."""
    oracle = _one_one_oracle(g, generalized)
    ids = list(range(g.m)) if edge_ids is None else list(edge_ids)
    ok = oracle.independent(to_mask(ids))
    required = oracle.rank_bound()
    name = "gc11" if generalized else ("cone11" if g.cone else "g11")
    witness = None
    if not ok:
        # minimal dependent prefix, then greedy shrink to a circuit
        mask = 0
        for i in ids:
            if not oracle.independent(mask | 1 << i):
                mask |= 1 << i
                break
            mask |= 1 << i
        for i in sorted(bits(mask), reverse=True):
            if not oracle.independent(mask & ~(1 << i)):
                mask &= ~(1 << i)
        witness = tuple(bits(mask))
    return SparsityReport(name, ok and len(ids) == required, ok, len(ids), required, witness)


def gamma11_independent(g: ColoredGraph, edge_ids: Optional[Iterable[int]] = None) -> bool:
    _require_crystal(g)
    ids = range(g.m) if edge_ids is None else edge_ids
    return Gamma11Oracle(g).independent(to_mask(ids))


def is_gamma11(g: ColoredGraph) -> SparsityReport:
    _require_crystal(g)
    return one_one_check(g)


def _partition(g: ColoredGraph, generalized: bool) -> tuple[MatroidUnion, Optional[Mask]]:
    oracle = _one_one_oracle(g, generalized)
    mu = MatroidUnion([oracle, oracle])
    for x in range(g.m):
        reached = mu.augment(x)
        if reached is not None:
            return mu, reached
    return mu, None


def two_two_check(g: ColoredGraph, generalized: bool = False) -> SparsityReport:
    required = 2 * g.n + (0 if generalized else full_rep(g))
    mu, reached = _partition(g, generalized)
    name = "gc22" if generalized else ("cone22" if g.cone else "g22")
    if reached is not None:
        return SparsityReport(
            name, False, False, g.m, required, tuple(bits(reached)), _witness_bound(g, reached, generalized)
        )
    ok = g.m == required
    dec = tuple(tuple(bits(p)) for p in mu.parts) if ok else None
    return SparsityReport(name, ok, True, g.m, required, decomposition=dec)


def decompose_gamma22(g: ColoredGraph) -> SparsityReport:
    _require_crystal(g)
    return two_two_check(g)


def _laman_sparse(g: ColoredGraph) -> tuple[bool, Optional[Mask]]:
    """Laman sparsity by doubling: G + copy(e) must be (2,2)-sparse for all e.

    Returns a violating subgraph (m' > h) when not sparse.
    """
    mu, reached = _partition(g, False)
    if reached is not None:
        return False, reached
    for e in range(g.m):
        trial = mu.copy(extra_id=g.m, extra_of=e)
        reached = trial.augment(g.m)
        if reached is not None:
            w = reached & ~(1 << g.m) | (1 << e)
            return False, w
    return True, None


def laman_check(g: ColoredGraph) -> SparsityReport:
    required = 2 * g.n + full_rep(g) - 1
    sparse, w = _laman_sparse(g)
    name = "conelaman" if g.cone else "laman"
    rep = SparsityReport(name, sparse and g.m == required, sparse, g.m, required)
    if w is not None:
        rep.witness = tuple(bits(w))
        rep.witness_bound = subgraph_counts(g, rep.witness).h
    return rep


def is_gamma_laman(g: ColoredGraph) -> SparsityReport:
    _require_crystal(g)
    return laman_check(g)


def laman_sparse(g: ColoredGraph, edge_ids: Optional[Iterable[int]] = None) -> bool:
    if edge_ids is not None:
        g = g.edge_subgraph(edge_ids)
    return _laman_sparse(g)[0]


def find_laman_circuit(g: ColoredGraph) -> Optional[tuple[int, ...]]:
    """Edge-minimal subgraph that is not Laman-sparse, or None."""
    sparse, w = _laman_sparse(g)
    if sparse:
        return None
    keep = bits(w)
    for e in sorted(keep, reverse=True):
        trial = [i for i in keep if i != e]
        if not laman_sparse(g, trial):
            keep = trial
    return tuple(keep)


def is_laman_circuit(g: ColoredGraph, edge_ids: Sequence[int]) -> bool:
    """Circuit conditions: m' = f(G') and m'' < f(G'') on every proper subgraph."""
    ids = list(edge_ids)
    if not ids or subgraph_counts(g, ids).f != len(ids):
        return False
    for mask in range(1, (1 << len(ids)) - 1):
        sub = [ids[i] for i in bits(mask)]
        if len(sub) >= subgraph_counts(g, sub).f:
            return False
    return True


def laman_spanning(g: ColoredGraph) -> tuple[bool, tuple[int, ...]]:
    """Greedy Laman-sparse basis; returns (has a spanning Laman subgraph, basis ids)."""
    required = 2 * g.n + full_rep(g) - 1
    keep: list[int] = []
    for e in range(g.m):
        if laman_sparse(g, keep + [e]):
            keep.append(e)
    return len(keep) == required, tuple(keep)


# ---------------------------------------------------------------------------
# Cone and generalized cone families


def cone_class(g: ColoredGraph) -> dict[str, SparsityReport]:
    _require_cone(g)
    out = {
        "cone11": one_one_check(g),
        "cone22": two_two_check(g),
        "conelaman": laman_check(g),
    }
    circuit = find_laman_circuit(g)
    if circuit is not None:
        sub = g.edge_subgraph(circuit)
        inv = graph_invariants(_relabel(g, list(sub.edges)))
        t = t_dim(inv.descriptors[0]) if len(inv.components) == 1 else None
        out["conelaman"].extra["circuit"] = circuit
        out["conelaman"].extra["circuit_connected"] = len(inv.components) == 1
        out["conelaman"].extra["circuit_T"] = t
    return out


def cone_circuit_structure_ok(g: ColoredGraph, circuit: Sequence[int]) -> bool:
    """The two structural cases for cone-Laman circuits.

    A lone identity-colored self-loop is also a circuit (h = -1 on one
    vertex) but fits neither case: it has m = 1 > 2n - 2.  It is accepted
    as a degenerate third case.
    """
    sub = _relabel(g, [g.edges[i] for i in circuit])
    if sub.m == 1 and sub.edges[0].tail == sub.edges[0].head and sub.edges[0].color == g.ctx.identity:
        return True
    inv = graph_invariants(sub)
    if len(inv.components) != 1:
        return False
    if t_dim(inv.descriptors[0]) == 0:
        return two_two_check(sub).verdict
    for mask in range(1, 1 << sub.m):
        ids = bits(mask)
        if len(ids) > 2 * subgraph_counts(sub, ids).n - 2:
            return False
    return True


def generalized_cone_check(g: ColoredGraph) -> dict[str, SparsityReport]:
    _require_crystal(g)
    out = {"gc11": one_one_check(g, generalized=True), "gc22": two_two_check(g, generalized=True)}
    return out


def gc_basis(g: ColoredGraph, edge_ids: Optional[Sequence[int]] = None) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Greedy generalized cone-(1,1) basis of the given edges and its complement."""
    oracle = Cone11Oracle(g)
    ids = list(range(g.m)) if edge_ids is None else list(edge_ids)
    basis = 0
    for e in ids:
        if oracle.independent(basis | 1 << e):
            basis |= 1 << e
    b = tuple(bits(basis))
    return b, tuple(i for i in ids if not basis >> i & 1)


def gc22_spanning(g: ColoredGraph) -> Optional[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Two edge-disjoint spanning generalized cone-(1,1) subgraphs, if any."""
    oracle = Cone11Oracle(g)
    mu = MatroidUnion([oracle, oracle])
    for x in range(g.m):
        mu.augment(x)
    parts = tuple(tuple(bits(p)) for p in mu.parts)
    if all(len(p) == g.n for p in parts):
        return parts[0], parts[1]
    return None


# ---------------------------------------------------------------------------
# Map-graphs and overlap graphs


def map_graph_decompose(n: int, edges: Sequence[tuple[int, int]]) -> Optional[list[int]]:
    """Orient a map-graph so every vertex has in-degree one.

    Returns the head chosen for each edge, or None when some component does
    not have exactly as many edges as vertices.
    """
    parent = list(range(n))

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for a, b in edges:
        parent[find(a)] = find(b)
    balance: dict[int, int] = {}
    for v in range(n):
        balance[find(v)] = balance.get(find(v), 0) - 1
    for a, _ in edges:
        balance[find(a)] += 1
    if any(balance.values()):
        return None
    inc: list[list[int]] = [[] for _ in range(n)]
    deg = [0] * n
    for i, (a, b) in enumerate(edges):
        inc[a].append(i)
        inc[b].append(i)
        deg[a] += 1
        deg[b] += 1
    head: list[int] = [-1] * len(edges)
    # strip leaves: a leaf's remaining edge points into it
    stack = [v for v in range(n) if deg[v] == 1]
    while stack:
        v = stack.pop()
        if deg[v] != 1:
            continue
        e = next(i for i in inc[v] if head[i] < 0)
        head[e] = v
        a, b = edges[e]
        w = b if a == v else a
        deg[v] -= 1
        deg[w] -= 1
        if deg[w] == 1:
            stack.append(w)
    # the rest are disjoint cycles (loops and parallel pairs included)
    for v in range(n):
        cur = v
        while True:
            nxt = [i for i in inc[cur] if head[i] < 0]
            if not nxt:
                break
            e = nxt[0]
            a, b = edges[e]
            w = b if a == cur else a
            head[e] = w
            cur = w
    return head


def map_components(n: int, edges: Sequence[tuple[int, int]], head: Sequence[int]) -> tuple[list[int], list[int]]:
    """Component label per vertex and, per component, the lowest vertex on its cycle."""
    parent = list(range(n))

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for a, b in edges:
        parent[find(a)] = find(b)
    roots = sorted({find(v) for v in range(n)}, key=lambda r: min(v for v in range(n) if find(v) == r))
    label = {r: i for i, r in enumerate(roots)}
    comp = [label[find(v)] for v in range(n)]
    # cycle vertices: follow the unique in-edge backwards from any vertex
    into = {}
    for i, (a, b) in enumerate(edges):
        into[head[i]] = a if b == head[i] else b
    bases = []
    for c in range(len(roots)):
        v = min(u for u in range(n) if comp[u] == c)
        seen = []
        while v not in seen:
            seen.append(v)
            v = into[v]
        cyc = seen[seen.index(v):]
        bases.append(min(cyc))
    return comp, bases


@dataclass(frozen=True)
class OverlapGraph:
    """Nodes are ('X', i) / ('Y', j); pred maps a node to its unique in-neighbor."""

    nodes: tuple[tuple[str, int], ...]
    pred: dict

    def edges(self) -> list[tuple[tuple[str, int], tuple[str, int]]]:
        return [(self.pred[v], v) for v in self.nodes]

    def every_component_has_cycle(self) -> bool:
        # with in-degree one everywhere, walking predecessors always closes a cycle;
        # check that each weak component contains one
        comp = {v: v for v in self.nodes}

        def find(v):
            while comp[v] != v:
                comp[v] = comp[comp[v]]
                v = comp[v]
            return v

        for a, b in self.edges():
            comp[find(a)] = find(b)
        with_cycle = set()
        for v in self.nodes:
            seen = []
            while v not in seen:
                seen.append(v)
                v = self.pred[v]
            with_cycle.add(find(v))
        return {find(v) for v in self.nodes} <= with_cycle


def overlap_graph(
    n: int,
    x_edges: Sequence[tuple[int, int]],
    y_edges: Sequence[tuple[int, int]],
    bases: Optional[tuple[Sequence[int], Sequence[int]]] = None,
) -> OverlapGraph:
    hx = map_graph_decompose(n, x_edges)
    hy = map_graph_decompose(n, y_edges)
    if hx is None or hy is None:
        raise ValueError("both parts must be spanning map-graphs")
    cx, bx = map_components(n, x_edges, hx)
    cy, by = map_components(n, y_edges, hy)
    if bases is not None:
        bx, by = list(bases[0]), list(bases[1])
    nodes = tuple([("X", i) for i in range(len(bx))] + [("Y", j) for j in range(len(by))])
    pred = {}
    for j, b in enumerate(by):
        pred[("Y", j)] = ("X", cx[b])
    for i, b in enumerate(bx):
        pred[("X", i)] = ("Y", cy[b])
    return OverlapGraph(nodes, pred)


# ---------------------------------------------------------------------------
# Exhaustive oracle


EXHAUSTIVE_LIMIT = 16


def _bound_function(name: str) -> Callable[[Counts], int]:
    table: dict[str, Callable[[Counts], int]] = {
        "f": lambda c: c.f,
        "g": lambda c: c.g,
        "h": lambda c: c.h,
        "hprime": lambda c: c.hprime,
    }
    if name not in table:
        raise ValueError(f"unknown bound {name!r}")
    return table[name]


@dataclass(frozen=True)
class OracleVerdict:
    sparse: bool
    worst: tuple[int, ...]
    slack: int


def exhaustive_oracle(
    g: ColoredGraph, bound: str = "f", cache: Optional[CountCache] = None, limit: int = EXHAUSTIVE_LIMIT
) -> OracleVerdict:
    """Check m' <= bound(G') over every non-empty edge subset."""
    if g.m > limit:
        raise ValueError(f"exhaustive oracle limited to {limit} edges, graph has {g.m}")
    fn = _bound_function(bound)
    cache = cache or CountCache(g)
    worst: tuple[int, ...] = ()
    best = None
    for mask in range(1, 1 << g.m):
        c = cache(mask)
        slack = fn(c) - c.m
        if best is None or slack < best:
            best, worst = slack, tuple(bits(mask))
    if best is None:
        return OracleVerdict(True, (), 0)
    return OracleVerdict(best >= 0, worst, best)

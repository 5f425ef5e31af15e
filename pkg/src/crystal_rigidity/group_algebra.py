"""Exact arithmetic in the groups Z^2 x| Z/k (k = 2, 3, 4, 6).

Elements are pairs (t, r): a translation vector t in lattice coordinates and
a rotation class r.  Subgroups are summarized by their translation lattice
plus one rotation generator, which is enough for every invariant we need
(rep, T, cent, teich and the radical).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, NamedTuple, Optional, Sequence

Vec = tuple[int, int]
Mat = tuple[tuple[int, int], tuple[int, int]]

ALLOWED_K = (2, 3, 4, 6)

# Action of the rotation generator on lattice coordinates (columns are images
# of the lattice basis).
_ACTION: dict[int, Mat] = {
    2: ((-1, 0), (0, -1)),
    3: ((0, -1), (1, -1)),
    4: ((0, -1), (1, 0)),
    6: ((0, -1), (1, 1)),
}


def _matmul(a: Mat, b: Mat) -> Mat:
    return (
        (a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]),
        (a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]),
    )


_IDENTITY: Mat = ((1, 0), (0, 1))


@dataclass(frozen=True)
class GroupContext:
    """The group Gamma_k, identified by k and the generator's action matrix."""

    k: int
    action_matrix: Mat
    powers: tuple[Mat, ...] = field(repr=False, compare=False, default=())

    def __post_init__(self) -> None:
        if self.k not in ALLOWED_K:
            raise ValueError(f"k must be one of {ALLOWED_K}, got {self.k}")
        pw = [_IDENTITY]
        for _ in range(self.k - 1):
            pw.append(_matmul(self.action_matrix, pw[-1]))
        object.__setattr__(self, "powers", tuple(pw))

    def act(self, r: int, t: Vec) -> Vec:
        """M^r t."""
        m = self.powers[r % self.k]
        return (m[0][0] * t[0] + m[0][1] * t[1], m[1][0] * t[0] + m[1][1] * t[1])

    @property
    def identity(self) -> "GroupElement":
        return GroupElement((0, 0), 0)

    @property
    def rotation(self) -> "GroupElement":
        return GroupElement((0, 0), 1)

    @property
    def full_rep_dim(self) -> int:
        """rep of the full translation lattice Z^2."""
        return 4 if self.k == 2 else 2


@lru_cache(maxsize=None)
def gamma(k: int) -> GroupContext:
    """Context for Gamma_k using the standard action matrix."""
    if k not in _ACTION:
        raise ValueError(f"k must be one of {ALLOWED_K}, got {k}")
    return GroupContext(k, _ACTION[k])


class GroupElement(NamedTuple):
    t: Vec
    r: int

    def __str__(self) -> str:
        return f"(({self.t[0]},{self.t[1]}),{self.r})"


def element(tx: int, ty: int, r: int, ctx: GroupContext) -> GroupElement:
    return GroupElement((int(tx), int(ty)), int(r) % ctx.k)


def translation(tx: int, ty: int) -> GroupElement:
    return GroupElement((int(tx), int(ty)), 0)


def compose(a: GroupElement, b: GroupElement, ctx: GroupContext) -> GroupElement:
    m = ctx.powers[a.r]
    bt = b.t
    return GroupElement(
        (a.t[0] + m[0][0] * bt[0] + m[0][1] * bt[1], a.t[1] + m[1][0] * bt[0] + m[1][1] * bt[1]),
        (a.r + b.r) % ctx.k,
    )


def inverse(a: GroupElement, ctx: GroupContext) -> GroupElement:
    ri = (-a.r) % ctx.k
    x, y = ctx.act(ri, a.t)
    return GroupElement((-x, -y), ri)


def power(a: GroupElement, e: int, ctx: GroupContext) -> GroupElement:
    if e < 0:
        a, e = inverse(a, ctx), -e
    out = ctx.identity
    base = a
    while e:
        if e & 1:
            out = compose(out, base, ctx)
        base = compose(base, base, ctx)
        e >>= 1
    return out


def product(elems: Iterable[GroupElement], ctx: GroupContext) -> GroupElement:
    out = ctx.identity
    for g in elems:
        out = compose(out, g, ctx)
    return out


def validate(a: GroupElement, ctx: GroupContext) -> None:
    if not (0 <= a.r < ctx.k):
        raise ValueError(f"rotation class {a.r} out of range for k={ctx.k}")


# ---------------------------------------------------------------------------
# Lattices


@dataclass(frozen=True)
class Lattice:
    """Integer sublattice of Z^2 in row-style Hermite normal form."""

    basis: tuple[Vec, ...] = ()

    @property
    def rank(self) -> int:
        return len(self.basis)

    def contains(self, v: Vec) -> bool:
        x, y = v
        if not self.basis:
            return x == 0 and y == 0
        if len(self.basis) == 2:
            (a, b), (_, d) = self.basis
            if x % a:
                return False
            return (y - (x // a) * b) % d == 0
        a, b = self.basis[0]
        if a == 0:
            return x == 0 and y % b == 0
        if x % a:
            return False
        return y == (x // a) * b

    def contains_lattice(self, other: "Lattice") -> bool:
        return all(self.contains(v) for v in other.basis)


TRIVIAL_LATTICE = Lattice(())
FULL_LATTICE = Lattice(((1, 0), (0, 1)))


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q = a // b
        a, b = b, a - q * b
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        return -a, -s0, -t0
    return a, s0, t0


def lattice_hnf(vectors: Iterable[Sequence[int]]) -> Lattice:
    pivot: Optional[list[int]] = None
    d = 0
    for v in vectors:
        x, y = int(v[0]), int(v[1])
        if x == 0:
            d = gcd(d, y)
            continue
        if pivot is None:
            pivot = [x, y]
            continue
        a, b = pivot
        g, s, t = _ext_gcd(a, x)
        # unimodular row operation: new pivot and a row with zero x-part
        pivot = [g, s * b + t * y]
        d = gcd(d, (x // g) * b - (a // g) * y)
    if pivot is None:
        return Lattice(((0, d),)) if d else TRIVIAL_LATTICE
    a, b = pivot
    if a < 0:
        a, b = -a, -b
    if d:
        return Lattice(((a, b % d), (0, d)))
    return Lattice(((a, b),))


def lattice_join(a: Lattice, b: Lattice) -> Lattice:
    if not a.basis:
        return b
    if not b.basis:
        return a
    return lattice_hnf(a.basis + b.basis)


def lattice_saturate(a: Lattice) -> Lattice:
    if a.rank == 2:
        return FULL_LATTICE
    if a.rank == 1:
        x, y = a.basis[0]
        c = gcd(x, y)
        return Lattice(((x // c, y // c),))
    return a


# ---------------------------------------------------------------------------
# Subgroups


@dataclass(frozen=True)
class SubgroupDescriptor:
    """A subgroup as its translation lattice plus one rotation generator."""

    lattice: Lattice = TRIVIAL_LATTICE
    has_rotation: bool = False
    rotation_rep: Optional[GroupElement] = None

    def __post_init__(self) -> None:
        if self.has_rotation != (self.rotation_rep is not None):
            raise ValueError("has_rotation must match presence of rotation_rep")
        if self.rotation_rep is not None and self.rotation_rep.r == 0:
            raise ValueError("rotation_rep must be a rotation")

    @property
    def is_trivial(self) -> bool:
        return not self.has_rotation and self.lattice.rank == 0

    def generators(self) -> list[GroupElement]:
        gens = [GroupElement(v, 0) for v in self.lattice.basis]
        if self.rotation_rep is not None:
            gens.append(self.rotation_rep)
        return gens


TRIVIAL_SUBGROUP = SubgroupDescriptor()


def _class_word(classes: Sequence[int], target: int, k: int) -> list[int]:
    """Exponents a_i with sum a_i*classes[i] = target (mod k); target = gcd(k, classes)."""
    coeffs = [0] * len(classes)
    g = k
    # running combination: g = c0*k + sum coeffs*classes
    for i, c in enumerate(classes):
        if c % k == 0:
            continue
        ng, s, t = _ext_gcd(g, c)
        coeffs = [s * x for x in coeffs]
        coeffs[i] += t
        g = ng
    assert g == target
    return coeffs


def subgroup_from_generators(gens: Sequence[GroupElement], ctx: GroupContext) -> SubgroupDescriptor:
    # invariants of edge subsets ask for the same generator lists many times
    return _subgroup_cached(tuple(gens), ctx)


@lru_cache(maxsize=1 << 16)
def _subgroup_cached(gens: tuple[GroupElement, ...], ctx: GroupContext) -> SubgroupDescriptor:
    k = ctx.k
    s = k
    for g in gens:
        s = gcd(s, g.r)
    if s == k:
        return SubgroupDescriptor(lattice_hnf(g.t for g in gens))
    coeffs = _class_word([g.r for g in gens], s, k)
    g0 = ctx.identity
    for g, a in zip(gens, coeffs):
        if a % k:
            g0 = compose(g0, power(g, a, ctx), ctx)
    assert g0.r == s
    d = k // s
    transversal = [ctx.identity]
    for _ in range(d - 1):
        transversal.append(compose(transversal[-1], g0, ctx))
    trans_inv = [inverse(u, ctx) for u in transversal]
    vecs = []
    for u in transversal:
        for g in gens:
            w = compose(u, g, ctx)
            sch = compose(w, trans_inv[w.r // s], ctx)
            assert sch.r == 0
            vecs.append(sch.t)
    return SubgroupDescriptor(lattice_hnf(vecs), True, g0)


def contains(d: SubgroupDescriptor, g: GroupElement, ctx: GroupContext) -> bool:
    if g.r == 0:
        return d.lattice.contains(g.t)
    if d.rotation_rep is None:
        return False
    r0 = d.rotation_rep.r
    k = ctx.k
    s = gcd(r0, k)
    if g.r % s:
        return False
    # j * r0 = g.r (mod k)
    _, a, _ = _ext_gcd(r0 // s, k // s)
    j = (a * (g.r // s)) % (k // s)
    rest = compose(g, power(d.rotation_rep, -j, ctx), ctx)
    assert rest.r == 0
    return d.lattice.contains(rest.t)


def is_subgroup(a: SubgroupDescriptor, b: SubgroupDescriptor, ctx: GroupContext) -> bool:
    """a <= b."""
    return all(contains(b, g, ctx) for g in a.generators())


def same_subgroup(a: SubgroupDescriptor, b: SubgroupDescriptor, ctx: GroupContext) -> bool:
    return is_subgroup(a, b, ctx) and is_subgroup(b, a, ctx)


def join(a: SubgroupDescriptor, b: SubgroupDescriptor, ctx: GroupContext) -> SubgroupDescriptor:
    return subgroup_from_generators(a.generators() + b.generators(), ctx)


def conjugate(d: SubgroupDescriptor, g: GroupElement, ctx: GroupContext) -> SubgroupDescriptor:
    """g d g^-1."""
    gi = inverse(g, ctx)
    return subgroup_from_generators([compose(compose(g, h, ctx), gi, ctx) for h in d.generators()], ctx)


def rotation_center(g: GroupElement, ctx: GroupContext) -> tuple[Fraction, Fraction]:
    """Fixed point c of g (lattice coordinates): (I - M^r) c = t."""
    if g.r == 0:
        raise ValueError("translations have no center")
    m = ctx.powers[g.r]
    a, b = 1 - m[0][0], -m[0][1]
    c, d = -m[1][0], 1 - m[1][1]
    det = a * d - b * c
    x, y = g.t
    return (Fraction(d * x - b * y, det), Fraction(-c * x + a * y, det))


def stabilizer_generator(center: tuple[Fraction, Fraction], ctx: GroupContext) -> Optional[GroupElement]:
    """Generator of the rotations in Gamma_k fixing the point center."""
    for j in range(1, ctx.k):
        m = ctx.powers[j]
        tx = center[0] - (m[0][0] * center[0] + m[0][1] * center[1])
        ty = center[1] - (m[1][0] * center[0] + m[1][1] * center[1])
        if tx.denominator == 1 and ty.denominator == 1:
            return GroupElement((int(tx), int(ty)), j)
    return None


def radical(d: SubgroupDescriptor, ctx: GroupContext) -> SubgroupDescriptor:
    if ctx.k == 2:
        return SubgroupDescriptor(lattice_saturate(d.lattice), d.has_rotation, d.rotation_rep)
    if d.lattice.rank == 0:
        if not d.has_rotation:
            return TRIVIAL_SUBGROUP
        # the largest finite group containing it: all rotations about its center
        rep = stabilizer_generator(rotation_center(d.rotation_rep, ctx), ctx)
        return SubgroupDescriptor(TRIVIAL_LATTICE, True, rep)
    if not d.has_rotation:
        return SubgroupDescriptor(FULL_LATTICE)
    return SubgroupDescriptor(FULL_LATTICE, True, ctx.rotation)


# ---------------------------------------------------------------------------
# Dimension invariants


def rep_dim(lat: Lattice, ctx: GroupContext) -> int:
    if ctx.k == 2:
        return 2 * lat.rank
    return 0 if lat.rank == 0 else 2


def t_dim(d: SubgroupDescriptor) -> int:
    return 0 if d.has_rotation else 2


def cent_dim(d: SubgroupDescriptor) -> int:
    if d.has_rotation:
        return 0 if d.lattice.rank else 1
    return 2 if d.lattice.rank else 3


def teich_dim(lat: Lattice, ctx: GroupContext) -> int:
    if lat.rank == 0:
        return 0
    return rep_dim(lat, ctx) - 1

"""The matroid on n labeled copies of Gamma_k.

A subset A is a tuple of parts A_0..A_{n-1}, each a multiset of group
elements.  Its rank is

    g1(A) = n + rep(Lambda(A))/2 - sum_i T(Gamma_{A,i})/2

where Lambda(A) joins the translation lattices of the per-part subgroups.
Copies are indexed from 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple, Sequence

from .group_algebra import (
    TRIVIAL_LATTICE,
    GroupContext,
    GroupElement,
    Lattice,
    SubgroupDescriptor,
    compose,
    contains,
    inverse,
    lattice_join,
    radical,
    rep_dim,
    subgroup_from_generators,
    t_dim,
)


class GroundElement(NamedTuple):
    gamma: GroupElement
    copy: int


@dataclass(frozen=True)
class SubsetState:
    ctx: GroupContext
    parts: tuple[tuple[GroupElement, ...], ...]

    @classmethod
    def empty(cls, ctx: GroupContext, n: int) -> "SubsetState":
        return cls(ctx, ((),) * n)

    @classmethod
    def from_elements(cls, ctx: GroupContext, n: int, elems: Sequence[GroundElement]) -> "SubsetState":
        parts: list[list[GroupElement]] = [[] for _ in range(n)]
        for g, i in elems:
            if not 0 <= i < n:
                raise ValueError(f"copy index {i} out of range [0,{n})")
            parts[i].append(g)
        return cls(ctx, tuple(tuple(p) for p in parts))

    @property
    def n(self) -> int:
        return len(self.parts)

    @property
    def size(self) -> int:
        return sum(len(p) for p in self.parts)

    def elements(self) -> list[GroundElement]:
        return [GroundElement(g, i) for i, p in enumerate(self.parts) for g in p]

    @cached_property
    def descriptors(self) -> tuple[SubgroupDescriptor, ...]:
        return tuple(subgroup_from_generators(p, self.ctx) for p in self.parts)

    @cached_property
    def lattice(self) -> Lattice:
        lat = TRIVIAL_LATTICE
        for d in self.descriptors:
            lat = lattice_join(lat, d.lattice)
        return lat

    @property
    def c(self) -> int:
        return sum(1 for p in self.parts if p)

    def with_element(self, gamma: GroupElement, copy: int) -> "SubsetState":
        parts = list(self.parts)
        parts[copy] = parts[copy] + (gamma,)
        return SubsetState(self.ctx, tuple(parts))

    def can_add(self, gamma: GroupElement, copy: int) -> bool:
        """Whether adding (gamma, copy) raises g1, i.e. gamma lies outside
        the radical of <Gamma_{A,copy}, Lambda(A)>."""
        d = self.descriptors[copy]
        aug = subgroup_from_generators(d.generators() + [GroupElement(v, 0) for v in self.lattice.basis], self.ctx)
        return not contains(radical(aug, self.ctx), gamma, self.ctx)


def g1_rank(a: SubsetState) -> int:
    total_t = sum(t_dim(d) for d in a.descriptors)
    twice = 2 * a.n + rep_dim(a.lattice, a.ctx) - total_t
    assert twice % 2 == 0
    return twice // 2


def is_independent(a: SubsetState) -> bool:
    return a.size == g1_rank(a)


def is_tight(a: SubsetState) -> bool:
    return is_independent(a) and a.size == a.c + a.ctx.full_rep_dim // 2


def is_spanning(a: SubsetState) -> bool:
    """Rank reading of 'spanning': g1 reaches c(A) + rep(Lambda(Gamma_k))/2.

    g1 never exceeds that value, and reaching it forces every non-empty part
    to hold a rotation, so this is the same as containing a tight subset on
    all c(A) parts.
    """
    return g1_rank(a) == a.c + a.ctx.full_rep_dim // 2


def _nonempty_have_rotation(a: SubsetState) -> bool:
    return all(d.has_rotation for p, d in zip(a.parts, a.descriptors) if p)


def conjugate(a: SubsetState, gammas: Sequence[GroupElement]) -> SubsetState:
    """Replace each non-empty A_i (in order) by gamma_i^-1 A_i gamma_i."""
    nonempty = [i for i, p in enumerate(a.parts) if p]
    if len(gammas) != len(nonempty):
        raise ValueError(f"need {len(nonempty)} conjugating elements, got {len(gammas)}")
    ctx = a.ctx
    parts = list(a.parts)
    for i, g in zip(nonempty, gammas):
        gi = inverse(g, ctx)
        parts[i] = tuple(compose(compose(gi, h, ctx), g, ctx) for h in parts[i])
    return SubsetState(ctx, tuple(parts))


def separate(a: SubsetState, i: int, j: int, moved: Sequence[int]) -> SubsetState:
    """Move the elements of A_i at positions `moved` into the empty part A_j."""
    if not (0 <= i < a.n and 0 <= j < a.n) or i == j:
        raise ValueError("separate needs two distinct valid copies")
    if a.parts[j]:
        raise ValueError("separate requires the target part to be empty")
    moved_set = set(moved)
    if any(not 0 <= m < len(a.parts[i]) for m in moved_set):
        raise ValueError("moved positions out of range")
    parts = list(a.parts)
    parts[j] = tuple(g for m, g in enumerate(a.parts[i]) if m in moved_set)
    parts[i] = tuple(g for m, g in enumerate(a.parts[i]) if m not in moved_set)
    return SubsetState(a.ctx, tuple(parts))


def fuse(a: SubsetState, i: int, j: int) -> SubsetState:
    """Replace A_i by A_i + A_j and empty A_j."""
    if not (0 <= i < a.n and 0 <= j < a.n) or i == j:
        raise ValueError("fuse needs two distinct valid copies")
    if not a.parts[i] or not a.parts[j]:
        raise ValueError("fuse requires both parts non-empty")
    parts = list(a.parts)
    parts[i] = parts[i] + parts[j]
    parts[j] = ()
    return SubsetState(a.ctx, tuple(parts))


def tight_type(a: SubsetState) -> str:
    """Classify a tight set as type 'A' or 'B'; '' if neither pattern fits."""
    if not _nonempty_have_rotation(a):
        return ""
    half = a.ctx.full_rep_dim // 2
    nonempty = [i for i, p in enumerate(a.parts) if p]
    extra = {i: len(a.parts[i]) - 1 for i in nonempty}
    heavy = [i for i in nonempty if extra[i] > 0]
    full = a.ctx.full_rep_dim
    if len(heavy) == 1:
        i = heavy[0]
        if extra[i] == half and rep_dim(a.descriptors[i].lattice, a.ctx) == full:
            return "A"
    if len(heavy) == 2:
        i, j = heavy
        lat = lattice_join(a.descriptors[i].lattice, a.descriptors[j].lattice)
        if extra[i] + extra[j] == half and rep_dim(lat, a.ctx) == full:
            return "B"
    return ""

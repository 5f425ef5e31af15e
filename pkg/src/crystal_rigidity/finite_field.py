"""Exact arithmetic over F_p and F_p[sqrt 3] for p = 2^127 - 1.

3 is a quadratic non-residue modulo this p (p = 3 mod 4 and p = 1 mod 3), so
F_p[x]/(x^2 - 3) is the field with p^2 elements.  Extension elements are
pairs (a, b) meaning a + b*sqrt(3).
"""

from __future__ import annotations

import math
import random
from contextlib import contextmanager
from typing import Any, Iterator, Sequence

P = (1 << 127) - 1

# Deliberate defects for mutation checks.  "r4-sign" flips the sign of the
# upper-right entry of R_4, turning it into a reflection.
FAULTS: set[str] = set()


@contextmanager
def injected(*names: str) -> Iterator[None]:
    saved = set(FAULTS)
    FAULTS.update(names)
    try:
        yield
    finally:
        FAULTS.clear()
        FAULTS.update(saved)


class PrimeField:
    """F_p with elements as Python ints in [0, p)."""

    name = "F_p"

    def __init__(self, p: int = P) -> None:
        self.p = p
        self.size = p
        self.zero = 0
        self.one = 1

    def __repr__(self) -> str:
        return "PrimeField(2^127-1)" if self.p == P else f"PrimeField({self.p})"

    def from_int(self, a: int) -> int:
        return a % self.p

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def neg(self, a: int) -> int:
        return (-a) % self.p

    def mul(self, a: int, b: int) -> int:
        return a * b % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def is_zero(self, a: int) -> bool:
        return a % self.p == 0

    def random(self, rng: random.Random) -> int:
        return rng.randrange(self.p)

    def sqrt3(self) -> Any:
        raise ValueError("sqrt(3) is not in the prime field")


class Sqrt3Field:
    """F_p[sqrt 3] with elements as pairs (a, b)."""

    name = "F_p[sqrt3]"

    def __init__(self, p: int = P) -> None:
        self.p = p
        self.size = p * p
        self.zero = (0, 0)
        self.one = (1, 0)

    def __repr__(self) -> str:
        return "Sqrt3Field(2^127-1)" if self.p == P else f"Sqrt3Field({self.p})"

    def from_int(self, a: int) -> tuple[int, int]:
        return (a % self.p, 0)

    def add(self, a, b):
        p = self.p
        return ((a[0] + b[0]) % p, (a[1] + b[1]) % p)

    def sub(self, a, b):
        p = self.p
        return ((a[0] - b[0]) % p, (a[1] - b[1]) % p)

    def neg(self, a):
        p = self.p
        return ((-a[0]) % p, (-a[1]) % p)

    def mul(self, a, b):
        p = self.p
        return ((a[0] * b[0] + 3 * a[1] * b[1]) % p, (a[0] * b[1] + a[1] * b[0]) % p)

    def inv(self, a):
        p = self.p
        norm = (a[0] * a[0] - 3 * a[1] * a[1]) % p
        if norm == 0:
            raise ZeroDivisionError("inverse of zero")
        ni = pow(norm, -1, p)
        return (a[0] * ni % p, (-a[1]) * ni % p)

    def is_zero(self, a) -> bool:
        return a[0] % self.p == 0 and a[1] % self.p == 0

    def random(self, rng: random.Random):
        return (rng.randrange(self.p), rng.randrange(self.p))

    def sqrt3(self):
        return (0, 1)


class FloatField:
    """Double-precision stand-in with the same interface, for real realizations."""

    name = "float64"
    size = 0
    zero = 0.0
    one = 1.0

    def from_int(self, a: int) -> float:
        return float(a)

    def add(self, a: float, b: float) -> float:
        return a + b

    def sub(self, a: float, b: float) -> float:
        return a - b

    def neg(self, a: float) -> float:
        return -a

    def mul(self, a: float, b: float) -> float:
        return a * b

    def inv(self, a: float) -> float:
        return 1.0 / a

    def is_zero(self, a: float) -> bool:
        return a == 0.0

    def random(self, rng: random.Random) -> float:
        return rng.uniform(-1.0, 1.0)

    def sqrt3(self) -> float:
        return math.sqrt(3.0)


def field_for(k: int) -> Any:
    return Sqrt3Field() if k in (3, 6) else PrimeField()


def rotation_in_field(F: Any, k: int, r: int) -> tuple[tuple[Any, Any], tuple[Any, Any]]:
    """R_k^r (counter-clockwise by 2*pi*r/k) with entries in F."""
    r %= k
    one, zero = F.one, F.zero
    if k in (2, 4):
        c, s = [(1, 0), (0, 1), (-1, 0), (0, -1)][(4 * r // k) % 4]
        cf, sf = F.from_int(c), F.from_int(s)
        if k == 4 and r == 1 and "r4-sign" in FAULTS:
            return ((cf, sf), (sf, cf))
    else:
        half = F.inv(F.from_int(2))
        c0 = half if k == 6 else F.neg(half)
        s0 = F.mul(half, F.sqrt3())
        base = ((c0, F.neg(s0)), (s0, c0))
        out = ((one, zero), (zero, one))
        for _ in range(r):
            out = mat_mul(F, base, out)
        return out
    return ((cf, F.neg(sf)), (sf, cf))


def mat_mul(F: Any, a, b):
    return (
        (F.add(F.mul(a[0][0], b[0][0]), F.mul(a[0][1], b[1][0])), F.add(F.mul(a[0][0], b[0][1]), F.mul(a[0][1], b[1][1]))),
        (F.add(F.mul(a[1][0], b[0][0]), F.mul(a[1][1], b[1][0])), F.add(F.mul(a[1][0], b[0][1]), F.mul(a[1][1], b[1][1]))),
    )


def mat_vec(F: Any, a, v):
    return (F.add(F.mul(a[0][0], v[0]), F.mul(a[0][1], v[1])), F.add(F.mul(a[1][0], v[0]), F.mul(a[1][1], v[1])))


def rref(F: Any, rows: Sequence[Sequence[Any]], ncols: int) -> tuple[list[list[Any]], list[int]]:
    """Reduced row echelon form; returns (non-zero rows, pivot columns)."""
    mat = [list(r) for r in rows]
    pivots: list[int] = []
    rank = 0
    for col in range(ncols):
        piv = None
        for i in range(rank, len(mat)):
            if not F.is_zero(mat[i][col]):
                piv = i
                break
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = F.inv(mat[rank][col])
        mat[rank] = [F.mul(inv, x) for x in mat[rank]]
        prow = mat[rank]
        for i in range(len(mat)):
            if i != rank and not F.is_zero(mat[i][col]):
                fac = mat[i][col]
                mat[i] = [F.sub(x, F.mul(fac, y)) for x, y in zip(mat[i], prow)]
        pivots.append(col)
        rank += 1
        if rank == len(mat):
            break
    return mat[:rank], pivots


def rank(F: Any, rows: Sequence[Sequence[Any]], ncols: int) -> int:
    return len(rref(F, rows, ncols)[1])


def nullspace(F: Any, rows: Sequence[Sequence[Any]], ncols: int) -> list[list[Any]]:
    red, pivots = rref(F, rows, ncols)
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        vec = [F.zero] * ncols
        vec[free] = F.one
        for r, pc in zip(red, pivots):
            vec[pc] = F.neg(r[free])
        basis.append(vec)
    return basis

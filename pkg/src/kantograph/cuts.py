"""Cut semimetrics and the seminorms of weighted cut families.

Subsets of the vertex set are bitmasks over dense indices.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .graph import CapacityError, DistanceMatrix, RootedTree
from .measures import as_measure, pairing
from .tree import LipschitzFunction

MAX_VERTICES = 64


def mask_of(members: Iterable[int]) -> int:
    m = 0
    for v in members:
        m |= 1 << v
    return m


def members(mask: int, n: int) -> list[int]:
    return [v for v in range(n) if mask >> v & 1]


def cut_semimetric(s: int, x: int, y: int) -> int:
    """1 when exactly one of ``x``, ``y`` lies in the subset ``s``."""
    return (s >> x & 1) ^ (s >> y & 1)


@dataclass(frozen=True)
class CutFamily:
    """Positive weights on nonempty proper subsets, duplicates merged."""

    n: int
    entries: tuple[tuple[int, Fraction], ...]
    base: Optional[int] = None

    def __post_init__(self):
        if self.n > MAX_VERTICES:
            raise CapacityError(f"cut families support at most {MAX_VERTICES} vertices")
        full = (1 << self.n) - 1
        merged: dict[int, Fraction] = {}
        for s, lam in self.entries:
            lam = Fraction(lam)
            if s <= 0 or s >= full or s & ~full:
                raise ValueError(f"cut {members(s, self.n)} is empty, full or out of range")
            if lam <= 0:
                raise ValueError("cut weights must be positive")
            merged[s] = merged.get(s, Fraction(0)) + lam
        object.__setattr__(self, "entries", tuple(merged.items()))
        if self.base is not None and any(s >> self.base & 1 for s in merged):
            raise ValueError("family is not adapted to its base point")

    @classmethod
    def from_subsets(cls, n: int, cuts: Iterable[tuple[Iterable[int], object]],
                     base: Optional[int] = None) -> "CutFamily":
        return cls(n, tuple((mask_of(s), Fraction(lam)) for s, lam in cuts), base)

    def is_adapted(self, x0: int) -> bool:
        return not any(s >> x0 & 1 for s, _ in self.entries)


@dataclass(frozen=True)
class CutNorm:
    value: Fraction
    contributions: tuple[Fraction, ...]  # one per entry, in family order


def cut_norm(c: CutFamily, xi: Sequence[Fraction]) -> CutNorm:
    xi = as_measure(xi, c.n)
    parts = []
    for s, lam in c.entries:
        mass = sum((xi[v] for v in members(s, c.n)), Fraction(0))
        parts.append(lam * abs(mass))
    return CutNorm(sum(parts, Fraction(0)), tuple(parts))


@dataclass(frozen=True)
class CutDistance:
    d: DistanceMatrix
    unseparated: tuple[tuple[int, int], ...]


def cut_distance(c: CutFamily) -> CutDistance:
    n = c.n
    d = [[Fraction(0)] * n for _ in range(n)]
    for s, lam in c.entries:
        for x in range(n):
            for y in range(n):
                if cut_semimetric(s, x, y):
                    d[x][y] += lam
    flagged = tuple((x, y) for x in range(n) for y in range(x + 1, n) if d[x][y] == 0)
    return CutDistance(tuple(map(tuple, d)), flagged)


def tree_cut_realization(t: RootedTree) -> CutFamily:
    """One cut per edge: the subtree hanging below it, weighted by the edge."""
    return CutFamily(t.n, tuple((mask_of(t.subtree(x)), t.up_weight[x])
                                for x in t.non_root()), base=t.root)


def adapt_realization(c: CutFamily, x0: int) -> CutFamily:
    """Replace every cut containing ``x0`` by its complement."""
    full = (1 << c.n) - 1
    return CutFamily(c.n, tuple(((full ^ s) if s >> x0 & 1 else s, lam)
                                for s, lam in c.entries), base=x0)


def cut_potential(c: CutFamily, eps: Sequence[int]) -> LipschitzFunction:
    """``u(x) = sum of lambda_S * eps_S`` over the cuts containing ``x``.

    ``eps`` is indexed like ``c.entries``.
    """
    if c.base is None:
        raise ValueError("cut potentials need an adapted family (set base)")
    if len(eps) != len(c.entries):
        raise ValueError("one sign per cut is required")
    u = [Fraction(0)] * c.n
    for (s, lam), e in zip(c.entries, eps):
        if e not in (1, -1):
            raise ValueError("signs must be ±1")
        for v in members(s, c.n):
            u[v] += lam * e
    return LipschitzFunction(tuple(u), c.base)


def cut_norm_via_potentials(c: CutFamily, xi: Sequence[Fraction],
                            sign0: int = 1) -> tuple[Fraction, LipschitzFunction]:
    """Maximize ``<xi, u_eps>`` by taking each sign from the cut's mass."""
    xi = as_measure(xi, c.n)
    eps = []
    for s, _ in c.entries:
        mass = sum((xi[v] for v in members(s, c.n)), Fraction(0))
        eps.append(1 if mass > 0 else -1 if mass < 0 else sign0)
    u = cut_potential(c, eps)
    return pairing(xi, u.values), u


def discrete_singletons(n: int) -> CutFamily:
    """``d = 1/2 sum_x delta_{x}``: the discrete metric via singletons."""
    return CutFamily(n, tuple((1 << x, Fraction(1, 2)) for x in range(n)))


def discrete_pairs(n: int) -> CutFamily:
    """The discrete metric via all two-element cuts (``n >= 4``)."""
    if n < 4:
        raise ValueError("pair realization needs at least 4 points")
    lam = Fraction(1, 2 * (n - 2))
    return CutFamily(n, tuple(((1 << x) | (1 << y), lam)
                              for x in range(n) for y in range(x + 1, n)))


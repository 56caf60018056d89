"""Measures on vertices: probabilities, zero-mass vectors, cumulatives.

A measure is a tuple of :class:`~fractions.Fraction` indexed by vertex.
"""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .graph import RootedTree

Measure = tuple[Fraction, ...]


class MeasureError(ValueError):
    pass


def as_measure(values: Sequence, n: int | None = None) -> Measure:
    out = tuple(Fraction(v) for v in values)
    if n is not None and len(out) != n:
        raise MeasureError(f"expected {n} masses, got {len(out)}")
    return out


def from_mapping(masses: Mapping[int, object], n: int) -> Measure:
    """Dense measure from a sparse ``{vertex: mass}`` mapping."""
    out = [Fraction(0)] * n
    for v, m in masses.items():
        if not 0 <= v < n:
            raise MeasureError(f"vertex {v} out of range")
        out[v] += Fraction(m)
    return tuple(out)


def delta(x: int, n: int) -> Measure:
    return tuple(Fraction(int(v == x)) for v in range(n))


def uniform(n: int) -> Measure:
    return (Fraction(1, n),) * n


def check_probability(mu: Sequence[Fraction]) -> Measure:
    mu = as_measure(mu)
    neg = [x for x, m in enumerate(mu) if m < 0]
    if neg:
        raise MeasureError(f"negative mass at vertex {neg[0]}")
    total = sum(mu, Fraction(0))
    if total != 1:
        raise MeasureError(f"masses sum to {total}, not 1")
    return mu


def check_zero_mass(xi: Sequence[Fraction]) -> Measure:
    xi = as_measure(xi)
    total = sum(xi, Fraction(0))
    if total != 0:
        raise MeasureError(f"total mass is {total}, not 0")
    return xi


def positive_part(xi: Sequence[Fraction]) -> Measure:
    return tuple(max(v, Fraction(0)) for v in xi)


def negative_part(xi: Sequence[Fraction]) -> Measure:
    return tuple(max(-v, Fraction(0)) for v in xi)


def l1(xi: Sequence[Fraction]) -> Fraction:
    return sum((abs(v) for v in xi), Fraction(0))


def pairing(xi: Sequence[Fraction], u: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(xi, u, strict=True)), Fraction(0))


def zero_mass_from_pair(mu: Sequence[Fraction], nu: Sequence[Fraction]) -> Measure:
    if len(mu) != len(nu):
        raise MeasureError("measures live on different vertex sets")
    return tuple(Fraction(a) - Fraction(b) for a, b in zip(mu, nu))


@dataclass(frozen=True)
class ProbabilitySplit:
    mu: Measure
    nu: Measure
    scale: Fraction


def split_into_probabilities(xi: Sequence[Fraction]) -> ProbabilitySplit:
    """Write ``xi = scale * (mu - nu)`` with probability functions mu, nu.

    ``scale = max(1, |xi|_1 / 2)``; when the positive part of ``xi/scale``
    has mass below one, both sides are topped up with the same multiple
    of the uniform distribution.
    """
    xi = check_zero_mass(xi)
    n = len(xi)
    s = max(Fraction(1), l1(xi) / 2)
    pos = [v / s for v in positive_part(xi)]
    neg = [v / s for v in negative_part(xi)]
    alpha = 1 - sum(pos, Fraction(0))
    pad = alpha / n
    mu = tuple(p + pad for p in pos)
    nu = tuple(q + pad for q in neg)
    return ProbabilitySplit(mu, nu, s)


def cumulative(t: RootedTree, xi: Sequence[Fraction]) -> Measure:
    """Subtree masses: ``Xi(x)`` is the total of ``xi`` below and at ``x``."""
    if len(xi) != t.n:
        raise MeasureError("measure and tree have different sizes")
    acc = [Fraction(v) for v in xi]
    for x in reversed(t.order):
        p = t.parent[x]
        if p != -1:
            acc[p] += acc[x]
    return tuple(acc)


def descendant_matrix(t: RootedTree) -> np.ndarray:
    """``E* = (I - E)^{-1}`` as a 0/1 integer matrix.

    ``E[x, y] = 1`` when ``y`` is a child of ``x``.  ``E`` is nilpotent,
    so the Neumann series is finite.
    """
    n = t.n
    e = np.zeros((n, n), dtype=np.int64)
    for y, x in enumerate(t.parent):
        if x != -1:
            e[x, y] = 1
    total = np.eye(n, dtype=np.int64)
    power = np.eye(n, dtype=np.int64)
    for _ in range(n):
        power = power @ e
        if not power.any():
            break
        total += power
    return total


def cumulative_via_matrix(t: RootedTree, xi: Sequence[Fraction]) -> Measure:
    e_star = descendant_matrix(t)
    xi = as_measure(xi, t.n)
    return tuple(sum((xi[y] for y in range(t.n) if e_star[x, y]), Fraction(0))
                 for x in range(t.n))


def from_cumulative(t: RootedTree, big_xi: Sequence[Fraction]) -> Measure:
    """Inverse of :func:`cumulative`: ``xi(x) = Xi(x) - sum over children``."""
    return tuple(big_xi[x] - sum((big_xi[c] for c in t.children[x]), Fraction(0))
                 for x in range(t.n))


def push_forward(q: Sequence[int], xi: Sequence[Fraction], m: int) -> Measure:
    """Image measure under ``q``: ``eta(u) = sum of xi(x) over q(x) = u``."""
    out = [Fraction(0)] * m
    for x, v in enumerate(xi):
        out[q[x]] += v
    return tuple(out)


@dataclass(frozen=True)
class Coupling:
    """Joint measure on vertex pairs with declared margins ``mu``, ``nu``.

    Only nonzero entries are stored in ``mass``.
    """

    mass: dict[tuple[int, int], Fraction]
    mu: Measure
    nu: Measure

    def entries(self) -> list[tuple[int, int, Fraction]]:
        return sorted((x, y, m) for (x, y), m in self.mass.items() if m)

    def cost(self, d) -> Fraction:
        return sum((d[x][y] * m for (x, y), m in self.mass.items()), Fraction(0))

    def row_sums(self) -> Measure:
        out = [Fraction(0)] * len(self.mu)
        for (x, _), m in self.mass.items():
            out[x] += m
        return tuple(out)

    def column_sums(self) -> Measure:
        out = [Fraction(0)] * len(self.nu)
        for (_, y), m in self.mass.items():
            out[y] += m
        return tuple(out)

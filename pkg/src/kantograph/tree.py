"""Kantorovich norm on weighted trees and its dual objects.

For a rooted tree every zero-mass vector has a unique representation on
the edges ``(x, parent(x))``, whose coefficients are the subtree masses
``Xi(x)``.  The norm is ``sum_x w(x, parent(x)) * |Xi(x)|`` and the
1-Lipschitz potential obtained by integrating ``sign(Xi)`` from the root
attains it.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .graph import DistanceMatrix, RootedTree, WeightedGraph, close_pairs
from .measures import (Coupling, Measure, as_measure, check_probability,
                       check_zero_mass, cumulative, pairing)


class NotLipschitzError(ValueError):
    def __init__(self, pair: tuple[int, int], ratio: Fraction):
        super().__init__(
            f"function is not 1-Lipschitz on pair {pair} (ratio {ratio})")
        self.pair = pair
        self.ratio = ratio


@dataclass(frozen=True)
class LipschitzFunction:
    """Potential on vertices vanishing at the base point."""

    values: Measure
    base: int = 0

    def __post_init__(self):
        if self.values[self.base] != 0:
            raise ValueError("potential must vanish at its base point")

    def __getitem__(self, x: int) -> Fraction:
        return self.values[x]

    def pair_with(self, xi: Sequence[Fraction]) -> Fraction:
        return pairing(xi, self.values)


def lipschitz_constant(u: Sequence[Fraction], d: DistanceMatrix) -> Fraction:
    """Best Lipschitz constant of ``u`` for the metric ``d`` (all pairs)."""
    vals = u.values if isinstance(u, LipschitzFunction) else u
    n = len(vals)
    best = Fraction(0)
    for x in range(n):
        for y in range(x + 1, n):
            r = abs(vals[x] - vals[y]) / d[x][y]
            if r > best:
                best = r
    return best


def tree_metric(t: RootedTree) -> DistanceMatrix:
    """Path metric of the tree, one root-to-all sweep per vertex."""
    rows = []
    for s in range(t.n):
        rows.append(tuple(t.reroot(s).depth_distance()) if s != t.root
                    else tuple(t.depth_distance()))
    return tuple(rows)


# ---------------------------------------------------------------------------
# closed form


@dataclass(frozen=True)
class TreeNorm:
    value: Fraction
    edge_coefficients: Measure  # a(x, parent(x)) = Xi(x); root entry is 0


def tree_norm(t: RootedTree, xi: Sequence[Fraction]) -> TreeNorm:
    xi = check_zero_mass(as_measure(xi, t.n))
    big = cumulative(t, xi)
    value = sum((t.up_weight[x] * abs(big[x]) for x in t.non_root()), Fraction(0))
    return TreeNorm(value, big)


def edge_representation(t: RootedTree, coeff: Sequence[Fraction]) -> Measure:
    """``sum_x a(x) (delta_x - delta_parent(x))`` as a vector."""
    out = [Fraction(0)] * t.n
    for x in t.non_root():
        out[x] += coeff[x]
        out[t.parent[x]] -= coeff[x]
    return tuple(out)


def _sigma(v: Fraction, sign0: int) -> int:
    if v > 0:
        return 1
    if v < 0:
        return -1
    return sign0


def _check_sign0(sign0: int) -> None:
    if sign0 not in (1, -1):
        raise ValueError("sign0 must be +1 or -1")


@dataclass(frozen=True)
class SignedExpansion:
    weights: Measure  # per-vertex dual weight
    value: Fraction


def signed_expansion(t: RootedTree, xi: Sequence[Fraction],
                     sign0: int = 1) -> SignedExpansion:
    """Norm rewritten as ``sum_y xi(y) * weight(y)``.

    ``weight(y)`` integrates ``sign(Xi)`` along the path from the root to
    ``y``, with ``sign(0) = sign0``.
    """
    _check_sign0(sign0)
    norm = tree_norm(t, xi)
    weights = [Fraction(0)] * t.n
    for x in t.non_root():
        weights[x] = (weights[t.parent[x]]
                      + t.up_weight[x] * _sigma(norm.edge_coefficients[x], sign0))
    value = pairing(xi, weights)
    if value != norm.value:
        raise ArithmeticError("signed expansion disagrees with the closed form")
    return SignedExpansion(tuple(weights), value)


def extreme_lipschitz(t: RootedTree, eps: Sequence[int]) -> LipschitzFunction:
    """Potential with slope ``eps(x) = ±1`` on every edge ``(x, parent(x))``."""
    if len(eps) != t.n:
        raise ValueError("sign assignment has the wrong length")
    u = [Fraction(0)] * t.n
    for x in t.non_root():
        if eps[x] not in (1, -1):
            raise ValueError(f"sign at vertex {x} must be ±1")
        u[x] = u[t.parent[x]] + t.up_weight[x] * eps[x]
    return LipschitzFunction(tuple(u), t.root)


def aligned_dual(t: RootedTree, xi: Sequence[Fraction],
                 sign0: int = 1) -> LipschitzFunction:
    return LipschitzFunction(signed_expansion(t, xi, sign0).weights, t.root)


def is_extreme_lipschitz(g: WeightedGraph, d: DistanceMatrix,
                         u: LipschitzFunction) -> bool:
    """Extreme point test for the unit ball of base-pointed 1-Lipschitz functions.

    ``u`` is extreme iff every vertex is reachable from the base point
    along close pairs on which ``u`` changes by exactly the distance.
    Raises :class:`NotLipschitzError` if ``u`` is not 1-Lipschitz.
    """
    vals = u.values
    for x in range(g.n):
        for y in range(x + 1, g.n):
            if abs(vals[x] - vals[y]) > d[x][y]:
                raise NotLipschitzError((x, y), abs(vals[x] - vals[y]) / d[x][y])
    tight: list[list[int]] = [[] for _ in range(g.n)]
    for x, y in close_pairs(g, d):
        if abs(vals[x] - vals[y]) == d[x][y]:
            tight[x].append(y)
            tight[y].append(x)
    seen = {u.base}
    stack = [u.base]
    while stack:
        v = stack.pop()
        for w in tight[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == g.n


def lipschitz_to_slopes(t: RootedTree, u: Sequence[Fraction]) -> Measure:
    """Edge slopes ``(u(x) - u(parent x)) / w``; zero at the root."""
    vals = u.values if isinstance(u, LipschitzFunction) else as_measure(u, t.n)
    if vals[t.root] != 0:
        raise ValueError("potential must vanish at the root")
    phi = [Fraction(0)] * t.n
    for x in t.non_root():
        phi[x] = (vals[x] - vals[t.parent[x]]) / t.up_weight[x]
    return tuple(phi)


def slopes_to_lipschitz(t: RootedTree, phi: Sequence[Fraction]) -> LipschitzFunction:
    phi = as_measure(phi, t.n)
    u = [Fraction(0)] * t.n
    for x in t.non_root():
        u[x] = u[t.parent[x]] + t.up_weight[x] * phi[x]
    return LipschitzFunction(tuple(u), t.root)


# ---------------------------------------------------------------------------
# optimal couplings


@dataclass(frozen=True)
class BabaReport:
    holds: bool
    slack: Measure  # mu(x) - required(x); negative where violated
    violations: tuple[int, ...]
    sufficient: bool  # min mu >= 2 |mu - nu|_1


def _required(t: RootedTree, big: Measure, pos_first: bool) -> list[Fraction]:
    def pos(v):
        return max(v, Fraction(0))

    def neg(v):
        return max(-v, Fraction(0))

    up, down = (pos, neg) if pos_first else (neg, pos)
    req = []
    for x in range(t.n):
        own = up(big[x]) if x != t.root else Fraction(0)
        req.append(own + sum((down(big[c]) for c in t.children[x]), Fraction(0)))
    return req


def check_baba(t: RootedTree, mu: Sequence[Fraction],
               nu: Sequence[Fraction]) -> BabaReport:
    """Evaluate the feasibility condition of the closed-form tree coupling.

    At each vertex ``mu(x) >= [Xi(x)]+ + sum over children [Xi(c)]-``.
    """
    mu = check_probability(mu)
    nu = check_probability(nu)
    xi = [a - b for a, b in zip(mu, nu)]
    big = cumulative(t, xi)
    req = _required(t, big, True)
    slack = tuple(m - r for m, r in zip(mu, req))
    bad = tuple(x for x in range(t.n) if slack[x] < 0)
    l1 = sum((abs(v) for v in xi), Fraction(0))
    return BabaReport(not bad, slack, bad, min(mu) >= 2 * l1)


@dataclass(frozen=True)
class BabaFailure:
    """Neither closed-form coupling applies; lists violating vertices."""

    mu_side: tuple[int, ...]
    nu_side: tuple[int, ...]


@dataclass(frozen=True)
class TreeCoupling:
    coupling: Coupling
    cost: Fraction
    side: str  # "mu" or "nu"


def optimal_tree_coupling(t: RootedTree, mu: Sequence[Fraction],
                          nu: Sequence[Fraction]
                          ) -> Union[TreeCoupling, BabaFailure]:
    """Closed-form optimal coupling on a tree, when its condition holds.

    Mass ``[Xi(x)]+`` moves up the edge ``x -> parent(x)`` and ``[Xi(x)]-``
    moves down it; the rest of ``mu`` stays put.  If the condition fails
    for ``mu``, the mirrored construction driven by ``nu`` is tried.
    """
    mu = check_probability(as_measure(mu, t.n))
    nu = check_probability(as_measure(nu, t.n))
    xi = [a - b for a, b in zip(mu, nu)]
    big = cumulative(t, xi)
    failures = []
    for side, keep in (("mu", mu), ("nu", nu)):
        pos_first = side == "mu"
        req = _required(t, big, pos_first)
        bad = tuple(x for x in range(t.n) if keep[x] < req[x])
        if bad:
            failures.append(bad)
            continue
        mass: dict[tuple[int, int], Fraction] = {}
        for x in range(t.n):
            if keep[x] - req[x]:
                mass[(x, x)] = keep[x] - req[x]
        for x in t.non_root():
            up = max(big[x], Fraction(0))
            down = max(-big[x], Fraction(0))
            if up:
                mass[(x, t.parent[x])] = up
            if down:
                mass[(t.parent[x], x)] = down
        cost = sum((t.up_weight[x] * abs(big[x]) for x in t.non_root()),
                   Fraction(0))
        return TreeCoupling(Coupling(mass, mu, nu), cost, side)
    return BabaFailure(*failures)


# ---------------------------------------------------------------------------
# barycenter and gradient


def barycenter(d: DistanceMatrix, mu: Sequence[Fraction]) -> tuple[int, Fraction]:
    """Vertex minimizing the ``mu``-mean distance; lowest index on ties."""
    mu = check_probability(mu)
    best, arg = None, -1
    for v in range(len(mu)):
        val = sum((m * d[y][v] for y, m in enumerate(mu)), Fraction(0))
        if best is None or val < best:
            best, arg = val, v
    return arg, best


@dataclass(frozen=True)
class NotDifferentiable:
    vanishing: frozenset[int]  # vertices with zero subtree mass


def norm_gradient(t: RootedTree, xi: Sequence[Fraction]
                  ) -> Union[LipschitzFunction, NotDifferentiable]:
    """Gradient of the tree norm at ``xi``, when every ``Xi(x)`` (x ≠ root) is nonzero.

    Only the differentiable case is computed; otherwise the set of
    vertices with vanishing subtree mass is reported.
    """
    big = tree_norm(t, xi).edge_coefficients
    zero = frozenset(x for x in range(t.n) if big[x] == 0)
    if zero - {t.root}:
        return NotDifferentiable(zero)
    return aligned_dual(t, xi)


def nonroot_signs(eps: Optional[Sequence[int]], t: RootedTree) -> tuple[int, ...]:
    """Normalize a sign assignment to a tuple with 0 at the root."""
    if eps is None:
        return tuple(0 if x == t.root else 1 for x in range(t.n))
    return tuple(0 if x == t.root else int(eps[x]) for x in range(t.n))

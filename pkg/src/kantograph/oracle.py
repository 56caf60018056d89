"""Exact transportation solver used as ground truth.

Mass is shipped from the positive part of ``mu - nu`` to its negative
part by successive shortest paths on the bipartite residual network.
Dijkstra runs on reduced costs with rational node potentials, so no
floating point is involved anywhere.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .graph import CapacityError, RootedTree
from .measures import (Coupling, MeasureError, check_probability,
                       check_zero_mass, negative_part, pairing, positive_part)

DUAL_ENUMERATION_MAX_N = 16


@dataclass(frozen=True)
class TransportPlan:
    value: Fraction
    flow: dict[tuple[int, int], Fraction]


def transport_plan(cost: Sequence[Sequence[Fraction]],
                   supply: Sequence[Fraction],
                   demand: Sequence[Fraction]) -> TransportPlan:
    """Minimum-cost shipment of ``supply`` onto ``demand``.

    ``cost[i][j]`` must be non-negative; the totals of supply and demand
    must agree.  The returned flow has an acyclic bipartite support.
    """
    if sum(supply, Fraction(0)) != sum(demand, Fraction(0)):
        raise MeasureError("supply and demand totals differ")
    if any(v < 0 for v in supply) or any(v < 0 for v in demand):
        raise MeasureError("negative supply or demand")
    src = [i for i, v in enumerate(supply) if v > 0]
    dst = [j for j, v in enumerate(demand) if v > 0]
    if not src:
        return TransportPlan(Fraction(0), {})
    p, q = len(src), len(dst)
    c = [[Fraction(cost[i][j]) for j in dst] for i in src]
    if any(v < 0 for row in c for v in row):
        raise ValueError("negative transport cost")
    rem_s = [Fraction(supply[i]) for i in src]
    rem_t = [Fraction(demand[j]) for j in dst]
    flow = [[Fraction(0)] * q for _ in range(p)]

    # node ids: 0 = super source, 1..p sources, p+1..p+q sinks, p+q+1 = sink
    root, sink = 0, p + q + 1
    size = p + q + 2
    pot = [Fraction(0)] * size

    def arcs(v):
        if v == root:
            for a in range(p):
                if rem_s[a] > 0:
                    yield a + 1, Fraction(0)
        elif v <= p:
            a = v - 1
            for b in range(q):
                yield p + 1 + b, c[a][b]
        elif v < sink:
            b = v - p - 1
            for a in range(p):
                if flow[a][b] > 0:
                    yield a + 1, -c[a][b]
            if rem_t[b] > 0:
                yield sink, Fraction(0)

    while any(rem_s):
        dist: list[Optional[Fraction]] = [None] * size
        prev = [-1] * size
        done = [False] * size
        dist[root] = Fraction(0)
        while True:
            v, best = -1, None
            for k in range(size):
                if not done[k] and dist[k] is not None and (best is None or dist[k] < best):
                    v, best = k, dist[k]
            if v == -1:
                break
            done[v] = True
            for u, w in arcs(v):
                nd = best + w + pot[v] - pot[u]
                if dist[u] is None or nd < dist[u]:
                    dist[u] = nd
                    prev[u] = v
        if dist[sink] is None:
            raise ArithmeticError("residual network disconnected")
        for k in range(size):
            if dist[k] is not None:
                pot[k] += dist[k]
        path = [sink]
        while path[-1] != root:
            path.append(prev[path[-1]])
        path.reverse()
        amount = min(rem_s[path[1] - 1], rem_t[path[-2] - p - 1])
        for v, u in zip(path[1:-2], path[2:-1]):
            if v > p:  # backward arc sink-side -> source-side
                amount = min(amount, flow[u - 1][v - p - 1])
        rem_s[path[1] - 1] -= amount
        rem_t[path[-2] - p - 1] -= amount
        for v, u in zip(path[1:-2], path[2:-1]):
            if v <= p:
                flow[v - 1][u - p - 1] += amount
            else:
                flow[u - 1][v - p - 1] -= amount

    _break_cycles(flow, c)
    value = sum((c[a][b] * flow[a][b] for a in range(p) for b in range(q)),
                Fraction(0))
    plan = {(src[a], dst[b]): flow[a][b]
            for a in range(p) for b in range(q) if flow[a][b]}
    return TransportPlan(value, plan)


def _support_cycle(flow) -> list[tuple[int, int]]:
    """A cycle of the bipartite support, as alternating ``(a, b)`` cells."""
    p, q = len(flow), len(flow[0]) if flow else 0
    parent: dict[tuple[str, int], tuple[str, int] | None] = {}
    for start in range(p):
        node = ("s", start)
        if node in parent:
            continue
        parent[node] = None
        stack = [node]
        while stack:
            v = stack.pop()
            side, k = v
            nbrs = ([("t", b) for b in range(q) if flow[k][b]] if side == "s"
                    else [("s", a) for a in range(p) if flow[a][k]])
            for u in nbrs:
                if u == parent[v]:
                    continue
                if u in parent:
                    # close the cycle through the two tree paths
                    pu, pv = [u], [v]
                    while parent[pu[-1]] is not None:
                        pu.append(parent[pu[-1]])
                    while parent[pv[-1]] is not None:
                        pv.append(parent[pv[-1]])
                    common = set(pu) & set(pv)
                    pu = pu[:next(i for i, x in enumerate(pu) if x in common) + 1]
                    pv = pv[:next(i for i, x in enumerate(pv) if x in common) + 1]
                    ring = pv + pu[-2::-1] + [v]
                    cells = []
                    for x, y in zip(ring, ring[1:]):
                        a, b = (x[1], y[1]) if x[0] == "s" else (y[1], x[1])
                        cells.append((a, b))
                    return cells
                parent[u] = v
                stack.append(u)
    return []


def _break_cycles(flow, c) -> None:
    # an optimal flow has zero-cost support cycles; rerouting around each
    # one empties at least one cell without changing the cost
    while True:
        cells = _support_cycle(flow)
        if not cells:
            return
        plus, minus = cells[0::2], cells[1::2]
        delta = sum((c[a][b] for a, b in plus), Fraction(0)) - \
            sum((c[a][b] for a, b in minus), Fraction(0))
        if delta > 0:
            plus, minus = minus, plus
        theta = min(flow[a][b] for a, b in minus)
        for a, b in plus:
            flow[a][b] += theta
        for a, b in minus:
            flow[a][b] -= theta


def primal_lp_distance(d: Sequence[Sequence[Fraction]],
                       mu: Sequence[Fraction],
                       nu: Sequence[Fraction]) -> tuple[Fraction, Coupling]:
    """Kantorovich distance and an optimal coupling.

    The mass common to both margins stays in place on the diagonal; the
    excess of ``mu`` over ``nu`` is transported by :func:`transport_plan`.
    """
    mu = check_probability(mu)
    nu = check_probability(nu)
    if len(mu) != len(nu) or len(d) != len(mu):
        raise MeasureError("margins and cost matrix have different sizes")
    xi = [a - b for a, b in zip(mu, nu)]
    plan = transport_plan(d, positive_part(xi), negative_part(xi))
    mass = {(x, x): min(a, b) for x, (a, b) in enumerate(zip(mu, nu)) if min(a, b)}
    mass.update(plan.flow)
    return plan.value, Coupling(mass, mu, nu)


def kb_norm(d: Sequence[Sequence[Fraction]], xi: Sequence[Fraction]) -> Fraction:
    """Norm of a zero-mass vector: cost of moving its positive part onto its negative part."""
    xi = check_zero_mass(xi)
    return transport_plan(d, positive_part(xi), negative_part(xi)).value


@dataclass(frozen=True)
class CouplingCheck:
    feasible: bool
    cost: Fraction
    offending: Optional[tuple[str, int]] = None  # ("row"|"column", vertex)


def verify_coupling(gamma: Coupling, d: Sequence[Sequence[Fraction]]) -> CouplingCheck:
    cost = gamma.cost(d)
    if any(m < 0 for m in gamma.mass.values()):
        neg = min(k for k, m in gamma.mass.items() if m < 0)
        return CouplingCheck(False, cost, ("row", neg[0]))
    for x, (got, want) in enumerate(zip(gamma.row_sums(), gamma.mu)):
        if got != want:
            return CouplingCheck(False, cost, ("row", x))
    for y, (got, want) in enumerate(zip(gamma.column_sums(), gamma.nu)):
        if got != want:
            return CouplingCheck(False, cost, ("column", y))
    return CouplingCheck(True, cost)


def dual_tree_enumeration(t: RootedTree, xi: Sequence[Fraction]
                          ) -> tuple[Fraction, tuple[int, ...]]:
    """Brute-force maximum of ``<xi, u_eps>`` over all sign assignments.

    Returns the maximum and the lexicographically smallest maximizing
    assignment (``-1 < +1``, root entry 0).
    """
    from .tree import extreme_lipschitz  # local import: tree imports measures only

    if t.n > DUAL_ENUMERATION_MAX_N:
        raise CapacityError(
            f"dual enumeration limited to {DUAL_ENUMERATION_MAX_N} vertices")
    xi = check_zero_mass(xi)
    free = sorted(t.non_root())
    best, arg = None, None
    for mask in range(1 << len(free)):
        eps = [0] * t.n
        for k, x in enumerate(free):
            eps[x] = 1 if mask >> (len(free) - 1 - k) & 1 else -1
        val = pairing(xi, extreme_lipschitz(t, eps).values)
        if best is None or val > best:
            best, arg = val, tuple(eps)
    return best, arg

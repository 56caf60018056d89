"""Kantorovich norm on general connected graphs.

The norm of a graph is the smallest of the norms of its spanning trees.
Cycles admit a one-parameter closed form, graphs with a cut vertex split
into independent pieces, and quotient maps transport norms between
graphs.  :func:`graph_norm` dispatches between these and the LP oracle.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .graph import (DEFAULT_TREE_LIMIT, DistanceMatrix, EnumerationOverflow,
                    RootedTree, WeightedGraph, all_pairs_shortest_paths,
                    articulation_split, close_pairs, enumerate_spanning_trees,
                    geodesic, root_tree)
from .measures import (Measure, as_measure, check_zero_mass, negative_part,
                       positive_part, push_forward)
from .oracle import kb_norm, transport_plan

METHODS = ("auto", "tree", "envelope", "cycle", "decompose", "oracle")


@lru_cache(maxsize=64)
def _rooted_spanning_trees(g: WeightedGraph, limit: int) -> tuple[RootedTree, ...]:
    return tuple(root_tree(g.subgraph(ids), 0)
                 for ids in enumerate_spanning_trees(g, limit))


def spanning_trees(g: WeightedGraph, limit: int = DEFAULT_TREE_LIMIT
                   ) -> tuple[RootedTree, ...]:
    """All spanning trees of ``g`` rooted at vertex 0, cached per graph."""
    return _rooted_spanning_trees(g, limit)


def _fast_tree_norm(t: RootedTree, xi: Measure) -> Fraction:
    acc = list(xi)
    total = Fraction(0)
    for x in reversed(t.order[1:]):
        total += t.up_weight[x] * abs(acc[x])
        acc[t.parent[x]] += acc[x]
    return total


@dataclass(frozen=True)
class EnvelopeResult:
    value: Fraction
    tree: RootedTree  # first minimizing spanning tree in enumeration order
    index: int


def envelope_norm(g: WeightedGraph, xi: Sequence[Fraction],
                  limit: int = DEFAULT_TREE_LIMIT) -> EnvelopeResult:
    """Minimum of the spanning-tree norms (each tree with its own edge weights)."""
    xi = check_zero_mass(as_measure(xi, g.n))
    best, arg = None, -1
    trees = spanning_trees(g, limit)
    for k, t in enumerate(trees):
        val = _fast_tree_norm(t, xi)
        if best is None or val < best:
            best, arg = val, k
    return EnvelopeResult(best, trees[arg], arg)


# ---------------------------------------------------------------------------
# cycles


def cycle_phi(weights: Sequence[Fraction], xi: Sequence[Fraction], t: Fraction) -> Fraction:
    """``sum_i w_i |t - (xi_1 + ... + xi_i)|``."""
    total, prefix = Fraction(0), Fraction(0)
    for w, v in zip(weights, xi, strict=True):
        prefix += v
        total += w * abs(t - prefix)
    return total


@dataclass(frozen=True)
class CycleNorm:
    value: Fraction
    argmin: int  # index i (0-based) of the minimizing prefix sum
    t: Fraction


def cycle_norm(weights: Sequence[Fraction], xi: Sequence[Fraction]) -> CycleNorm:
    """Norm on the cycle ``0 -> 1 -> ... -> n-1 -> 0``.

    ``weights[i]`` is the length of edge ``(i, i+1 mod n)``.  The convex
    piecewise-linear function of the free circulation ``t`` is minimized
    over its breakpoints, the prefix sums of ``xi``.
    """
    weights = [Fraction(w) for w in weights]
    xi = check_zero_mass(as_measure(xi, len(weights)))
    if len(weights) < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    best, arg, t_best = None, -1, Fraction(0)
    prefix = Fraction(0)
    for i, v in enumerate(xi):
        prefix += v
        val = cycle_phi(weights, xi, prefix)
        if best is None or val < best:
            best, arg, t_best = val, i, prefix
    return CycleNorm(best, arg, t_best)


def cycle_order(g: WeightedGraph) -> tuple[list[int], list[Fraction]]:
    """Vertices of a cycle graph in traversal order from vertex 0, with edge weights."""
    if not g.is_cycle():
        raise ValueError("graph is not a cycle")
    order = [0]
    nxt = min(g.adjacency[0])
    while nxt != 0:
        prev = order[-1]
        order.append(nxt)
        nxt = next(u for u in sorted(g.adjacency[nxt]) if u != prev)
    weights = [g.weight(order[i], order[(i + 1) % g.n]) for i in range(g.n)]
    return order, weights


def graph_cycle_norm(g: WeightedGraph, xi: Sequence[Fraction]) -> Fraction:
    order, weights = cycle_order(g)
    return cycle_norm(weights, [xi[v] for v in order]).value


# ---------------------------------------------------------------------------
# articulation decomposition


def decomposed_norm(g: WeightedGraph, xi: Sequence[Fraction],
                    limit: int = DEFAULT_TREE_LIMIT) -> Fraction:
    """Sum of the norms of the pieces cut off by the lowest-index cut vertex.

    Each piece receives ``xi`` on its own vertices, with the cut vertex
    absorbing the opposite of the piece's remaining mass.  Pieces are
    evaluated recursively through :func:`graph_norm`.
    """
    xi = check_zero_mass(as_measure(xi, g.n))
    splits = articulation_split(g)
    if not splits:
        return envelope_norm(g, xi, limit).value
    sp = splits[0]
    total = Fraction(0)
    for comp in sp.components:
        sub, keep = g.induced(comp)
        local = [xi[v] for v in keep]
        pos = keep.index(sp.vertex)
        local[pos] = -sum((local[k] for k in range(len(keep)) if k != pos), Fraction(0))
        total += graph_norm(sub, local, "auto", limit)[0]
    return total


# ---------------------------------------------------------------------------
# dispatch


def resolve_method(g: WeightedGraph, limit: int = DEFAULT_TREE_LIMIT) -> str:
    """Pick the cheapest exact method for ``g``."""
    if g.is_tree():
        return "tree"
    if g.is_cycle():
        return "cycle"
    if articulation_split(g):
        return "decompose"
    try:
        spanning_trees(g, limit)
    except EnumerationOverflow:
        return "oracle"
    return "envelope"


def graph_norm(g: WeightedGraph, xi: Sequence[Fraction], method: str = "auto",
               limit: int = DEFAULT_TREE_LIMIT, root: int = 0) -> tuple[Fraction, str]:
    """Norm of ``xi`` on ``g`` by the chosen method; returns (value, method)."""
    xi = check_zero_mass(as_measure(xi, g.n))
    if method == "auto":
        method = resolve_method(g, limit)
    if not any(xi):
        return Fraction(0), method
    if method == "tree":
        return _fast_tree_norm(root_tree(g, root), xi), method
    if method == "cycle":
        return graph_cycle_norm(g, xi), method
    if method == "decompose":
        return decomposed_norm(g, xi, limit), method
    if method == "envelope":
        return envelope_norm(g, xi, limit).value, method
    if method == "oracle":
        return kb_norm(all_pairs_shortest_paths(g), xi), method
    raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")


# ---------------------------------------------------------------------------
# quotient maps


class QuotientError(ValueError):
    pass


@dataclass(frozen=True)
class QuotientMap:
    source: WeightedGraph
    target: WeightedGraph
    q: tuple[int, ...]

    def __post_init__(self):
        if len(self.q) != self.source.n:
            raise QuotientError("map must be defined on every source vertex")
        if any(not 0 <= v < self.target.n for v in self.q):
            raise QuotientError("map sends a vertex outside the target")
        if set(self.q) != set(range(self.target.n)):
            missing = sorted(set(range(self.target.n)) - set(self.q))
            raise QuotientError(
                f"map is not surjective; missing {[self.target.labels[v] for v in missing]}")

    @classmethod
    def from_labels(cls, source: WeightedGraph, target: WeightedGraph,
                    pairs: dict[str, str]) -> "QuotientMap":
        try:
            q = tuple(target.index[pairs[lab]] for lab in source.labels)
        except KeyError as exc:
            raise QuotientError(f"unmapped or unknown label {exc}") from None
        return cls(source, target, q)


@dataclass(frozen=True)
class ExactnessCertificate:
    ok: bool
    witnesses: dict[tuple[int, int], tuple[int, int]]  # (u, v) -> (x, y)
    failure: Optional[str] = None
    failing_pair: Optional[tuple[int, int]] = None


def check_exactly_nonexpansive(qm: QuotientMap, dx: DistanceMatrix,
                               dy: DistanceMatrix) -> ExactnessCertificate:
    """Non-expansive, and every target distance realized by some fiber pair."""
    q = qm.q
    nx, ny = qm.source.n, qm.target.n
    for x in range(nx):
        for y in range(nx):
            if dy[q[x]][q[y]] > dx[x][y]:
                return ExactnessCertificate(False, {}, "expansive", (x, y))
    fibers = [[x for x in range(nx) if q[x] == u] for u in range(ny)]
    witnesses = {}
    for u in range(ny):
        for v in range(ny):
            hit = next(((x, y) for x in fibers[u] for y in fibers[v]
                        if dx[x][y] == dy[u][v]), None)
            if hit is None:
                return ExactnessCertificate(False, witnesses, "not exact", (u, v))
            witnesses[(u, v)] = hit
    return ExactnessCertificate(True, witnesses)


@dataclass(frozen=True)
class IdentificationCertificate:
    """The close-pair conditions on a map between graphs.

    ``condition_i``: close source vertices either merge or land on
    adjacent target vertices at the same distance.  ``condition_ii``:
    every close target pair has a fiber pair no farther apart.
    ``lifts`` holds one such fiber pair per close target pair, both
    orientations.
    """

    condition_i: bool
    condition_ii: bool
    lifts: dict[tuple[int, int], tuple[int, int]]
    failing_pair: Optional[tuple[int, int]] = None

    @property
    def ok(self) -> bool:
        return self.condition_i and self.condition_ii


def check_identification_conditions(qm: QuotientMap, dx: DistanceMatrix,
                                    dy: DistanceMatrix) -> IdentificationCertificate:
    q = qm.q
    cond_i, failing = True, None
    for x, y in close_pairs(qm.source, dx):
        u, v = q[x], q[y]
        if u != v and (qm.target.weight(u, v) is None or dy[u][v] != dx[x][y]):
            cond_i, failing = False, (x, y)
            break
    fibers = [[x for x in range(qm.source.n) if q[x] == u] for u in range(qm.target.n)]
    lifts: dict[tuple[int, int], tuple[int, int]] = {}
    for u, v in close_pairs(qm.target, dy):
        hit = next(((x, y) for x in fibers[u] for y in fibers[v]
                    if dx[x][y] <= dy[u][v]), None)
        if hit is None:
            return IdentificationCertificate(cond_i, False, lifts, failing or (u, v))
        lifts[(u, v)] = hit
        lifts[(v, u)] = hit[::-1]
    return IdentificationCertificate(cond_i, True, lifts, failing)


@dataclass(frozen=True)
class QuotientNorm:
    value: Fraction       # computed on the target
    lift_value: Fraction  # norm of the lift on the source
    lift: Measure
    rule: str             # "exact" (fiber pair per plan entry) or "close-pair"


def quotient_norm(qm: QuotientMap, eta: Sequence[Fraction],
                  limit: int = DEFAULT_TREE_LIMIT) -> QuotientNorm:
    """Target norm of ``eta`` and the source norm of a cheapest lift.

    With an exactness certificate, each unit of an optimal target plan
    moves between the certified fiber pair.  Otherwise the unit walks a
    target geodesic and every close step is lifted to a fiber pair no
    farther apart; non-expansiveness then pins the lift's norm to the
    target value.  Raises :class:`QuotientError` when the map is
    expansive or neither certificate exists.
    """
    eta = check_zero_mass(as_measure(eta, qm.target.n))
    dx = all_pairs_shortest_paths(qm.source)
    dy = all_pairs_shortest_paths(qm.target)
    cert = check_exactly_nonexpansive(qm, dx, dy)
    if cert.failure == "expansive":
        raise QuotientError(f"map is expansive at {cert.failing_pair}")
    if cert.ok:
        rule = "exact"
    else:
        ident = check_identification_conditions(qm, dx, dy)
        if not ident.condition_ii:
            raise QuotientError(
                f"map is not exact at {cert.failing_pair} and close pair "
                f"{ident.failing_pair} has no short fiber lift")
        rule = "close-pair"
    plan = transport_plan(dy, positive_part(eta), negative_part(eta))
    lift = [Fraction(0)] * qm.source.n
    for (u, v), m in sorted(plan.flow.items()):
        if rule == "exact":
            steps = [cert.witnesses[(u, v)]]
        else:
            path = geodesic(qm.target, dy, u, v)
            steps = [ident.lifts[(a, b)] for a, b in zip(path, path[1:])]
        for x, y in steps:
            lift[x] += m
            lift[y] -= m
    lift = tuple(lift)
    if push_forward(qm.q, lift, qm.target.n) != eta:
        raise ArithmeticError("lift does not push forward to eta")
    lift_value = graph_norm(qm.source, lift, "auto", limit)[0]
    if lift_value != plan.value:
        raise ArithmeticError(
            f"quotient identity failed: target {plan.value} vs lift {lift_value}")
    return QuotientNorm(plan.value, lift_value, lift, rule)


def endpoint_identification(n: int, weights: Optional[Sequence[Fraction]] = None
                            ) -> QuotientMap:
    """Path ``1 - 2 - ... - n`` glued at its ends onto the cycle of order ``n-1``."""
    if n < 4:
        raise ValueError("need a path with at least 4 vertices")
    w = [Fraction(1)] * (n - 1) if weights is None else [Fraction(v) for v in weights]
    path = WeightedGraph.from_edges(
        (str(i), str(i + 1), w[i - 1]) for i in range(1, n))
    cyc = WeightedGraph.from_edges(
        (str(i), str(i % (n - 1) + 1), w[i - 1]) for i in range(1, n))
    mapping = {str(i): str(i) for i in range(1, n)}
    mapping[str(n)] = "1"
    return QuotientMap.from_labels(path, cyc, mapping)


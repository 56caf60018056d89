"""Weighted graphs, shortest-path metrics, rooted trees and spanning trees.

Every weight and distance is a :class:`fractions.Fraction`; equality tests
are exact.  Vertices are dense integer indices ``0..n-1`` carrying string
labels, numbered in order of first appearance.
"""

from __future__ import annotations

import heapq
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Optional

Edge = tuple[int, int, Fraction]
DistanceMatrix = tuple[tuple[Fraction, ...], ...]

DEFAULT_TREE_LIMIT = 10**6


class GraphError(ValueError):
    """Invalid graph input (loops, duplicates, bad weights, disconnected)."""


class NotATreeError(GraphError):
    """Raised when a tree was expected but the input has a cycle."""

    def __init__(self, message: str, cycle: Sequence[tuple[int, int]] = ()):
        super().__init__(message)
        self.cycle = list(cycle)


class CapacityError(RuntimeError):
    """An exhaustive computation would exceed its configured bound."""


class EnumerationOverflow(CapacityError):
    def __init__(self, count: int, limit: int):
        super().__init__(
            f"spanning tree enumeration exceeded limit {limit} "
            f"(reached {count}); use the LP oracle instead")
        self.count = count
        self.limit = limit


def _frac(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        # floats are converted through their repr so 0.1 stays 1/10
        return Fraction(repr(value))
    return Fraction(value)


@dataclass(frozen=True)
class WeightedGraph:
    """Finite simple connected undirected graph with positive weights.

    ``edges`` holds ``(i, j, w)`` with ``i < j``, in input order.
    """

    labels: tuple[str, ...]
    edges: tuple[Edge, ...]

    def __post_init__(self):
        labels = tuple(str(lab) for lab in self.labels)
        if len(set(labels)) != len(labels):
            raise GraphError("vertex labels must be unique")
        if not labels:
            raise GraphError("graph must have at least one vertex")
        n = len(labels)
        seen = set()
        norm = []
        for i, j, w in self.edges:
            w = _frac(w)
            if not (0 <= i < n and 0 <= j < n):
                raise GraphError(f"edge ({i}, {j}) out of range")
            if i == j:
                raise GraphError(f"loop at vertex {labels[i]!r}")
            if w <= 0:
                raise GraphError(
                    f"edge {labels[i]}-{labels[j]} has non-positive weight {w}")
            key = (min(i, j), max(i, j))
            if key in seen:
                raise GraphError(
                    f"duplicate edge {labels[key[0]]}-{labels[key[1]]}")
            seen.add(key)
            norm.append((key[0], key[1], w))
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "edges", tuple(norm))
        if not _is_connected(n, [(i, j) for i, j, _ in norm]):
            raise GraphError("graph is not connected")

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[str, str, object]],
                   labels: Iterable[str] = ()) -> "WeightedGraph":
        """Build a graph from labelled edges ``(a, b, weight)``.

        Labels listed in ``labels`` come first; the remaining ones are
        numbered in order of first appearance.
        """
        index: dict[str, int] = {}
        for lab in labels:
            index.setdefault(str(lab), len(index))
        out = []
        for a, b, w in edges:
            for lab in (str(a), str(b)):
                index.setdefault(lab, len(index))
            out.append((index[str(a)], index[str(b)], _frac(w)))
        return cls(tuple(index), tuple(out))

    @property
    def n(self) -> int:
        return len(self.labels)

    @cached_property
    def index(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.labels)}

    @cached_property
    def adjacency(self) -> tuple[dict[int, Fraction], ...]:
        adj: list[dict[int, Fraction]] = [{} for _ in range(self.n)]
        for i, j, w in self.edges:
            adj[i][j] = w
            adj[j][i] = w
        return tuple(adj)

    def weight(self, x: int, y: int) -> Optional[Fraction]:
        return self.adjacency[x].get(y)

    def degree(self, x: int) -> int:
        return len(self.adjacency[x])

    def is_tree(self) -> bool:
        return len(self.edges) == self.n - 1

    def is_cycle(self) -> bool:
        return (self.n >= 3 and len(self.edges) == self.n
                and all(self.degree(x) == 2 for x in range(self.n)))

    def subgraph(self, edge_ids: Iterable[int]) -> "WeightedGraph":
        """Spanning subgraph on the same vertex set using the given edges."""
        return WeightedGraph(self.labels,
                             tuple(self.edges[k] for k in sorted(edge_ids)))

    def induced(self, vertices: Iterable[int]) -> tuple["WeightedGraph", list[int]]:
        """Induced subgraph; returns it with the list of original indices."""
        keep = sorted(set(vertices))
        pos = {v: k for k, v in enumerate(keep)}
        edges = tuple((pos[i], pos[j], w) for i, j, w in self.edges
                      if i in pos and j in pos)
        return WeightedGraph(tuple(self.labels[v] for v in keep), edges), keep


def _is_connected(n: int, edges: Sequence[tuple[int, int]]) -> bool:
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    comps = n
    for i, j in edges:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj
            comps -= 1
    return comps == 1


# ---------------------------------------------------------------------------
# shortest paths and metric checks


def _dijkstra(g: WeightedGraph, source: int) -> list[Fraction]:
    dist: list[Optional[Fraction]] = [None] * g.n
    dist[source] = Fraction(0)
    heap = [(Fraction(0), source)]
    done = [False] * g.n
    while heap:
        dx, x = heapq.heappop(heap)
        if done[x]:
            continue
        done[x] = True
        for y, w in g.adjacency[x].items():
            nd = dx + w
            if dist[y] is None or nd < dist[y]:
                dist[y] = nd
                heapq.heappush(heap, (nd, y))
    return dist  # type: ignore[return-value]


def all_pairs_shortest_paths(g: WeightedGraph) -> DistanceMatrix:
    """Exact shortest-path distance matrix, one Dijkstra run per source."""
    return tuple(tuple(_dijkstra(g, s)) for s in range(g.n))


def geodesic(g: WeightedGraph, d: DistanceMatrix, x: int, y: int) -> list[int]:
    """A shortest path from ``x`` to ``y``.

    Walking back from ``y``, the predecessor with the lowest index is
    chosen among all vertices lying on some geodesic, which makes the
    result deterministic.
    """
    path = [y]
    v = y
    while v != x:
        v = min(u for u, w in g.adjacency[v].items() if d[x][u] + w == d[x][v])
        path.append(v)
    path.reverse()
    return path


def is_close(g: WeightedGraph, d: DistanceMatrix, x: int, y: int) -> bool:
    """Adjacent, and the connecting edge is itself a shortest path."""
    if x == y:
        raise ValueError("closeness is defined for distinct vertices")
    w = g.weight(x, y)
    return w is not None and d[x][y] == w


def close_pairs(g: WeightedGraph, d: DistanceMatrix) -> list[tuple[int, int]]:
    return [(i, j) for i, j, w in g.edges if d[i][j] == w]


@dataclass(frozen=True)
class MetricReport:
    ok: bool
    kind: Optional[str] = None  # shape|diagonal|symmetry|positivity|triangle
    where: tuple[int, ...] = ()

    def __bool__(self):
        return self.ok

    def describe(self) -> str:
        if self.ok:
            return "ok"
        return f"{self.kind} violation at {self.where}"


def validate_metric(d: Sequence[Sequence]) -> MetricReport:
    """Check the metric axioms; reports the first violation found."""
    n = len(d)
    if any(len(row) != n for row in d):
        return MetricReport(False, "shape")
    for x in range(n):
        if d[x][x] != 0:
            return MetricReport(False, "diagonal", (x,))
    for x in range(n):
        for y in range(x + 1, n):
            if d[x][y] != d[y][x]:
                return MetricReport(False, "symmetry", (x, y))
            if d[x][y] <= 0:
                return MetricReport(False, "positivity", (x, y))
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if d[x][z] > d[x][y] + d[y][z]:
                    return MetricReport(False, "triangle", (x, y, z))
    return MetricReport(True)


# ---------------------------------------------------------------------------
# rooted trees


@dataclass(frozen=True)
class RootedTree:
    """A tree with a chosen root.

    ``parent[root] == -1``; ``order`` lists vertices root first, each
    vertex after its parent (breadth-first), so reversing it gives a
    bottom-up schedule.
    """

    graph: WeightedGraph
    root: int
    parent: tuple[int, ...]
    children: tuple[tuple[int, ...], ...]
    order: tuple[int, ...]
    up_weight: tuple[Fraction, ...] = field(repr=False)

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def labels(self) -> tuple[str, ...]:
        return self.graph.labels

    def non_root(self) -> list[int]:
        return [x for x in self.order if x != self.root]

    def ancestors(self, y: int) -> list[int]:
        """``y`` and every vertex above it, ending with the root."""
        out = [y]
        while self.parent[out[-1]] != -1:
            out.append(self.parent[out[-1]])
        return out

    def precedes(self, x: int, y: int) -> bool:
        """``x ⪯ y``: ``x`` lies on the path from the root to ``y``."""
        return x in self.ancestors(y)

    def subtree(self, x: int) -> list[int]:
        out, stack = [], [x]
        while stack:
            v = stack.pop()
            out.append(v)
            stack.extend(self.children[v])
        return sorted(out)

    def depth_distance(self) -> list[Fraction]:
        """Weighted distance of every vertex from the root."""
        dist = [Fraction(0)] * self.n
        for x in self.order:
            if x != self.root:
                dist[x] = dist[self.parent[x]] + self.up_weight[x]
        return dist

    def reroot(self, root: int) -> "RootedTree":
        return root_tree(self.graph, root)


def _find_cycle(g: WeightedGraph) -> list[tuple[int, int]]:
    parent = list(range(g.n))

    def find(a):
        while parent[a] != a:
            a = parent[a]
        return a

    forest: list[dict[int, int]] = [{} for _ in range(g.n)]
    for i, j, _ in g.edges:
        ri, rj = find(i), find(j)
        if ri == rj:
            # path i -> j inside the current forest, closed by edge (i, j)
            prev = {i: -1}
            stack = [i]
            while stack:
                v = stack.pop()
                for u in forest[v]:
                    if u not in prev:
                        prev[u] = v
                        stack.append(u)
            path = [j]
            while path[-1] != i:
                path.append(prev[path[-1]])
            cyc = list(zip(path, path[1:])) + [(i, j)]
            return [(min(a, b), max(a, b)) for a, b in cyc]
        parent[ri] = rj
        forest[i][j] = 1
        forest[j][i] = 1
    return []


def root_tree(t: WeightedGraph, root: int = 0) -> RootedTree:
    """Orient a tree away from ``root``."""
    if not t.is_tree():
        cycle = _find_cycle(t)
        raise NotATreeError(
            "input is not a tree; cycle: "
            + ", ".join(f"{t.labels[a]}-{t.labels[b]}" for a, b in cycle),
            cycle)
    if not 0 <= root < t.n:
        raise ValueError(f"root {root} out of range")
    parent = [-1] * t.n
    up = [Fraction(0)] * t.n
    kids: list[list[int]] = [[] for _ in range(t.n)]
    order = [root]
    seen = {root}
    k = 0
    while k < len(order):
        x = order[k]
        k += 1
        for y in sorted(t.adjacency[x]):
            if y not in seen:
                seen.add(y)
                parent[y] = x
                up[y] = t.adjacency[x][y]
                kids[x].append(y)
                order.append(y)
    return RootedTree(t, root, tuple(parent), tuple(map(tuple, kids)),
                      tuple(order), tuple(up))


# ---------------------------------------------------------------------------
# spanning trees


def enumerate_spanning_trees(g: WeightedGraph,
                             limit: int = DEFAULT_TREE_LIMIT
                             ) -> Iterator[tuple[int, ...]]:
    """Yield every spanning tree of ``g`` once, as sorted edge-index tuples.

    Edges are decided in input order: each is first contracted (kept),
    then deleted, the deletion branch being explored only if the
    remaining edges can still connect the graph.
    """
    n, m = g.n, len(g.edges)
    ends = [(i, j) for i, j, _ in g.edges]
    count = 0

    def find(parent, a):
        while parent[a] != a:
            a = parent[a]
        return a

    def spans(parent, k):
        # can the current contraction plus edges k.. connect everything?
        p = list(parent)
        comps = len({find(p, v) for v in range(n)})
        for e in range(k, m):
            a, b = find(p, ends[e][0]), find(p, ends[e][1])
            if a != b:
                p[a] = b
                comps -= 1
        return comps == 1

    def rec(k, parent, chosen):
        nonlocal count
        if len(chosen) == n - 1:
            count += 1
            if count > limit:
                raise EnumerationOverflow(count, limit)
            yield tuple(chosen)
            return
        if k == m:
            return
        i, j = ends[k]
        ri, rj = find(parent, i), find(parent, j)
        if ri != rj:
            p2 = list(parent)
            p2[ri] = rj
            chosen.append(k)
            yield from rec(k + 1, p2, chosen)
            chosen.pop()
        if spans(parent, k + 1):
            yield from rec(k + 1, parent, chosen)

    yield from rec(0, list(range(n)), [])


def spanning_tree_count(g: WeightedGraph, limit: int = DEFAULT_TREE_LIMIT) -> int:
    return sum(1 for _ in enumerate_spanning_trees(g, limit))


def extend_forest_to_spanning_tree(g: WeightedGraph,
                                   forest: Iterable[tuple[int, int]]
                                   ) -> tuple[int, ...]:
    """Greedy (Kruskal-style) completion of a forest to a spanning tree.

    ``forest`` is given as vertex pairs that must be edges of ``g``; the
    result is a sorted tuple of edge indices.
    """
    eid = {(i, j): k for k, (i, j, _) in enumerate(g.edges)}
    parent = list(range(g.n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    chosen = []
    for x, y in forest:
        key = (min(x, y), max(x, y))
        if key not in eid:
            raise GraphError(f"{g.labels[x]}-{g.labels[y]} is not an edge")
        rx, ry = find(x), find(y)
        if rx == ry:
            raise NotATreeError("forest contains a cycle", [key])
        parent[rx] = ry
        chosen.append(eid[key])
    for k, (i, j, _) in enumerate(g.edges):
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj
            chosen.append(k)
    return tuple(sorted(chosen))


# ---------------------------------------------------------------------------
# articulation vertices


@dataclass(frozen=True)
class ArticulationSplit:
    vertex: int
    components: tuple[tuple[int, ...], ...]  # each contains ``vertex``


def articulation_split(g: WeightedGraph) -> list[ArticulationSplit]:
    """For every cut vertex, the vertex sets of the pieces it separates."""
    out = []
    for x0 in range(g.n):
        seen = {x0}
        comps = []
        for s in sorted(g.adjacency[x0]):
            if s in seen:
                continue
            comp = [s]
            seen.add(s)
            stack = [s]
            while stack:
                v = stack.pop()
                for u in g.adjacency[v]:
                    if u not in seen:
                        seen.add(u)
                        comp.append(u)
                        stack.append(u)
            comps.append(tuple(sorted(comp + [x0])))
        if len(comps) >= 2:
            out.append(ArticulationSplit(x0, tuple(comps)))
    return out

"""Graph builders, random instance generators and independent oracles for tests."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction as F

import sympy
from hypothesis import strategies as st

from kantograph.graph import WeightedGraph


def path_graph(n, weights=None):
    w = weights or [1] * (n - 1)
    return WeightedGraph.from_edges(
        [(str(i), str(i + 1), w[i - 1]) for i in range(1, n)],
        labels=[str(i) for i in range(1, n + 1)])


def cycle_graph(n, weights=None):
    w = weights or [1] * n
    return WeightedGraph.from_edges(
        [(str(i), str(i % n + 1), w[i - 1]) for i in range(1, n + 1)])


def complete_graph(n, weight=1):
    return WeightedGraph.from_edges(
        [(str(i), str(j), weight) for i in range(1, n + 1) for j in range(i + 1, n + 1)])


def star_graph(phi):
    """Center ``r`` plus leaves ``1..k`` with edge weights ``phi``."""
    return WeightedGraph.from_edges(
        [(str(i + 1), "r", w) for i, w in enumerate(phi)])


ROOTED_EXAMPLE_EDGES = [("1", "2"), ("1", "3"), ("2", "4"), ("2", "5"), ("2", "6"),
              ("3", "7"), ("4", "8")]


def rooted_example_tree(weights=None):
    w = weights or [1] * 7
    return WeightedGraph.from_edges([(a, b, wt) for (a, b), wt in zip(ROOTED_EXAMPLE_EDGES, w)])


def two_cycles_graph():
    # triangles {1,2,5} and {2,3,4} sharing vertex 2
    return WeightedGraph.from_edges(
        [("1", "2", 1), ("2", "3", 1), ("3", "4", 1), ("4", "2", 1),
         ("2", "5", 1), ("5", "1", 1)],
        labels=["1", "2", "3", "4", "5"])


def diagonal_graph():
    # square 1-2-3-4 with diagonal 2-4
    return WeightedGraph.from_edges(
        [("1", "2", 1), ("2", "3", 1), ("3", "4", 1), ("4", "1", 1), ("2", "4", 1)])


# ---------------------------------------------------------------------------
# random instances


def rand_weight(rng, top=100):
    return F(rng.randint(1, top), rng.randint(1, top))


def random_tree(rng, n, top=100):
    return WeightedGraph.from_edges(
        [(str(rng.randrange(i)), str(i), rand_weight(rng, top)) for i in range(1, n)],
        labels=[str(i) for i in range(n)])


def random_graph(rng, n, m, top=20):
    edges = {(rng.randrange(i), i) for i in range(1, n)}
    rest = [(i, j) for i in range(n) for j in range(i + 1, n) if (i, j) not in edges]
    rng.shuffle(rest)
    edges |= set(rest[:max(0, m - len(edges))])
    return WeightedGraph(tuple(str(i) for i in range(n)),
                         tuple((i, j, rand_weight(rng, top)) for i, j in sorted(edges)))


def random_zero_mass(rng, n, top=50):
    v = [F(rng.randint(-top, top), rng.randint(1, top)) for _ in range(n - 1)]
    return tuple(v + [-sum(v, F(0))])


def random_probability(rng, n, positive=False, top=30):
    raw = [rng.randint(1 if positive else 0, top) for _ in range(n)]
    if not any(raw):
        raw[rng.randrange(n)] = 1
    s = sum(raw)
    return tuple(F(r, s) for r in raw)


@st.composite
def trees(draw, min_n=2, max_n=10):
    n = draw(st.integers(min_n, max_n))
    parents = [draw(st.integers(0, i - 1)) for i in range(1, n)]
    ws = [F(draw(st.integers(1, 30)), draw(st.integers(1, 10))) for _ in range(n - 1)]
    return WeightedGraph.from_edges(
        [(str(p), str(i), w) for i, (p, w) in enumerate(zip(parents, ws), 1)],
        labels=[str(i) for i in range(n)])


@st.composite
def connected_graphs(draw, min_n=2, max_n=7, max_extra=5):
    n = draw(st.integers(min_n, max_n))
    edges = {(draw(st.integers(0, i - 1)), i) for i in range(1, n)}
    others = [(i, j) for i in range(n) for j in range(i + 1, n) if (i, j) not in edges]
    if others:
        extra = draw(st.lists(st.sampled_from(others), max_size=max_extra, unique=True))
        edges |= set(extra)
    ws = {e: F(draw(st.integers(1, 12)), draw(st.integers(1, 4))) for e in sorted(edges)}
    return WeightedGraph(tuple(str(i) for i in range(n)),
                         tuple((i, j, w) for (i, j), w in ws.items()))


def zero_mass(n):
    return st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=12),
                    min_size=n - 1, max_size=n - 1).map(
        lambda v: tuple(v + [-sum(v, F(0))]))


# ---------------------------------------------------------------------------
# independent oracles


def brute_distances(g):
    """Shortest path lengths by enumerating simple paths."""
    n = g.n
    d = [[None] * n for _ in range(n)]
    for s in range(n):
        d[s][s] = F(0)
        stack = [(s, F(0), {s})]
        while stack:
            v, L, seen = stack.pop()
            for u, w in g.adjacency[v].items():
                if u in seen:
                    continue
                if d[s][u] is None or L + w < d[s][u]:
                    d[s][u] = L + w
                stack.append((u, L + w, seen | {u}))
    return d


def kirchhoff_count(g):
    """Spanning tree count by the matrix-tree theorem (unweighted Laplacian)."""
    n = g.n
    lap = sympy.zeros(n, n)
    for i, j, _ in g.edges:
        lap[i, j] -= 1
        lap[j, i] -= 1
        lap[i, i] += 1
        lap[j, j] += 1
    return int(lap[1:, 1:].det()) if n > 1 else 1


def brute_transport(cost, supply, demand):
    """Exact optimum by enumerating basic feasible solutions.

    A basis is a spanning tree of the complete bipartite graph on the
    active supply and demand nodes; its flow is found by peeling leaves.
    """
    src = [i for i, v in enumerate(supply) if v]
    dst = [j for j, v in enumerate(demand) if v]
    if not src:
        return F(0)
    p, q = len(src), len(dst)
    cells = [(a, b) for a in range(p) for b in range(q)]
    best = None
    for basis in itertools.combinations(cells, p + q - 1):
        parent = list(range(p + q))

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        acyclic = True
        for a, b in basis:
            ra, rb = find(a), find(p + b)
            if ra == rb:
                acyclic = False
                break
            parent[ra] = rb
        if not acyclic:
            continue
        rest = [F(supply[i]) for i in src] + [F(demand[j]) for j in dst]
        deg = [0] * (p + q)
        for a, b in basis:
            deg[a] += 1
            deg[p + b] += 1
        left = set(basis)
        val, ok = F(0), True
        while left and ok:
            for a, b in left:
                end = a if deg[a] == 1 else p + b if deg[p + b] == 1 else None
                if end is not None:
                    break
            amt = rest[end]
            if amt < 0:
                ok = False
                break
            val += cost[src[a]][dst[b]] * amt
            rest[a] -= amt
            rest[p + b] -= amt
            deg[a] -= 1
            deg[p + b] -= 1
            left.discard((a, b))
        if ok and not any(rest) and (best is None or val < best):
            best = val
    return best


def brute_norm(d, xi):
    return brute_transport(d, [max(v, 0) for v in xi], [max(-v, 0) for v in xi])


def rng_for(seed):
    return random.Random(seed)

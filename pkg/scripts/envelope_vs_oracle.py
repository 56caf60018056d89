"""Compare the combinatorial norms against the transport oracle on random graphs.

    python3 scripts/envelope_vs_oracle.py --graphs 200 --max-n 7 --seed 1
"""

import argparse
import random
import time
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from kantograph import WeightedGraph, all_pairs_shortest_paths, graph_norm, kb_norm
from kantograph.envelope import resolve_method


@dataclass
class Config:
    graphs: int = 200
    min_n: int = 3
    max_n: int = 7
    extra_edges: int = 3
    max_weight: int = 5
    seed: int = 1


def random_instance(rng: random.Random, cfg: Config):
    n = rng.randint(cfg.min_n, cfg.max_n)
    edges = {}
    for v in range(1, n):
        edges[(rng.randrange(v), v)] = None
    for _ in range(rng.randint(0, cfg.extra_edges)):
        a, b = sorted(rng.sample(range(n), 2))
        edges[(a, b)] = None
    g = WeightedGraph.from_edges(
        (str(a), str(b), Fraction(rng.randint(1, cfg.max_weight * 2), 2)) for a, b in edges)
    xi = [Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(g.n - 1)]
    xi.append(-sum(xi))
    return g, xi


def main(cfg: Config) -> int:
    rng = random.Random(cfg.seed)
    seen, bad = Counter(), 0
    t_fast = t_oracle = 0.0
    for _ in range(cfg.graphs):
        g, xi = random_instance(rng, cfg)
        t0 = time.perf_counter()
        value, method = graph_norm(g, xi)
        t1 = time.perf_counter()
        ref = kb_norm(all_pairs_shortest_paths(g), xi)
        t2 = time.perf_counter()
        t_fast += t1 - t0
        t_oracle += t2 - t1
        seen[method] += 1
        if value != ref:
            bad += 1
            print(f"MISMATCH {method}: {value} vs {ref} on {g.edges}")
        # the spanning-tree envelope is always an upper bound
        if resolve_method(g) != "envelope":
            env = graph_norm(g, xi, "envelope")[0]
            assert env >= ref, (env, ref)
    print(f"instances: {cfg.graphs}  mismatches: {bad}")
    for m, k in sorted(seen.items()):
        print(f"  {m:<10} {k}")
    print(f"time: combinatorial {t_fast:.3f}s  oracle {t_oracle:.3f}s")
    return 1 if bad else 0


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, default in vars(Config()).items():
        p.add_argument("--" + name.replace("_", "-"), type=int, default=default)
    raise SystemExit(main(Config(**vars(p.parse_args()))))

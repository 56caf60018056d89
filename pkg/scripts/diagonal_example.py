"""Spanning-tree norms of the unit square with one diagonal.

Prints every spanning tree with its norm for a chosen measure and marks the
minimizers; the minimum agrees with the transport oracle.

    python3 scripts/diagonal_example.py --xi 1,0,-1,0
"""

import argparse
from dataclasses import dataclass
from fractions import Fraction

from kantograph import WeightedGraph, all_pairs_shortest_paths, kb_norm, tree_norm
from kantograph.envelope import spanning_trees


@dataclass
class Config:
    xi: str = "1,0,-1,0"


def main(cfg: Config) -> int:
    g = WeightedGraph.from_edges(
        [("1", "2", 1), ("2", "3", 1), ("3", "4", 1), ("4", "1", 1), ("2", "4", 1)])
    xi = [Fraction(v) for v in cfg.xi.split(",")]
    ref = kb_norm(all_pairs_shortest_paths(g), xi)
    rows = []
    for t in spanning_trees(g):
        edges = sorted(f"{g.labels[t.parent[x]]}{g.labels[x]}" for x in t.order[1:])
        rows.append((tree_norm(t, xi).value, " ".join(edges)))
    best = min(v for v, _ in rows)
    for v, e in rows:
        print(f"{e:<12} {str(v):>6}{'  <- min' if v == best else ''}")
    print(f"envelope {best}  oracle {ref}")
    return 0 if best == ref else 1


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--xi", default=Config.xi, help="comma separated masses on 1,2,3,4")
    raise SystemExit(main(Config(**vars(p.parse_args()))))

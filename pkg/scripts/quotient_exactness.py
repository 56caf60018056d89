"""Which endpoint identifications path(n) -> C_{n-1} are exactly non-expansive.

For each n the script reports the exactness check, the close-pair lifting
conditions, and the quotient norm of a few random target measures together
with the source norm of the constructed lift.

    python3 scripts/quotient_exactness.py --max-n 10 --trials 5
"""

import argparse
import random
from dataclasses import dataclass
from fractions import Fraction

from kantograph import (all_pairs_shortest_paths, check_exactly_nonexpansive,
                        check_identification_conditions, quotient_norm)
from kantograph.envelope import endpoint_identification


@dataclass
class Config:
    min_n: int = 4
    max_n: int = 10
    trials: int = 5
    seed: int = 3


def main(cfg: Config) -> int:
    rng = random.Random(cfg.seed)
    status = 0
    print(f"{'n':>3} {'exact':>6} {'(i)':>4} {'(ii)':>5}  counterexample / identity")
    for n in range(cfg.min_n, cfg.max_n + 1):
        qm = endpoint_identification(n)
        dx = all_pairs_shortest_paths(qm.source)
        dy = all_pairs_shortest_paths(qm.target)
        cert = check_exactly_nonexpansive(qm, dx, dy)
        ident = check_identification_conditions(qm, dx, dy)
        if cert.ok:
            note = "exact witnesses exist"
        else:
            u, v = cert.failing_pair
            lab = qm.target.labels
            note = (f"d_C({lab[u]},{lab[v]}) = {dy[u][v]} but every fiber pair "
                    f"is farther apart")
        print(f"{n:>3} {str(cert.ok):>6} {str(ident.condition_i)[0]:>4} "
              f"{str(ident.condition_ii)[0]:>5}  {note}")
        for _ in range(cfg.trials):
            eta = [Fraction(rng.randint(-4, 4)) for _ in range(qm.target.n - 1)]
            eta.append(-sum(eta))
            res = quotient_norm(qm, eta)
            ok = res.value == res.lift_value
            status |= not ok
            print(f"      eta={[str(v) for v in eta]} target {res.value} "
                  f"lift {res.lift_value} ({res.rule})")
    return status


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, default in vars(Config()).items():
        p.add_argument("--" + name.replace("_", "-"), type=int, default=default)
    raise SystemExit(main(Config(**vars(p.parse_args()))))

"""Distance brackets on the interval and solenoid systems, plus the telescope constants."""

import argparse
import random
from dataclasses import dataclass

from soficdyn import metric as M
from soficdyn import symbolic as S
from soficdyn import toral as T

P = S.EventuallyPeriodicPoint


@dataclass
class Config:
    depth: int = 4
    pairs: int = 5
    seed: int = 0


def random_point(rng):
    word = lambda n: tuple(rng.choice("01") for _ in range(n))
    return P("Z", word(rng.randint(0, 3)), word(rng.randint(1, 2)), word(rng.randint(1, 2)))


def main(cfg: Config) -> int:
    g = M.interval_system()
    x, y = P("N", (), ("0",)), P("N", (), ("1",))
    print("interval, 0^inf vs 1^inf")
    for m in range(1, cfg.depth + 1):
        print(f"  m={m}: {M.distance_bracket(g, x, y, m)}")

    sol = M.build_shift_graph_system(S.full_shift("01", "Z"), S.binary_reals_relation("Z"))
    pipe = T.golden_pipeline()
    gold = M.build_shift_graph_system(pipe.X, pipe.K)
    print(f"solenoid: q={sol.q} c={sol.c}; golden: q={gold.q} c={gold.c}")
    rng = random.Random(cfg.seed)
    for _ in range(cfg.pairs):
        x, y = random_point(rng), random_point(rng)
        br = M.distance_bracket(sol, x, y, cfg.depth)
        print(f"  {x} vs {y}: {br}")
    return 0


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--depth", type=int, default=4)
    ap.add_argument("--pairs", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    raise SystemExit(main(Config(**vars(ap.parse_args()))))

"""Build toral kernels for a few hyperbolic matrices and report size, equivalence and expansivity."""

import argparse
import time
from dataclasses import dataclass, field

from soficdyn import symbolic as S
from soficdyn import toral as T


@dataclass
class Config:
    matrices: list = field(default_factory=lambda: ["1,1;1,0", "2,1;1,1", "1,1;1,2"])
    kmax: int = 10


def parse_matrix(text):
    return [[int(v) for v in row.split(",")] for row in text.split(";")]


def main(cfg: Config) -> int:
    for text in cfg.matrices:
        t0 = time.perf_counter()
        spec = T.toral_spec(parse_matrix(text))
        K = T.toral_kernel(spec)
        cover = S.full_shift(spec.alphabet)
        eq = S.equivalence_check(K, cover).is_equivalence
        exp = S.is_expansive(cover, K, k_max=cfg.kmax)
        print(f"[{text}] lambda={float(spec.lam):.6f} digits 0..{spec.n - 1}: "
              f"{K.presentation.n} states, equivalence={eq}, {exp} ({time.perf_counter() - t0:.2f}s)")
    return 0


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("matrices", nargs="*", default=Config().matrices)
    ap.add_argument("--kmax", type=int, default=10)
    raise SystemExit(main(Config(**vars(ap.parse_args()))))

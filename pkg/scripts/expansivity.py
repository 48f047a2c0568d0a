"""Expansivity verdicts for the named sofic pairs, including the circle suspension."""

import argparse
import time
from dataclasses import dataclass

from soficdyn import autospace as A
from soficdyn import symbolic as S
from soficdyn import toral as T


@dataclass
class Config:
    kmax: int = 10
    skip_suspension: bool = False


def main(cfg: Config) -> int:
    pipe = T.golden_pipeline()
    cases = [
        ("golden / K", pipe.X, pipe.K),
        ("full 2-shift / E_Z", S.full_shift("01"), S.binary_reals_relation("Z")),
    ]
    if not cfg.skip_suspension:
        y, z = A.suspension(A.circle())
        cases.append(("circle suspension", y, z))
    for name, y, z in cases:
        t0 = time.perf_counter()
        res = S.is_expansive(y, z, k_max=cfg.kmax)
        print(f"{name}: {type(res).__name__} ({time.perf_counter() - t0:.2f}s)")
        for k, w in enumerate(getattr(res, "witnesses", ()) or (), 1):
            if isinstance(res, S.UnknownWithinBound):
                print(f"  k={k}: witness of length {len(w)}")
    return 0


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--kmax", type=int, default=10)
    ap.add_argument("--skip-suspension", action="store_true")
    raise SystemExit(main(Config(**vars(ap.parse_args()))))

"""Classify (S_beta, K_beta) for a list of d* words and a few quadratic betas."""

import argparse
from dataclasses import dataclass, field

from soficdyn import beta as B
from soficdyn.quadratic import Q


@dataclass
class Config:
    dstars: list = field(default_factory=lambda: ["(1)", "(2)", "(10)", "(110)", "(210)", "2(1)", "1(10)"])
    betas: list = field(default_factory=lambda: ["(1+sqrt(5))/2", "1+sqrt(2)", "(3+sqrt(5))/2"])
    prefix: int = 40


def main(cfg: Config) -> int:
    for text in cfg.dstars:
        rep = B.classify_beta(B.parse_dstar(text))
        print(f"{str(rep.dstar):>12}  beta~{B.beta_from_dstar(rep.dstar):.6f}  {rep.cls.value:<26}"
              f" |S|={rep.shift.n} |K|={rep.kernel.presentation.n}")
    for text in cfg.betas:
        g = B.greedy_dstar(Q.parse(text), 20, max_steps=cfg.prefix)
        cls = B.classify_beta(g.dstar).cls.value if g.dstar else "unknown (no repeat found)"
        print(f"{text:>14}: d(1) = {''.join(map(str, g.digits))}...  d* = {g.dstar}  {cls}")
    return 0


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--dstars", nargs="*", default=Config().dstars)
    ap.add_argument("--betas", nargs="*", default=Config().betas)
    ap.add_argument("--prefix", type=int, default=40)
    raise SystemExit(main(Config(**vars(ap.parse_args()))))

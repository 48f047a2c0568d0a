"""Composition table of L, R, R∘R and L∘R over the golden mean shift."""

import argparse
from dataclasses import dataclass

from soficdyn import symbolic as S
from soficdyn import toral as T


@dataclass
class Config:
    states: bool = False  # also print state counts of each relation


def main(cfg: Config) -> int:
    X, rels = T.golden_table_relations()
    tb = T.multiplication_table(rels, X)
    names = tb.names
    width = max(map(len, names)) + 2
    print("o".ljust(width) + "".join(n.ljust(width) for n in names))
    for a in names:
        print(a.ljust(width) + "".join(tb.entries[(a, b)].ljust(width) for b in names))
    if cfg.states:
        for n in names:
            print(f"{n}: {tb.relations[n].presentation.n} states, SFT={S.is_sft(tb.relations[n].presentation)}")
    return 0


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--states", action="store_true")
    raise SystemExit(main(Config(**vars(ap.parse_args()))))

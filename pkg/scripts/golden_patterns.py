"""Print the minimal forbidden patterns of the golden toral kernel and diff them against the transcription."""

import argparse
import time
from dataclasses import dataclass
from pathlib import Path

from soficdyn import toral as T

ROOT = Path(__file__).resolve().parents[1]


@dataclass
class Config:
    transcription: Path = ROOT / "tests" / "data" / "golden_patterns.txt"
    show: bool = False


def main(cfg: Config) -> int:
    t0 = time.perf_counter()
    pipe = T.golden_pipeline()
    got = [T.pattern_rows(w) for w in pipe.patterns]
    want = [tuple(l.split()) for l in cfg.transcription.read_text().splitlines()
            if l.strip() and not l.startswith("#")]
    if cfg.show:
        for top, bot in got:
            print(f"{top}\n{bot}\n")
    prof = ", ".join(f"width {k}: {v}" for k, v in pipe.profile().items())
    print(f"{len(got)} patterns ({prof}) in {time.perf_counter() - t0:.2f}s")
    missing, extra = set(want) - set(got), set(got) - set(want)
    print(f"transcription: {len(want)} entries; missing {len(missing)}, extra {len(extra)}")
    return 0 if not missing and not extra else 1


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--transcription", type=Path, default=Config.transcription)
    ap.add_argument("--show", action="store_true")
    raise SystemExit(main(Config(**vars(ap.parse_args()))))

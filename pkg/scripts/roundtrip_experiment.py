"""Scramble normal forms with random basis changes and classify them back.

Reports recovery per class kind and per field, and the wall time.
"""

import argparse
import json
import time
from collections import Counter
from dataclasses import asdict, dataclass
from pathlib import Path

from torlink.classify import classify
from torlink.errors import TorlinkError
from torlink.gen import normal_form_table, scramble
from torlink.rng import derive_seed
from torlink.verify import random_roundtrip_case


@dataclass
class Config:
    trials: int = 500
    seed: int = 0
    out: Path = Path(__file__).resolve().parent.parent / "data" / "results" / "roundtrip.json"


def main(cfg: Config):
    t = time.perf_counter()
    total, hits, misses = Counter(), Counter(), []
    for k in range(cfg.trials):
        s = derive_seed(cfg.seed, k)
        lab, m, n, F = random_roundtrip_case(s)
        S, _ = scramble(normal_form_table(lab, m, n, F), s)
        try:
            got = classify(S, s).label
        except TorlinkError as e:
            got = repr(e)
        key = (lab.kind, str(F))
        total[key] += 1
        if got == lab:
            hits[key] += 1
        else:
            misses.append({"seed": s, "label": str(lab), "m": m, "n": n, "field": str(F), "got": str(got)})
    elapsed = time.perf_counter() - t
    for key in sorted(total):
        print(f"{key[0]:>2} over {key[1]:<5} {hits[key]:4d}/{total[key]}")
    print(f"recovered {sum(hits.values())}/{cfg.trials} in {elapsed:.1f}s")
    cfg.out.parent.mkdir(parents=True, exist_ok=True)
    cfg.out.write_text(json.dumps({
        "config": {**asdict(cfg), "out": str(cfg.out)},
        "per_class": {f"{k}/{f}": [hits[(k, f)], total[(k, f)]] for k, f in sorted(total)},
        "misses": misses,
        "seconds": round(elapsed, 2),
    }, indent=1))
    return not misses


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=Config.trials)
    ap.add_argument("--seed", type=int, default=Config.seed)
    ap.add_argument("--out", type=Path, default=Config.out)
    a = ap.parse_args()
    raise SystemExit(0 if main(Config(a.trials, a.seed, a.out)) else 3)

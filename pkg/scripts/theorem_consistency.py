"""Classify many random artinian ideals and check each class against the
admissibility predicates.  Prints the observed classes per (m, n) and any
violation (there should be none), plus the G advisories that fired.
"""

import argparse
import time
from collections import defaultdict
from dataclasses import dataclass

from torlink.classify import classify
from torlink.errors import TorlinkError
from torlink.koszul import koszul_homology
from torlink.theorems import admissible_class
from torlink.verify import random_corpus


@dataclass
class Config:
    ideals: int = 200
    seed: int = 0


def main(cfg: Config):
    t = time.perf_counter()
    seen = defaultdict(set)
    bad, advisories, errors = [], [], []
    for I in random_corpus(cfg.ideals, cfg.seed):
        try:
            c = classify(koszul_homology(I).algebra, cfg.seed)
        except TorlinkError as e:
            errors.append((str(I), repr(e)))
            continue
        seen[c.m, c.n].add(str(c.label))
        ok, notes = admissible_class(c.label, c.m, c.n)
        if not ok:
            bad.append((str(I), c.summary()))
        advisories += [(str(I), a) for a in notes]
    for mn in sorted(seen):
        print(f"m={mn[0]} n={mn[1]}: " + ", ".join(sorted(seen[mn])))
    for ideal, summary in bad:
        print(f"VIOLATION {summary}: {ideal}")
    for ideal, a in advisories:
        print(f"advisory {a}: {ideal}")
    for ideal, e in errors:
        print(f"error {e}: {ideal}")
    print(f"{cfg.ideals} ideals, {len(bad)} violations, {len(errors)} errors, {time.perf_counter() - t:.1f}s")
    return not bad and not errors


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--ideals", type=int, default=Config.ideals)
    ap.add_argument("--seed", type=int, default=Config.seed)
    a = ap.parse_args()
    raise SystemExit(0 if main(Config(a.ideals, a.seed)) else 3)

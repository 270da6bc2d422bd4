"""Link ideals end to end in every regime that applies, then follow the
linkage chain of each corpus ideal down to C(3) or H(0,0).

Random ideals come from random_artinian_ideal; the corpus ships with the
package.  Each link records the sequence, both classes and the clause verdict.
"""

import argparse
import json
import time
from collections import Counter
from dataclasses import dataclass
from pathlib import Path

from torlink.classify import classify
from torlink.errors import NormalizationFailed, TorlinkError
from torlink.koszul import koszul_homology
from torlink.linkage import REGIMES, is_terminal, link_chain, link_step, regime_applies
from torlink.theorems import total_betti
from torlink.verify import corpus_ideals, random_corpus


@dataclass
class Config:
    random_ideals: int = 60
    seed: int = 0
    chains: bool = True
    out: Path = Path(__file__).resolve().parent.parent / "data" / "results" / "linkage.json"


def link_all(ideals, seed):
    rows, tally, missing = [], Counter(), Counter()
    for I in ideals:
        try:
            K = koszul_homology(I)
            c = classify(K.algebra, seed)
        except TorlinkError as e:
            rows.append({"ideal": I.name, "error": repr(e)})
            continue
        for R in REGIMES:
            if not regime_applies(c.label, c.m, c.n, R):
                continue
            try:
                step = link_step(I, R, seed=seed, K=K, cls=c)
            except NormalizationFailed:
                missing[R] += 1
                continue
            tally[R, step.verdict.ok] += 1
            rows.append({
                "ideal": I.name or str(I),
                "regime": R,
                "before": step.before.to_json(),
                "after": step.after.to_json(),
                "sequence": [str(f) for f in step.sequence],
                "failures": step.verdict.failures(),
            })
    return rows, tally, missing


def chains(ideals, seed):
    out = []
    for I in ideals:
        c = classify(koszul_homology(I).algebra, seed)
        if is_terminal(c.label):
            continue
        steps = link_chain(I, seed)
        path = [c] + [s.after for s in steps]
        out.append({
            "ideal": I.name,
            "path": [f"{x.label} ({x.m},{x.n})" for x in path],
            "total_betti": [total_betti(x.m, x.n) for x in path],
            "regimes": [s.regime for s in steps],
            "terminal": bool(steps) and is_terminal(steps[-1].after.label),
        })
        print(f"{I.name:8s} " + " -> ".join(out[-1]["path"]))
    return out


def main(cfg: Config):
    t = time.perf_counter()
    ideals = corpus_ideals() + random_corpus(cfg.random_ideals, cfg.seed)
    rows, tally, missing = link_all(ideals, cfg.seed)
    for R in REGIMES:
        print(f"{R:6s} pass {tally[R, True]:3d}  fail {tally[R, False]:3d}  unrealized {missing[R]:3d}")
    result = {"links": rows}
    if cfg.chains:
        result["chains"] = chains(corpus_ideals(), cfg.seed)
    result["seconds"] = round(time.perf_counter() - t, 1)
    cfg.out.parent.mkdir(parents=True, exist_ok=True)
    cfg.out.write_text(json.dumps(result, indent=1))
    print(f"wrote {cfg.out} in {result['seconds']}s")
    return sum(v for (R, ok), v in tally.items() if not ok) == 0


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--random-ideals", type=int, default=Config.random_ideals)
    ap.add_argument("--seed", type=int, default=Config.seed)
    ap.add_argument("--no-chains", action="store_true")
    ap.add_argument("--out", type=Path, default=Config.out)
    a = ap.parse_args()
    raise SystemExit(0 if main(Config(a.random_ideals, a.seed, not a.no_chains, a.out)) else 3)

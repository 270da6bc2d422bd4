"""Print the admissible-class grids for a range of (m, n) and write them as CSV.

With the defaults this covers 4 <= m <= 7 and 2 <= n <= 6 plus the
Gorenstein column n = 1.
"""

import argparse
import time
from dataclasses import dataclass
from pathlib import Path

from torlink.theorems import format_grid_csv, format_grid_text, grid, h_cells


@dataclass
class Config:
    m_values: tuple = (4, 5, 6, 7)
    n_values: tuple = (1, 2, 3, 4, 5, 6)
    out: Path = Path(__file__).resolve().parent.parent / "data" / "results" / "grids.csv"
    show: bool = True


def main(cfg: Config):
    t = time.perf_counter()
    chunks = []
    for m in cfg.m_values:
        for n in cfg.n_values:
            if cfg.show:
                print(format_grid_text(m, n))
                print()
            body = format_grid_csv(m, n)
            chunks.append(body if not chunks else body.split("\n", 1)[1])
    cfg.out.parent.mkdir(parents=True, exist_ok=True)
    cfg.out.write_text("".join(chunks))
    count = len(h_cells(grid(7, 5)))
    print(f"m=7 n=5: {count} H classes of 42 cells; wrote {cfg.out} in {time.perf_counter() - t:.2f}s")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--m", type=int, nargs="+", default=list(Config.m_values))
    ap.add_argument("--n", type=int, nargs="+", default=list(Config.n_values))
    ap.add_argument("--out", type=Path, default=Config.out)
    ap.add_argument("--quiet", action="store_true")
    a = ap.parse_args()
    main(Config(tuple(a.m), tuple(a.n), a.out, not a.quiet))

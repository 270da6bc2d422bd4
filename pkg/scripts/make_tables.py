"""Write example multiplication tables to data/tables.

Normal forms are stored as is; the scrambled ones are random basis changes
of a normal form, so classify has something to undo.
"""

import argparse
from dataclasses import dataclass
from pathlib import Path

from torlink.exactla import GF, QQ
from torlink.gen import normal_form_table, scramble
from torlink.labels import parse_label
from torlink.toralg import write_table


@dataclass
class Config:
    out: Path = Path(__file__).resolve().parent.parent / "data" / "tables"
    seed: int = 7
    normal: tuple = (("C3", 3, 1), ("B", 5, 2), ("T", 4, 3), ("H(0,0)", 5, 2), ("G(5)", 5, 1), ("H(1,2)", 6, 2))
    scrambled: tuple = (("T", 4, 4), ("H(3,0)", 4, 4), ("H(2,1)", 6, 3), ("G(3)", 7, 3), ("B", 7, 4))


NAMES = {"H(0,0)": "zero"}


def stem(label, m, n):
    base = NAMES.get(label, label.replace("(", "").replace(")", "").replace(",", ""))
    return f"{base}_{m}_{n}"


def main(cfg: Config):
    cfg.out.mkdir(parents=True, exist_ok=True)
    for label, m, n in cfg.normal:
        path = cfg.out / f"{stem(label, m, n)}.tor"
        write_table(normal_form_table(parse_label(label), m, n, QQ), path, {"label": label, "form": "normal"})
        print(path.name)
    for k, (label, m, n) in enumerate(cfg.scrambled):
        F = QQ if k % 2 == 0 else GF(101)
        A, _ = scramble(normal_form_table(parse_label(label), m, n, F), cfg.seed + k)
        path = cfg.out / f"scrambled_{stem(label, m, n)}.tor"
        write_table(A, path, {"label": label, "form": "scrambled", "seed": cfg.seed + k})
        print(path.name)


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=Config.out)
    ap.add_argument("--seed", type=int, default=Config.seed)
    a = ap.parse_args()
    main(Config(out=a.out, seed=a.seed))

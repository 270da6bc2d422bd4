"""Which classes can occur for given first derivation m and type n.

The predicates encode the known restrictions for grade 3 perfect ideals.
Conjectured restrictions on class G are reported as advisories and never
make a class inadmissible.
"""

from __future__ import annotations

import csv
import io
import json

from .labels import B, C3, G, H, T, ClassLabel


def admissible_H(m: int, n: int, p: int, q: int) -> bool:
    """Bounds on (p, q) for class H(p, q) with first derivation m and type n."""
    if m < 4 or n < 2 or p < 0 or q < 0:
        return False
    if not (p <= m - 1 and q <= n and p <= n + 1 and q <= m - 2):
        return False
    extremal = (p == n + 1, q == m - 2, p == m - 1 and q == n)
    if any(extremal):
        return all(extremal)
    if p > n - 1 or q > m - 4:
        return False
    if p == n - 1 and (q - (m - 4)) % 2:
        return False
    if q == m - 4 and (p - (n - 1)) % 2:
        return False
    return True


def _h_refined(m, n, p, q):
    """admissible_H plus the small-m and small-n restrictions."""
    if not admissible_H(m, n, p, q):
        return False
    if m == 4:
        if n == 2:
            return (p, q) == (3, 2)
        if n % 2 == 0:
            return (p, q) == (3, 0)
        return False
    if n == 2 and p >= 1:
        return (p, q) == (1, 2) and m % 2 == 0
    if n == 3 and p == 3:
        return False
    return True


def admissible_class(label: ClassLabel, m: int, n: int):
    """(admissible, advisories) for the class with first derivation m and type n."""
    k = label.kind
    notes = []
    if m < 3 or n < 1:
        return False, notes
    if k == "C3":
        return (m, n) == (3, 1), notes
    if (m, n) == (3, 1) or m == 3:
        return False, notes
    if k == "H":
        return _h_refined(m, n, label.p, label.q), notes
    if k == "B":
        ok = m >= 5 and n >= 2
        if m == 5:
            ok = ok and n == 2
        if n == 2:
            ok = ok and m % 2 == 1
        return ok, notes
    if k == "T":
        if m == 4:
            return n >= 3 and n % 2 == 1, notes
        return n >= 4, notes
    if k == "G":
        r = label.r
        if n == 1:
            return r == m and m >= 5 and m % 2 == 1, notes
        if not (m >= 6 and 2 <= r <= m - 2):
            return False, notes
        if m == 6 and n >= 3 and r != 2:
            return False, notes
        if n == 2 and not (r <= m - 5 or r == m - 3):
            notes.append(f"conjecturally G({r}) needs r <= m-5 or r = m-3 when n = 2")
        if n >= 3 and r > m - 4:
            notes.append(f"conjecturally G({r}) needs r <= m-4 when n >= 3")
        return True, notes
    return False, notes


def candidate_labels(m: int, n: int):
    """Every label whose normal form could fit (m, n), admissible or not."""
    out = [C3(), B(), T()]
    out += [G(r) for r in range(2, m + 1)]
    out += [H(p, q) for q in range(n + 1) for p in range(m)]
    return out


def grid(m: int, n: int, with_advisories: bool = False):
    """Set of admissible labels for (m, n); optionally a dict label -> advisories."""
    if m < 3 or n < 1:
        raise ValueError("need m >= 3 and n >= 1")
    found = {}
    for label in candidate_labels(m, n):
        ok, notes = admissible_class(label, m, n)
        if ok:
            found[label] = notes
    return found if with_advisories else set(found)


def h_cells(labels):
    return sorted((lab.p, lab.q) for lab in labels if lab.kind == "H")


def total_betti(m: int, n: int) -> int:
    """1 + m + (m+n-1) + n."""
    if m < 3 or n < 1:
        raise ValueError("need m >= 3 and n >= 1")
    return 2 * (m + n)


def _sort_key(lab: ClassLabel):
    order = {"C3": 0, "B": 1, "G": 2, "H": 3, "T": 4}[lab.kind]
    return (order, lab.q, lab.p, lab.r)


def format_grid_text(m: int, n: int, labels=None) -> str:
    """p along columns, q along rows with q = 0 at the bottom; H cells marked."""
    labels = grid(m, n) if labels is None else labels
    cells = set(h_cells(labels))
    width = 7
    lines = [f"m={m} n={n}"]
    for q in range(n, -1, -1):
        row = [f"{f'H({p},{q})' if (p, q) in cells else '.':^{width}}" for p in range(m)]
        lines.append(f"q={q:<2}|" + "".join(row))
    lines.append("    +" + "-" * (width * m))
    lines.append("     " + "".join(f"{f'p={p}':^{width}}" for p in range(m)))
    others = [str(lab) for lab in sorted(labels, key=_sort_key) if lab.kind != "H"]
    lines.append("other classes: " + (", ".join(others) if others else "none"))
    return "\n".join(lines)


def format_grid_csv(m: int, n: int, labels=None) -> str:
    labels = grid(m, n) if labels is None else labels
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["m", "n", "label"])
    for lab in sorted(labels, key=_sort_key):
        w.writerow([m, n, str(lab)])
    return buf.getvalue()


def grid_records(m: int, n: int):
    found = grid(m, n, with_advisories=True)
    out = []
    for lab in sorted(found, key=_sort_key):
        p, q, r = lab.pqr()
        out.append({"label": str(lab), "kind": lab.kind, "m": m, "n": n, "p": p, "q": q, "r": r,
                    "advisories": found[lab]})
    return out


def format_grid_json(m: int, n: int) -> str:
    return json.dumps(grid_records(m, n), indent=2)

"""Class labels: B, C(3), G(r), H(p,q), T."""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ParseError

KINDS = ("B", "C3", "G", "H", "T")


@dataclass(frozen=True, order=True)
class ClassLabel:
    kind: str
    p: int = -1
    q: int = -1
    r: int = -1

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown class {self.kind!r}")
        if self.kind == "G" and self.r < 2:
            raise ValueError("G(r) needs r >= 2")
        if self.kind == "H" and (self.p < 0 or self.q < 0):
            raise ValueError("H(p,q) needs p, q >= 0")

    def __str__(self):
        if self.kind == "C3":
            return "C(3)"
        if self.kind == "G":
            return f"G({self.r})"
        if self.kind == "H":
            return f"H({self.p},{self.q})"
        return self.kind

    def __repr__(self):
        return f"ClassLabel({self})"

    def pqr(self, m=None):
        """(p, q, r) of the normal form; r of H is q."""
        return {
            "B": (1, 1, 2),
            "C3": (3, 1, 3),
            "T": (3, 0, 0),
        }.get(self.kind) or ((0, 1, self.r) if self.kind == "G" else (self.p, self.q, self.q))


def B():
    return ClassLabel("B")


def C3():
    return ClassLabel("C3")


def T():
    return ClassLabel("T")


def G(r):
    return ClassLabel("G", r=r)


def H(p, q):
    return ClassLabel("H", p=p, q=q)


_PAT = re.compile(r"^\s*(B|T|C\s*\(?\s*3\s*\)?|G\s*\(\s*(\d+)\s*\)|H\s*\(\s*(\d+)\s*,\s*(\d+)\s*\))\s*$")


def parse_label(text: str) -> ClassLabel:
    m = _PAT.match(text)
    if not m:
        raise ParseError(f"bad class label {text!r}")
    head = m.group(1)[0]
    try:
        if head == "B":
            return B()
        if head == "T":
            return T()
        if head == "C":
            return C3()
        if head == "G":
            return G(int(m.group(2)))
        return H(int(m.group(3)), int(m.group(4)))
    except ValueError as exc:
        raise ParseError(str(exc)) from exc

"""Sparse polynomials in k[x, y, z], the ideal file format, and a small parser.

Terms live in a dict mapping exponent tuples to nonzero field scalars.  The
raw ``terms_*`` helpers work for any number of variables; the Groebner code
uses them with a fourth (elimination) variable.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from pathlib import Path

from .errors import FieldMismatch, ParseError
from .exactla import QQ, Field, PrimeField, field_from_name

VARS = ("x", "y", "z")


def degrevlex_key(e):
    """Sort key: larger key means larger monomial in degrevlex with x > y > z."""
    return (sum(e),) + tuple(-a for a in reversed(e))


def monomials_of_degree(d: int, nvars: int = 3):
    """Exponent tuples of total degree d, descending in degrevlex."""
    if d < 0:
        return []
    out = []

    def rec(prefix, left, k):
        if k == 1:
            out.append(tuple(prefix) + (left,))
            return
        for a in range(left, -1, -1):
            rec(prefix + [a], left - a, k - 1)

    rec([], d, nvars)
    out.sort(key=degrevlex_key, reverse=True)
    return out


# ---------------------------------------------------------------------------
# raw term-dict arithmetic


def terms_add(F: Field, a: dict, b: dict, scale=None) -> dict:
    """a + scale*b."""
    out = dict(a)
    zero = F.zero
    for e, c in b.items():
        if scale is not None:
            c = F.mul(scale, c)
        v = F.add(out.get(e, zero), c)
        if v == zero:
            out.pop(e, None)
        else:
            out[e] = v
    return out


def terms_scale(F: Field, a: dict, c) -> dict:
    if c == F.zero:
        return {}
    return {e: F.mul(c, v) for e, v in a.items()}


def terms_shift(F: Field, a: dict, mono, c) -> dict:
    """c * x^mono * a."""
    return {tuple(i + j for i, j in zip(e, mono)): F.mul(c, v) for e, v in a.items()}


def terms_mul(F: Field, a: dict, b: dict) -> dict:
    out = {}
    zero = F.zero
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = tuple(i + j for i, j in zip(e1, e2))
            v = F.add(out.get(e, zero), F.mul(c1, c2))
            if v == zero:
                out.pop(e, None)
            else:
                out[e] = v
    return out


# ---------------------------------------------------------------------------


class Polynomial:
    __slots__ = ("field", "terms")

    def __init__(self, field: Field, terms=None):
        self.field = field
        zero = field.zero
        self.terms = {}
        if terms:
            for e, c in terms.items():
                c = field(c)
                if c != zero:
                    self.terms[tuple(e)] = c

    @classmethod
    def _raw(cls, field, terms):
        p = cls.__new__(cls)
        p.field = field
        p.terms = terms
        return p

    @classmethod
    def constant(cls, field, c):
        return cls(field, {(0, 0, 0): c})

    @classmethod
    def variable(cls, field, i):
        e = [0, 0, 0]
        e[i] = 1
        return cls(field, {tuple(e): 1})

    @classmethod
    def monomial(cls, field, exps, c=1):
        return cls(field, {tuple(exps): c})

    def _check(self, other):
        if self.field != other.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    def _lift(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return Polynomial.constant(self.field, other)

    def __add__(self, other):
        other = self._lift(other)
        return Polynomial._raw(self.field, terms_add(self.field, self.terms, other.terms))

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return Polynomial._raw(F, {e: F.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        return Polynomial._raw(
            self.field, terms_add(self.field, self.terms, other.terms, self.field.neg(self.field.one))
        )

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            return Polynomial._raw(self.field, terms_mul(self.field, self.terms, other.terms))
        return Polynomial._raw(self.field, terms_scale(self.field, self.terms, self.field(other)))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = Polynomial.constant(self.field, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.field == other.field and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(self.field, other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self):
        return not self.terms

    def degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self):
        return len({sum(e) for e in self.terms}) <= 1

    def homogeneous_part(self, d):
        return Polynomial._raw(self.field, {e: c for e, c in self.terms.items() if sum(e) == d})

    def leading_monomial(self):
        return max(self.terms, key=degrevlex_key)

    def leading_coefficient(self):
        return self.terms[self.leading_monomial()]

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: degrevlex_key(t[0]), reverse=True)

    def monic(self):
        if not self.terms:
            return self
        return self * self.field.inv(self.leading_coefficient())

    def __repr__(self):
        return f"Polynomial({self.field!r}, {self})"

    def __str__(self):
        return format_polynomial(self)


def _coeff_str(F: Field, c):
    if isinstance(F, PrimeField):
        c = F.symmetric(c)
    return str(c)


def format_polynomial(p: Polynomial) -> str:
    if p.is_zero():
        return "0"
    F = p.field
    parts = []
    for e, c in p.sorted_terms():
        mono = "*".join(
            v if a == 1 else f"{v}^{a}" for v, a in zip(VARS, e) if a > 0
        )
        cs = _coeff_str(F, c)
        neg = cs.startswith("-")
        mag = cs[1:] if neg else cs
        if mono:
            body = mono if mag == "1" else f"{mag}*{mono}"
        else:
            body = mag
        if "/" in mag and mono:
            body = f"{mag}*{mono}"
        parts.append(("-" if neg else "+", body))
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


# ---------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(r"\s*(?:(\d+)|([xyz])|(\*\*|[-+*/^()]))")


class _Parser:
    def __init__(self, text, field, line=None, col0=0):
        self.text = text
        self.field = field
        self.line = line
        self.col0 = col0
        self.tokens = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            m = _TOKEN.match(text, pos)
            if not m:
                raise ParseError(f"unexpected character {text[pos:].lstrip()[:1]!r}", line, col0 + pos + 1)
            col = m.start() + (len(m.group(0)) - len(m.group(0).lstrip())) + 1
            if m.group(1):
                self.tokens.append(("num", int(m.group(1)), col))
            elif m.group(2):
                self.tokens.append(("var", VARS.index(m.group(2)), col))
            else:
                op = m.group(3)
                self.tokens.append(("op", "^" if op == "**" else op, col))
            pos = m.end()
        self.i = 0

    def err(self, msg):
        col = self.tokens[self.i][2] if self.i < len(self.tokens) else len(self.text) + 1
        raise ParseError(msg, self.line, self.col0 + col)

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None, None)

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def parse(self):
        if not self.tokens:
            self.err("empty polynomial")
        p = self.expr()
        if self.i != len(self.tokens):
            self.err("trailing input")
        return p

    def expr(self):
        kind, val, _ = self.peek()
        sign = 1
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                t = self.term()
                acc = acc + t if val == "+" else acc - t
            else:
                return acc

    def term(self):
        acc = self.power()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val == "*":
                self.take()
                acc = acc * self.power()
            elif kind == "op" and val == "/":
                self.take()
                k, v, _ = self.take()
                if k != "num":
                    self.i -= 1
                    self.err("only division by integer literals is supported")
                if self.field(v) == self.field.zero:
                    self.i -= 1
                    self.err("division by zero in the coefficient field")
                acc = acc * self.field.inv(self.field(v))
            elif kind in ("num", "var") or (kind == "op" and val == "("):
                acc = acc * self.power()  # implicit product such as 2x
            else:
                return acc

    def power(self):
        base = self.atom()
        kind, val, _ = self.peek()
        if kind == "op" and val == "^":
            self.take()
            k, v, _ = self.take()
            if k != "num":
                self.i -= 1
                self.err("exponent must be a nonnegative integer")
            return base ** v
        return base

    def atom(self):
        kind, val, _ = self.peek()
        F = self.field
        if kind == "num":
            self.take()
            return Polynomial.constant(F, val)
        if kind == "var":
            self.take()
            return Polynomial.variable(F, val)
        if kind == "op" and val == "(":
            self.take()
            p = self.expr()
            k, v, _ = self.peek()
            if not (k == "op" and v == ")"):
                self.err("expected ')'")
            self.take()
            return p
        self.err("expected a number, variable or '('")


def parse_polynomial(text: str, field: Field = QQ, line=None, col0=0) -> Polynomial:
    return _Parser(text, field, line, col0).parse()


# ---------------------------------------------------------------------------


@dataclass
class IdealSpec:
    """Generators of an ideal in k[x,y,z] (homogeneous or not)."""

    field: Field
    generators: list = dc_field(default_factory=list)
    name: str = ""

    def __post_init__(self):
        for g in self.generators:
            if g.field != self.field:
                raise FieldMismatch("generator over a different field")

    def is_homogeneous(self):
        return all(g.is_homogeneous() for g in self.generators)

    def nonzero(self):
        return [g for g in self.generators if not g.is_zero()]

    def __str__(self):
        return "(" + ", ".join(str(g) for g in self.generators) + ")"


_RING = re.compile(r"^ring\s+(Q|F\d+|Fp)\s*\[\s*x\s*,\s*y\s*,\s*z\s*\]\s*$")


def _split_top_level(s: str):
    """Split on commas outside parentheses, keeping start offsets."""
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            parts.append((start, s[start:i]))
            start = i + 1
    parts.append((start, s[start:]))
    return parts


def parse_ideal(text: str, name: str = "", field=None) -> IdealSpec:
    """Parse the ideal file format: a ``ring`` line then ``ideal:`` generators.

    ``ring Fp[x,y,z]`` means the default prime.  A ``field`` argument
    overrides the ring line.
    """
    override = field
    field = None
    gens = []
    in_ideal = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        stripped = line.strip()
        if not in_ideal and stripped.startswith("ring"):
            m = _RING.match(stripped)
            if not m:
                raise ParseError("ring line must read 'ring Q[x,y,z]' or 'ring F<p>[x,y,z]'", lineno, 1)
            try:
                field = field_from_name(m.group(1))
            except ValueError as exc:
                raise ParseError(str(exc), lineno, 6) from exc
            continue
        offset = len(line) - len(line.lstrip())
        if not in_ideal:
            if not stripped.startswith("ideal:"):
                raise ParseError("expected 'ring ...' or 'ideal:'", lineno, offset + 1)
            if field is None:
                raise ParseError("'ideal:' before the ring declaration", lineno, offset + 1)
            if override is not None:
                field = override
            in_ideal = True
            offset = line.index("ideal:") + len("ideal:")
            line = line[offset:]
        for start, chunk in _split_top_level(line):
            if not chunk.strip():
                continue
            gens.append(parse_polynomial(chunk, field, lineno, offset + start))
    if field is None:
        raise ParseError("missing ring declaration")
    if not in_ideal:
        raise ParseError("missing 'ideal:' section")
    if not gens:
        raise ParseError("ideal has no generators")
    return IdealSpec(field, gens, name)


def read_ideal(path, field=None) -> IdealSpec:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        from .errors import InputError

        raise InputError(f"cannot read {path}: {exc}") from exc
    return parse_ideal(text, name=path.stem, field=field)


def format_ideal(ideal: IdealSpec) -> str:
    lines = []
    if ideal.name:
        lines.append(f"# {ideal.name}")
    lines.append(f"ring {ideal.field.name}[x,y,z]")
    lines.append("ideal: " + ", ".join(str(g) for g in ideal.generators))
    return "\n".join(lines) + "\n"

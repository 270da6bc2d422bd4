"""Exact linear algebra over Q and prime fields.

Scalars are plain Python values: ``fractions.Fraction`` over Q and ``int`` in
``range(p)`` over F_p.  A ``Field`` object carries the arithmetic, so the same
elimination code serves both.  Row reduction is deterministic: leftmost pivot
column, first row with a nonzero entry in it.
"""

from __future__ import annotations

import os
from fractions import Fraction
from functools import lru_cache

from .errors import FieldMismatch, ParseError, SingularMatrix

DEFAULT_PRIME = 101


class Field:
    name = "?"
    characteristic = 0

    def __call__(self, x):
        raise NotImplementedError

    def __repr__(self):
        return self.name

    zero = None
    one = None

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def to_json(self, a):
        raise NotImplementedError

    def spec(self):
        """JSON description used by the table file format."""
        raise NotImplementedError


class Rationals(Field):
    name = "Q"
    characteristic = 0
    zero = Fraction(0)
    one = Fraction(1)

    def __call__(self, x):
        if type(x) is Fraction:
            return x
        if isinstance(x, str):
            try:
                return Fraction(x.strip())
            except (ValueError, ZeroDivisionError) as exc:
                raise ParseError(f"bad rational literal {x!r}") from exc
        if isinstance(x, bool):
            return Fraction(int(x))
        return Fraction(x)

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def to_json(self, a):
        return a.numerator if a.denominator == 1 else f"{a.numerator}/{a.denominator}"

    def spec(self):
        return {"type": "Q"}


class PrimeField(Field):
    def __init__(self, p: int):
        if p < 2 or not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.name = f"F{p}"
        self.zero = 0
        self.one = 1

    def __call__(self, x):
        p = self.p
        if type(x) is int or isinstance(x, int):
            return x % p
        if isinstance(x, str):
            x = Rationals()(x)
        if isinstance(x, Fraction):
            den = x.denominator % p
            if den == 0:
                raise ZeroDivisionError(f"denominator divisible by {p}")
            return x.numerator * pow(den, -1, p) % p
        raise TypeError(f"cannot coerce {x!r} into {self.name}")

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def to_json(self, a):
        return int(a)

    def spec(self):
        return {"type": "Fp", "p": self.p}

    def symmetric(self, a):
        """Representative in (-p/2, p/2], handy for printing."""
        return a - self.p if a > self.p // 2 else a


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


QQ = Rationals()


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def default_prime() -> int:
    raw = os.environ.get("TORLINK_FIELD", "").strip()
    if not raw or raw.upper() == "Q":
        return DEFAULT_PRIME
    return int(raw.lstrip("Ff"))


def default_field() -> Field:
    """Field used by randomized drivers; ``TORLINK_FIELD`` may be Q or F<p>."""
    raw = os.environ.get("TORLINK_FIELD", "").strip()
    if raw.upper() == "Q":
        return QQ
    return GF(default_prime())


def field_from_name(name: str) -> Field:
    s = name.strip()
    if s in ("Q", "QQ"):
        return QQ
    if s in ("Fp", "F_p"):
        return GF(default_prime())
    body = s[1:] if s[:1] in "Ff" else s
    if body.startswith("_"):
        body = body[1:]
    try:
        return GF(int(body))
    except ValueError as exc:
        raise ParseError(f"unknown field {name!r}") from exc


def field_from_spec(spec: dict) -> Field:
    kind = spec.get("type")
    if kind == "Q":
        return QQ
    if kind == "Fp":
        return GF(int(spec["p"]))
    raise ParseError(f"unknown field spec {spec!r}")


# ---------------------------------------------------------------------------
# row reduction on lists of lists


def rref_rows(field: Field, rows, ncols: int):
    """Reduce ``rows`` (list of lists, modified in place) to RREF.

    Pivots are searched only in the first ``ncols`` columns; any further
    columns ride along, which is how augmented systems are handled.
    Returns the list of pivot columns; nonzero rows come first.
    """
    zero = field.zero
    nrows = len(rows)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        src = None
        for i in range(r, nrows):
            if rows[i][c] != zero:
                src = i
                break
        if src is None:
            continue
        rows[r], rows[src] = rows[src], rows[r]
        prow = rows[r]
        piv = prow[c]
        if piv != field.one:
            ip = field.inv(piv)
            prow[:] = [field.mul(ip, x) if x != zero else zero for x in prow]
        nz = [j for j in range(c, len(prow)) if prow[j] != zero]
        for i in range(nrows):
            if i == r:
                continue
            row = rows[i]
            f = row[c]
            if f == zero:
                continue
            for j in nz:
                row[j] = field.sub(row[j], field.mul(f, prow[j]))
        pivots.append(c)
        r += 1
    return pivots


class Matrix:
    """Dense matrix over a ``Field``; entries stored row-major as tuples."""

    __slots__ = ("field", "rows", "nrows", "ncols")

    def __init__(self, field: Field, rows, ncols: int | None = None):
        self.field = field
        self.rows = tuple(tuple(field(x) for x in row) for row in rows)
        # field(x) is cheap for values that are already scalars
        self.nrows = len(self.rows)
        if ncols is None:
            ncols = len(self.rows[0]) if self.rows else 0
        self.ncols = ncols
        for row in self.rows:
            if len(row) != ncols:
                raise ValueError("ragged matrix")

    @classmethod
    def identity(cls, field, n):
        return cls(field, [[1 if i == j else 0 for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, field, nrows, ncols):
        return cls(field, [[0] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def from_columns(cls, field, cols, nrows: int):
        cols = list(cols)
        return cls(field, [[col[i] for col in cols] for i in range(nrows)], len(cols))

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.rows, self.ncols))

    def __repr__(self):
        return f"Matrix({self.field!r}, {[list(r) for r in self.rows]})"

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j):
        return [row[j] for row in self.rows]

    def columns(self):
        return [self.column(j) for j in range(self.ncols)]

    def transpose(self):
        return Matrix.from_columns(self.field, self.rows, self.ncols)

    def __matmul__(self, other):
        if self.field != other.field:
            raise FieldMismatch("matrix product over different fields")
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        F = self.field
        cols = other.columns()
        out = []
        for row in self.rows:
            out.append([_dot(F, row, col) for col in cols])
        return Matrix(F, out, other.ncols)

    def apply(self, v):
        return [_dot(self.field, row, v) for row in self.rows]

    def is_zero(self):
        z = self.field.zero
        return all(x == z for row in self.rows for x in row)


def _dot(F, a, b):
    z = F.zero
    acc = z
    for x, y in zip(a, b):
        if x != z and y != z:
            acc = F.add(acc, F.mul(x, y))
    return acc


def rref(M: Matrix):
    rows = [list(r) for r in M.rows]
    pivots = rref_rows(M.field, rows, M.ncols)
    return Matrix(M.field, rows, M.ncols), pivots


def rank(M: Matrix) -> int:
    return len(rref(M)[1])


def rank_of_vectors(field: Field, vectors, dim: int) -> int:
    rows = [list(v) for v in vectors]
    return len(rref_rows(field, rows, dim))


def kernel_basis(M: Matrix) -> list[list]:
    """Basis of the right kernel, one vector per free column (free var = 1)."""
    F = M.field
    R, pivots = rref(M)
    pivset = set(pivots)
    basis = []
    for free in range(M.ncols):
        if free in pivset:
            continue
        v = [F.zero] * M.ncols
        v[free] = F.one
        for k, pc in enumerate(pivots):
            v[pc] = F.neg(R.rows[k][free])
        basis.append(v)
    return basis


class LinearSolver:
    """Solve ``M x = v`` for many right-hand sides with one reduction.

    The columns of M are row reduced while recording which combination of
    columns produced each reduced vector, so a solve costs O(rank * size).
    The particular solution returned is deterministic; ``solve`` returns
    None when the system is inconsistent.
    """

    def __init__(self, M: Matrix):
        F = self.field = M.field
        self.nrows, self.ncols = M.nrows, M.ncols
        zero, one = F.zero, F.one
        rows = []
        for j in range(M.ncols):
            tag = [zero] * M.ncols
            tag[j] = one
            rows.append([M.rows[i][j] for i in range(M.nrows)] + tag)
        pivots = rref_rows(F, rows, M.nrows)
        self.pivots = pivots
        self.rank = len(pivots)
        self.reduced = [row[: M.nrows] for row in rows[: self.rank]]
        self.combos = [row[M.nrows:] for row in rows[: self.rank]]

    def solve(self, v):
        F = self.field
        zero = F.zero
        if len(v) != self.nrows:
            raise ValueError("right-hand side has the wrong length")
        resid = list(v)
        x = [zero] * self.ncols
        for k, pc in enumerate(self.pivots):
            c = v[pc]
            if c == zero:
                continue
            for i, r in enumerate(self.reduced[k]):
                if r != zero:
                    resid[i] = F.sub(resid[i], F.mul(c, r))
            for j, t in enumerate(self.combos[k]):
                if t != zero:
                    x[j] = F.add(x[j], F.mul(c, t))
        if any(r != zero for r in resid):
            return None
        return x

    __call__ = solve


def solve(M: Matrix, v):
    return LinearSolver(M).solve(v)


def inverse(M: Matrix) -> Matrix:
    if M.nrows != M.ncols:
        raise SingularMatrix("non-square matrix")
    F = M.field
    n = M.nrows
    rows = [list(M.rows[i]) + [F.one if j == i else F.zero for j in range(n)] for i in range(n)]
    pivots = rref_rows(F, rows, n)
    if len(pivots) != n:
        raise SingularMatrix("matrix is singular")
    return Matrix(F, [row[n:] for row in rows], n)


def is_invertible(M: Matrix) -> bool:
    return M.nrows == M.ncols and rank(M) == M.nrows


def extend_to_basis(field: Field, vectors, dim: int, candidates=None):
    """Greedily append candidates (default: unit vectors) until a basis.

    Returns the list of appended vectors.  Input vectors must be independent.
    """
    if candidates is None:
        candidates = [[field.one if i == j else field.zero for i in range(dim)] for j in range(dim)]
    basis = [list(v) for v in vectors]
    current = rank_of_vectors(field, basis, dim)
    if current != len(basis):
        raise ValueError("input vectors are dependent")
    added = []
    for c in candidates:
        if current == dim:
            break
        trial = rank_of_vectors(field, basis + [c], dim)
        if trial > current:
            basis.append(list(c))
            added.append(list(c))
            current = trial
    return added


def span_basis(field: Field, vectors, dim: int):
    """Reduced basis (RREF rows) of the span of ``vectors``."""
    rows = [list(v) for v in vectors]
    piv = rref_rows(field, rows, dim)
    return rows[: len(piv)]

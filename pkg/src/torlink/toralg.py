"""Multiplication tables of graded-commutative algebras with Hilbert series
1 + m t + l t^2 + n t^3, l = m + n - 1.

Only two products carry information: A1 x A1 -> A2 (``mu11``) and
A1 x A2 -> A3 (``mu12``).  ``mu11[i][j]`` is the coordinate vector of e_i e_j
in the f-basis, ``mu12[i][j]`` that of e_i f_j in the g-basis.  Since degree
1 times degree 2 is even, f_j e_i = e_i f_j, so ``mu12`` determines A2 x A1.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path

from .errors import FieldMismatch, InputError, InvalidTable, ParseError
from .exactla import (
    Field,
    Matrix,
    SingularMatrix,
    field_from_spec,
    inverse,
    rank,
    rank_of_vectors,
)


@dataclass(frozen=True)
class TorAlgebra:
    field: Field
    m: int
    n: int
    mu11: tuple
    mu12: tuple

    @property
    def l(self) -> int:  # noqa: E743
        return self.m + self.n - 1

    @property
    def dims(self):
        return (1, self.m, self.l, self.n)

    @classmethod
    def from_products(cls, field: Field, m: int, n: int, p11=None, p12=None):
        """Build a table from sparse products, 0-based.

        ``p11`` maps (i, j) to a vector or {f-index: coeff}; the antisymmetric
        partner is filled in.  ``p12`` maps (i, j) to a vector or dict too.
        """
        l = m + n - 1
        if m < 0 or n < 0 or l < 0:
            raise InvalidTable("negative dimension")
        z = field.zero
        t11 = [[[z] * l for _ in range(m)] for _ in range(m)]
        t12 = [[[z] * n for _ in range(l)] for _ in range(m)]

        def vec(v, size):
            if isinstance(v, dict):
                out = [z] * size
                for k, c in v.items():
                    out[k] = field(c)
                return out
            if len(v) != size:
                raise InvalidTable("product vector has the wrong length")
            return [field(c) for c in v]

        for (i, j), v in (p11 or {}).items():
            if i == j:
                if any(c != z for c in vec(v, l)):
                    raise InvalidTable(f"nonzero square e{i + 1}^2")
                continue
            v = vec(v, l)
            for k in range(l):
                t11[i][j][k] = v[k]
                t11[j][i][k] = field.neg(v[k])
        for (i, j), v in (p12 or {}).items():
            t12[i][j] = vec(v, n)
        return cls(
            field,
            m,
            n,
            tuple(tuple(tuple(v) for v in row) for row in t11),
            tuple(tuple(tuple(v) for v in row) for row in t12),
        )

    @classmethod
    def zero(cls, field: Field, m: int, n: int):
        return cls.from_products(field, m, n)

    # products of arbitrary elements given by coordinates

    @cached_property
    def _sparse11(self):
        z = self.field.zero
        return [
            [[(k, c) for k, c in enumerate(v) if c != z] for v in row] for row in self.mu11
        ]

    @cached_property
    def _sparse12(self):
        z = self.field.zero
        return [
            [[(k, c) for k, c in enumerate(v) if c != z] for v in row] for row in self.mu12
        ]

    def _bilinear(self, table, u, v, size):
        F = self.field
        z = F.zero
        add, mul = F.add, F.mul
        out = [z] * size
        vnz = [(j, vj) for j, vj in enumerate(v) if vj != z]
        for i, ui in enumerate(u):
            if ui == z:
                continue
            row = table[i]
            for j, vj in vnz:
                entries = row[j]
                if not entries:
                    continue
                c = mul(ui, vj)
                for k, x in entries:
                    out[k] = add(out[k], mul(c, x))
        return out

    def prod11(self, u, v):
        return self._bilinear(self._sparse11, u, v, self.l)

    def prod12(self, u, w):
        return self._bilinear(self._sparse12, u, w, self.n)

    def unit(self, size, k):
        F = self.field
        return [F.one if i == k else F.zero for i in range(size)]

    def left11(self, u):
        """Rows u*e_j, j = 1..m (an m x l matrix as a list of rows)."""
        return [self.prod11(u, self.unit(self.m, j)) for j in range(self.m)]

    def left12(self, u):
        """Rows u*f_j, j = 1..l (an l x n matrix as a list of rows)."""
        return [self.prod12(u, self.unit(self.l, j)) for j in range(self.l)]

    def triple(self, i, j, k):
        """Coordinates of e_i (e_j e_k) in A3."""
        return self.prod12(self.unit(self.m, i), list(self.mu11[j][k]))


def validate(A: TorAlgebra) -> TorAlgebra:
    """Check shapes, strict graded commutativity and associativity.

    Associativity for these degrees amounts to the trilinear form
    e_i(e_j e_k) being alternating.  Raises InvalidTable on failure.
    """
    F = A.field
    z = F.zero
    m, n, l = A.m, A.n, A.l
    if m < 0 or n < 0 or l < 0:
        raise InvalidTable("negative dimension")
    if len(A.mu11) != m or any(len(row) != m for row in A.mu11):
        raise InvalidTable("mu11 must be m x m")
    if any(len(v) != l for row in A.mu11 for v in row):
        raise InvalidTable("mu11 entries must have length l")
    if len(A.mu12) != m or any(len(row) != l for row in A.mu12):
        raise InvalidTable("mu12 must be m x l")
    if any(len(v) != n for row in A.mu12 for v in row):
        raise InvalidTable("mu12 entries must have length n")
    for i in range(m):
        if any(c != z for c in A.mu11[i][i]):
            raise InvalidTable(f"e{i + 1}^2 is not zero")
        for j in range(i + 1, m):
            if any(F.add(a, b) != z for a, b in zip(A.mu11[i][j], A.mu11[j][i])):
                raise InvalidTable(f"e{i + 1}e{j + 1} != -e{j + 1}e{i + 1}")
    trip = {}
    for i in range(m):
        for j in range(m):
            for k in range(j + 1, m):
                trip[i, j, k] = A.triple(i, j, k)
    for j in range(m):
        for k in range(j + 1, m):
            if any(c != z for c in trip[j, j, k]) or any(c != z for c in trip[k, j, k]):
                raise InvalidTable(f"e(e e) not alternating on ({j + 1},{k + 1})")
    for i in range(m):
        for j in range(i + 1, m):
            for k in range(j + 1, m):
                t = trip[i, j, k]
                # cyclic invariance plus antisymmetry in the last two slots
                if any(F.add(a, b) != z for a, b in zip(t, trip[j, i, k])) or any(
                    F.sub(a, b) != z for a, b in zip(t, trip[k, i, j])
                ):
                    raise InvalidTable(f"associativity fails at ({i + 1},{j + 1},{k + 1})")
    return A


def invariants_pqr(A: TorAlgebra):
    """(p, q, r): ranks of A1*A1, A1*A2 and of A2 -> Hom(A1, A3).

    The last one is the rank of the l x (m*n) matrix whose row j lists the
    coordinates of e_i f_j, columns ordered (i, h) with i major.
    """
    F = A.field
    p = rank_of_vectors(F, [v for row in A.mu11 for v in row], A.l)
    q = rank_of_vectors(F, [v for row in A.mu12 for v in row], A.n)
    rows = []
    for j in range(A.l):
        rows.append([A.mu12[i][j][h] for i in range(A.m) for h in range(A.n)])
    r = rank_of_vectors(F, rows, A.m * A.n)
    return (p, q, r)


def left_mult_rank(A: TorAlgebra, coeffs) -> int:
    """Rank of left multiplication A1 -> A2 by the element sum c_i e_i."""
    coeffs = [A.field(c) for c in coeffs]
    if len(coeffs) != A.m:
        raise ValueError("coefficient vector must have length m")
    return rank_of_vectors(A.field, A.left11(coeffs), A.l)


@dataclass(frozen=True)
class BasisChange:
    """Invertible matrices whose columns are the new bases in old coordinates.

    New e'_a = sum_i g1[i, a] e_i, likewise f' with g2 and g' with g3.
    """

    g1: Matrix
    g2: Matrix
    g3: Matrix

    def compose(self, other: "BasisChange") -> "BasisChange":
        """Apply self first, then other (expressed in self's new basis)."""
        return BasisChange(self.g1 @ other.g1, self.g2 @ other.g2, self.g3 @ other.g3)

    def inverse(self) -> "BasisChange":
        return BasisChange(inverse(self.g1), inverse(self.g2), inverse(self.g3))

    @classmethod
    def identity(cls, field, m, n):
        return cls(Matrix.identity(field, m), Matrix.identity(field, m + n - 1), Matrix.identity(field, n))


def change_basis(A: TorAlgebra, g: BasisChange) -> TorAlgebra:
    """The same algebra written in the basis described by ``g``."""
    F = A.field
    m, n, l = A.m, A.n, A.l
    for M, size in ((g.g1, m), (g.g2, l), (g.g3, n)):
        if M.field != F:
            raise FieldMismatch("basis change over a different field")
        if M.nrows != size or M.ncols != size:
            raise ValueError("basis change has the wrong size")
    try:
        h2 = inverse(g.g2)
        h3 = inverse(g.g3)
    except SingularMatrix:
        raise
    if rank(g.g1) != m:
        raise SingularMatrix("g1 is singular")
    e = g.g1.columns()
    f = g.g2.columns()
    p11 = {}
    for a in range(m):
        for b in range(a + 1, m):
            p11[a, b] = h2.apply(A.prod11(e[a], e[b]))
    p12 = {}
    for a in range(m):
        for b in range(l):
            p12[a, b] = h3.apply(A.prod12(e[a], f[b]))
    return TorAlgebra.from_products(F, m, n, p11, p12)


def permutation_change(field, m, n, e_perm, f_perm, g_perm=None) -> BasisChange:
    """Basis change relabelling basis vectors: new e_a = old e_{e_perm[a]}."""
    l = m + n - 1
    g_perm = list(range(n)) if g_perm is None else g_perm

    def mat(perm, size):
        if sorted(perm) != list(range(size)):
            raise ValueError("not a permutation")
        rows = [[0] * size for _ in range(size)]
        for a, old in enumerate(perm):
            rows[old][a] = 1
        return Matrix(field, rows, size)

    return BasisChange(mat(e_perm, m), mat(f_perm, l), mat(g_perm, n))


# ---------------------------------------------------------------------------
# JSON table format


def _coeff_to_json(F, c):
    return F.to_json(c)


def table_to_json(A: TorAlgebra, meta=None) -> dict:
    """Sparse, 1-based representation; only e_i e_j with i < j is stored."""
    F = A.field
    z = F.zero
    mu11 = []
    for i in range(A.m):
        for j in range(i + 1, A.m):
            v = A.mu11[i][j]
            if any(c != z for c in v):
                mu11.append([i + 1, j + 1, [_coeff_to_json(F, c) for c in v]])
    mu12 = []
    for i in range(A.m):
        for j in range(A.l):
            v = A.mu12[i][j]
            if any(c != z for c in v):
                mu12.append([i + 1, j + 1, [_coeff_to_json(F, c) for c in v]])
    out = {"field": F.spec(), "m": A.m, "n": A.n, "mu11": mu11, "mu12": mu12}
    if meta:
        out["meta"] = meta
    return out


def table_from_json(data: dict, field=None) -> TorAlgebra:
    """Inverse of table_to_json; ``field`` overrides the stored field."""
    try:
        F = field if field is not None else field_from_spec(data["field"])
        m, n = int(data["m"]), int(data["n"])
        l = m + n - 1
        p11, p12 = {}, {}
        for i, j, v in data.get("mu11", []):
            i, j = int(i) - 1, int(j) - 1
            if not (0 <= i < m and 0 <= j < m):
                raise ParseError(f"mu11 index out of range: {i + 1},{j + 1}")
            if len(v) != l:
                raise ParseError(f"mu11 vector for ({i + 1},{j + 1}) must have length {l}")
            vec = [F(c) for c in v]
            if (j, i) in p11:
                other = p11[j, i]
                if any(F.add(a, b) != F.zero for a, b in zip(vec, other)):
                    raise InvalidTable(f"e{i + 1}e{j + 1} and e{j + 1}e{i + 1} are not opposite")
                continue
            if (i, j) in p11:
                raise ParseError(f"duplicate mu11 entry ({i + 1},{j + 1})")
            p11[i, j] = vec
        for i, j, v in data.get("mu12", []):
            i, j = int(i) - 1, int(j) - 1
            if not (0 <= i < m and 0 <= j < l):
                raise ParseError(f"mu12 index out of range: {i + 1},{j + 1}")
            if len(v) != n:
                raise ParseError(f"mu12 vector for ({i + 1},{j + 1}) must have length {n}")
            if (i, j) in p12:
                raise ParseError(f"duplicate mu12 entry ({i + 1},{j + 1})")
            p12[i, j] = [F(c) for c in v]
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"malformed table: {exc}") from exc
    return TorAlgebra.from_products(F, m, n, p11, p12)


def read_table(path, field=None) -> TorAlgebra:
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from exc
    return table_from_json(data, field)


def write_table(A: TorAlgebra, path, meta=None):
    Path(path).write_text(json.dumps(table_to_json(A, meta), indent=1) + "\n")

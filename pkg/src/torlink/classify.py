"""Classification of multiplication tables into B, C(3), G(r), H(p,q), T.

The class is read off from (p, q, r), with T and H(3,0) told apart by the
generic rank of left multiplication.  Every verdict is backed by an explicit
basis change taking the table to its normal form; if none can be built the
table is declared unclassifiable.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import DimensionallyInvalid, NormalizationFailed, Unclassifiable
from .exactla import (
    Field,
    LinearSolver,
    Matrix,
    PrimeField,
    extend_to_basis,
    kernel_basis,
    rank_of_vectors,
    rref_rows,
)
from .gen import normal_form_table
from .labels import B, C3, G, H, T, ClassLabel
from .poly import terms_add, terms_mul, terms_scale
from .rng import SplitMix64
from .toralg import BasisChange, TorAlgebra, change_basis, invariants_pqr, validate


@dataclass(frozen=True)
class Classification:
    label: ClassLabel
    m: int
    n: int
    p: int
    q: int
    r: int
    witness: BasisChange
    normalized: TorAlgebra

    @property
    def pqr(self):
        return (self.p, self.q, self.r)

    def summary(self) -> str:
        return f"{self.label} m={self.m} n={self.n} p={self.p} q={self.q} r={self.r}"

    def to_json(self) -> dict:
        return {"label": str(self.label), "m": self.m, "n": self.n, "p": self.p, "q": self.q, "r": self.r}


# ---------------------------------------------------------------------------
# generic rank of left multiplication


def _product_coordinates(A: TorAlgebra):
    """Basis rows of A1*A1 (RREF) and a map from W-vectors to coordinates."""
    F = A.field
    rows = [list(v) for row in A.mu11 for v in row]
    piv = rref_rows(F, rows, A.l)
    return piv, rows[: len(piv)]


def left_mult_matrix(A: TorAlgebra):
    """m x p matrix of linear forms in t_1..t_m: row j is (sum t_i e_i) e_j
    written in a basis of A1*A1.  Entries are term dicts."""
    F = A.field
    z = F.zero
    piv, _ = _product_coordinates(A)
    m = A.m
    M = []
    for j in range(m):
        row = []
        for pc in piv:
            form = {}
            for i in range(m):
                c = A.mu11[i][j][pc]
                if c != z:
                    e = [0] * m
                    e[i] = 1
                    form[tuple(e)] = c
            row.append(form)
        M.append(row)
    return M


def generic_left_rank(A: TorAlgebra) -> int:
    """Largest k such that some k x k minor of the matrix of linear forms is a
    nonzero polynomial.  Computed by Laplace expansion layer by layer, so the
    answer is exact and does not depend on the size of the field."""
    F = A.field
    M = left_mult_matrix(A)
    m = A.m
    p = len(M[0]) if M else 0
    if p == 0:
        return 0
    prev = {((), ()): {(0,) * m: F.one}}
    best = 0
    for k in range(1, min(m, p) + 1):
        layer = {}
        # expansion along the first row reuses the (k-1)-minors of prev
        for R in combinations(range(m), k):
            r0, rest = R[0], R[1:]
            for Cset in combinations(range(p), k):
                acc = {}
                for idx, c in enumerate(Cset):
                    entry = M[r0][c]
                    if not entry:
                        continue
                    sub = prev.get((rest, Cset[:idx] + Cset[idx + 1:]))
                    if not sub:
                        continue
                    term = terms_mul(F, entry, sub)
                    if idx % 2:
                        term = terms_scale(F, term, F.neg(F.one))
                    acc = terms_add(F, acc, term)
                if acc:
                    layer[R, Cset] = acc
        if not layer:
            break
        best = k
        prev = layer
    return best


# ---------------------------------------------------------------------------
# helpers


def _units(F: Field, dim: int):
    return [[F.one if i == j else F.zero for i in range(dim)] for j in range(dim)]


def _annihilator(A: TorAlgebra, of_a1=True, of_a2=True):
    """Basis of {v in A1 : v*A1 = 0 (if of_a1) and v*A2 = 0 (if of_a2)}."""
    F = A.field
    eqs = []
    if of_a1:
        for j in range(A.m):
            for k in range(A.l):
                eqs.append([A.mu11[i][j][k] for i in range(A.m)])
    if of_a2:
        for j in range(A.l):
            for k in range(A.n):
                eqs.append([A.mu12[i][j][k] for i in range(A.m)])
    if not eqs:
        return _units(F, A.m)
    return kernel_basis(Matrix(F, eqs, A.m))


def _is_zero(F, v):
    return all(c == F.zero for c in v)


def _candidate_points(F: Field, m: int, seed: int, random_trials: int = 400):
    """Small-support integer sweep, then seeded random points."""
    vals = [1, -1, 2, -2]
    for i in range(m):
        v = [0] * m
        v[i] = 1
        yield [F(c) for c in v]
    for i in range(m):
        for j in range(i + 1, m):
            for a in vals[:2]:
                for b in vals:
                    v = [0] * m
                    v[i], v[j] = a, b
                    yield [F(c) for c in v]
    rng = SplitMix64(seed)
    for _ in range(random_trials):
        if isinstance(F, PrimeField):
            yield [rng.below(F.p) for _ in range(m)]
        else:
            yield [F(rng.randint(-50, 50)) for _ in range(m)]


def find_special_element(A: TorAlgebra, p: int, q: int, seed: int = 0):
    """An element a of A1 with a*A1 of rank p and a*A2 of rank q."""
    F = A.field
    for a in _candidate_points(F, A.m, seed):
        if rank_of_vectors(F, A.left11(a), A.l) != p:
            continue
        if q and rank_of_vectors(F, A.left12(a), A.n) != q:
            continue
        return a
    raise NormalizationFailed(f"no special element found over {F.name}; field too small?")


def _basis_change(F, e, f, g, m, l, n):
    return BasisChange(
        Matrix.from_columns(F, e, m),
        Matrix.from_columns(F, f, l),
        Matrix.from_columns(F, g, n),
    )


def _finish(A: TorAlgebra, label: ClassLabel, e, f, g) -> BasisChange:
    F = A.field
    m, n, l = A.m, A.n, A.l
    if len(e) != m or len(f) != l or len(g) != n:
        raise NormalizationFailed(f"basis sizes do not fit {label}")
    if (
        rank_of_vectors(F, e, m) != m
        or rank_of_vectors(F, f, l) != l
        or rank_of_vectors(F, g, n) != n
    ):
        raise NormalizationFailed(f"constructed vectors for {label} are dependent")
    w = _basis_change(F, e, f, g, m, l, n)
    if change_basis(A, w) != normal_form_table(label, m, n, F):
        raise NormalizationFailed(f"table is not isomorphic to the {label} normal form")
    return w


# ---------------------------------------------------------------------------
# per-class normalization


def _normalize_h(A: TorAlgebra, p: int, q: int, seed: int = 0, special=None) -> BasisChange:
    F = A.field
    m, n, l = A.m, A.n, A.l
    label = H(p, q)
    if p == 0 and q == 0:
        return _finish(A, label, _units(F, m), _units(F, l), _units(F, n))
    null = _annihilator(A)
    if len(null) != m - p - 1:
        raise NormalizationFailed(f"annihilator of A1 has dimension {len(null)}, expected {m - p - 1}")
    a = special if special is not None else find_special_element(A, p, q, seed)
    La = A.left11(a)
    us, imgs = [], []
    for j in range(m):
        if len(us) == p:
            break
        if rank_of_vectors(F, imgs + [La[j]], l) > len(imgs):
            us.append(A.unit(m, j))
            imgs.append(La[j])
    if len(us) != p:
        raise NormalizationFailed("left multiplication by the special element has low rank")
    # shift u_i by t_i * a so that the u's multiply to zero and kill A2
    rows, rhs = [], []
    for i in range(p):
        for j in range(i + 1, p):
            uu = A.prod11(us[i], us[j])
            for k in range(l):
                row = [F.zero] * p
                row[i] = imgs[j][k]
                row[j] = F.neg(imgs[i][k])
                rows.append(row)
                rhs.append(F.neg(uu[k]))
    if q:
        La2 = A.left12(a)
        for i in range(p):
            Lu = A.left12(us[i])
            for h in range(l):
                for k in range(n):
                    row = [F.zero] * p
                    row[i] = La2[h][k]
                    rows.append(row)
                    rhs.append(F.neg(Lu[h][k]))
    t = [F.zero] * p
    if rows:
        t = LinearSolver(Matrix(F, rows, p)).solve(rhs)
        if t is None:
            raise NormalizationFailed("no isotropic choice of partners")
    partners = [[F.add(x, F.mul(t[i], y)) for x, y in zip(us[i], a)] for i in range(p)]
    e = partners + [list(a)] + [list(v) for v in null]
    fs = [A.prod11(a, u) for u in partners]
    # A2 = (products) + (complement mapping onto a*A2) + (rest of ker(a*))
    amap = Matrix.from_columns(F, A.left12(a), n)
    ker = kernel_basis(amap)
    rest = extend_to_basis(F, fs, l, candidates=ker)
    kernel_part = fs + rest
    if len(kernel_part) != l - q:
        raise NormalizationFailed("kernel of multiplication by the special element has the wrong size")
    comp = extend_to_basis(F, kernel_part, l)
    gs = [A.prod12(a, w) for w in comp]
    gs = gs + extend_to_basis(F, gs, n)
    f = fs + comp + rest
    return _finish(A, label, e, f, gs)


def _triple_basis(A: TorAlgebra, e1, e2, e3):
    f3 = A.prod11(e1, e2)
    f1 = A.prod11(e2, e3)
    f2 = A.prod11(e3, e1)
    return [f1, f2, f3]


def _normalize_t(A: TorAlgebra) -> BasisChange:
    F = A.field
    m, n, l = A.m, A.n, A.l
    null = _annihilator(A, of_a2=False)
    if len(null) != m - 3:
        raise NormalizationFailed(f"annihilator of A1 has dimension {len(null)}, expected {m - 3}")
    comp = extend_to_basis(F, null, m)
    fs = _triple_basis(A, *comp)
    if rank_of_vectors(F, fs, l) != 3:
        raise NormalizationFailed("products of the triple are dependent")
    f = fs + extend_to_basis(F, fs, l)
    return _finish(A, T(), comp + [list(v) for v in null], f, _units(F, n))


def _normalize_c3(A: TorAlgebra) -> BasisChange:
    F = A.field
    e = _units(F, 3)
    fs = _triple_basis(A, *e)
    g1 = A.prod12(e[0], fs[0])
    if _is_zero(F, g1):
        raise NormalizationFailed("e1 f1 vanishes")
    return _finish(A, C3(), e, fs, [g1])


def _socle_generator(A: TorAlgebra, vectors):
    """First nonzero product v*f over the given v's and basis f's."""
    F = A.field
    for v in vectors:
        for row in A.left12(v):
            if not _is_zero(F, row):
                return row
    raise NormalizationFailed("A1*A2 vanishes on the chosen elements")


def _dual_partners(A: TorAlgebra, es, g1):
    """f_1..f_k with e_i f_j = delta_ij g1, and a basis of the common kernel."""
    F = A.field
    n, l = A.n, A.l
    k = len(es)
    cols = []
    for j in range(l):
        col = []
        for v in es:
            col += A.prod12(v, A.unit(l, j))
        cols.append(col)
    M = Matrix.from_columns(F, cols, k * n)
    solver = LinearSolver(M)
    duals = []
    for i in range(k):
        target = []
        for j in range(k):
            target += list(g1) if i == j else [F.zero] * n
        f = solver.solve(target)
        if f is None:
            raise NormalizationFailed("cannot pair the chosen elements with A2")
        duals.append(f)
    return duals, kernel_basis(M)


def _normalize_b(A: TorAlgebra) -> BasisChange:
    F = A.field
    m, n, l = A.m, A.n, A.l
    null = _annihilator(A)
    if len(null) != m - 2:
        raise NormalizationFailed(f"annihilator has dimension {len(null)}, expected {m - 2}")
    e1, e2 = extend_to_basis(F, null, m)
    f3 = A.prod11(e1, e2)
    if _is_zero(F, f3):
        raise NormalizationFailed("e1 e2 vanishes")
    g1 = _socle_generator(A, [e1, e2])
    (f1, f2), ker = _dual_partners(A, [e1, e2], g1)
    rest = extend_to_basis(F, [f3], l, candidates=ker)
    g = [g1] + extend_to_basis(F, [g1], n)
    return _finish(A, B(), [e1, e2] + [list(v) for v in null], [f1, f2, f3] + rest, g)


def _normalize_g(A: TorAlgebra, r: int) -> BasisChange:
    F = A.field
    m, n, l = A.m, A.n, A.l
    ann = _annihilator(A, of_a1=False)
    if len(ann) != m - r:
        raise NormalizationFailed(f"annihilator of A2 has dimension {len(ann)}, expected {m - r}")
    es = extend_to_basis(F, ann, m)
    g1 = _socle_generator(A, es)
    duals, ker = _dual_partners(A, es, g1)
    g = [g1] + extend_to_basis(F, [g1], n)
    return _finish(A, G(r), es + [list(v) for v in ann], duals + ker, g)


def normalize(A: TorAlgebra, label: ClassLabel, seed: int = 0) -> BasisChange:
    """Basis change taking A to the normal form of ``label``.

    Raises NormalizationFailed if A is not of that class (or, over a small
    prime field, if no suitable special element could be found).
    """
    try:
        normal_form_table(label, A.m, A.n, A.field)
    except DimensionallyInvalid as exc:
        raise NormalizationFailed(str(exc)) from exc
    k = label.kind
    if k == "H":
        return _normalize_h(A, label.p, label.q, seed)
    if k == "T":
        return _normalize_t(A)
    if k == "C3":
        return _normalize_c3(A)
    if k == "B":
        return _normalize_b(A)
    return _normalize_g(A, label.r)


def decide_label(A: TorAlgebra, pqr=None) -> ClassLabel | None:
    """Label suggested by (p, q, r); None if no class matches."""
    p, q, r = pqr if pqr is not None else invariants_pqr(A)
    if (p, q, r) == (3, 1, 3) and (A.m, A.n) == (3, 1):
        return C3()
    if (p, q, r) == (1, 1, 2):
        return B()
    if p == 0 and q == 1 and r >= 2:
        return G(r)
    if (p, q, r) == (3, 0, 0):
        return T() if generic_left_rank(A) <= 2 else H(3, 0)
    if r == q:
        return H(p, q)
    return None


def classify(A: TorAlgebra, seed: int = 0) -> Classification:
    validate(A)
    p, q, r = invariants_pqr(A)
    label = decide_label(A, (p, q, r))
    if label is None:
        raise Unclassifiable(f"(p,q,r) = {(p, q, r)} matches no class")
    try:
        w = normalize(A, label, seed)
    except NormalizationFailed as exc:
        raise Unclassifiable(f"{label} suggested by (p,q,r) but normalization failed: {exc}") from exc
    # normalize() has checked that w takes A to the normal form
    return Classification(label, A.m, A.n, p, q, r, w, normal_form_table(label, A.m, A.n, A.field))

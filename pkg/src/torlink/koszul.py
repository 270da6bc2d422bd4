"""Tor algebra of k[x,y,z]/I from the Koszul complex on x, y, z.

Tor(k[x,y,z]/I, k) is the homology of K = R<e_x, e_y, e_z> with R = k[x,y,z]/I,
computed one internal degree at a time.  Products come from multiplying cycle
representatives in K, which is a DG algebra, and reading off homology
coordinates.  Only homogeneous ideals are accepted; the graded pieces are then
finite and the localisation at (x,y,z) has the same Tor algebra.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import ContainmentViolation, NotArtinian, NotHomogeneous
from .exactla import LinearSolver, Matrix, kernel_basis, rref_rows
from .groebner import GroebnerBasis, buchberger, quotient_basis
from .poly import IdealSpec, Polynomial, monomials_of_degree
from .toralg import TorAlgebra

SUBSETS = {i: list(combinations(range(3), i)) for i in range(4)}


def _wedge_sign(S, T):
    """Sign of e_S ^ e_T, zero if they overlap."""
    if set(S) & set(T):
        return 0
    seq = list(S) + list(T)
    inv = sum(1 for a in range(len(seq)) for b in range(a + 1, len(seq)) if seq[a] > seq[b])
    return -1 if inv % 2 else 1


class _Quotient:
    """Arithmetic in R = k[x,y,z]/I on standard monomials."""

    def __init__(self, G: GroebnerBasis):
        self.G = G
        self.field = G.field
        self.std = quotient_basis(G)
        self.by_degree = {}
        for e in self.std:
            self.by_degree.setdefault(sum(e), []).append(e)
        self.top = max(self.by_degree) if self.by_degree else -1
        self._nf = {}

    def nf_monomial(self, e):
        """Normal form of x^e as {standard monomial: coeff}."""
        hit = self._nf.get(e)
        if hit is None:
            hit = self.G.reduce(Polynomial._raw(self.field, {e: self.field.one})).terms
            self._nf[e] = hit
        return hit

    def basis(self, d):
        return self.by_degree.get(d, [])


class _Stratum:
    """K_i in internal degree d: basis pairs (S, mu) with |S| = i, deg mu = d - i."""

    def __init__(self, R: _Quotient, i: int, d: int):
        self.i, self.d = i, d
        self.basis = [(S, mu) for S in SUBSETS[i] for mu in R.basis(d - i)]
        self.index = {b: k for k, b in enumerate(self.basis)}

    def __len__(self):
        return len(self.basis)


def _differential(R: _Quotient, src: _Stratum, dst: _Stratum) -> Matrix:
    F = R.field
    rows = [[F.zero] * len(src) for _ in range(len(dst))]
    for col, (S, mu) in enumerate(src.basis):
        for k, v in enumerate(S):
            sign = F.one if k % 2 == 0 else F.neg(F.one)
            T = S[:k] + S[k + 1:]
            e = list(mu)
            e[v] += 1
            for nu, c in R.nf_monomial(tuple(e)).items():
                row = dst.index[(T, nu)]
                rows[row][col] = F.add(rows[row][col], F.mul(sign, c))
    return Matrix(F, rows, len(src))


@dataclass
class _Homology:
    stratum: _Stratum
    reps: list  # cycle vectors, one per homology basis element
    solver: LinearSolver | None  # solves [boundaries | reps] x = z
    nbound: int


@dataclass
class KoszulResult:
    """Tor algebra plus the data linking it back to the ideal.

    ``degrees[i]`` lists the internal degree of each basis vector of A_i.
    ``generators[a]`` is the minimal generator of I whose class in I/MI
    corresponds to the a-th basis vector of A_1.
    """

    ideal: IdealSpec
    algebra: TorAlgebra
    degrees: tuple
    generators: list

    @property
    def betti(self):
        return self.algebra.dims

    def generator_of(self, coords) -> Polynomial:
        """Element of I representing sum_a coords[a] e_a."""
        F = self.algebra.field
        out = Polynomial(F)
        for c, g in zip(coords, self.generators):
            if c != F.zero:
                out = out + g * c
        return out

    def coordinates(self, f: Polynomial):
        """Coordinates in A_1 = I/MI of an element f of I."""
        F = self.algebra.field
        m = self.algebra.m
        out = [F.zero] * m
        for d in sorted({sum(e) for e in f.terms}):
            comp = f.homogeneous_part(d)
            monos = monomials_of_degree(d)
            pos = {e: k for k, e in enumerate(monos)}
            own = [a for a in range(m) if self.degrees[0][a] == d]
            cols = []
            for g in self.generators:
                dg = g.degree()
                if dg < d:
                    for mono in monomials_of_degree(d - dg):
                        cols.append(g * Polynomial.monomial(F, mono))
            cols += [self.generators[a] for a in own]

            def vec(p):
                v = [F.zero] * len(monos)
                for e, c in p.terms.items():
                    v[pos[e]] = c
                return v

            if not cols:
                raise ContainmentViolation(f"{f} is not in the ideal")
            x = LinearSolver(Matrix.from_columns(F, [vec(c) for c in cols], len(monos))).solve(vec(comp))
            if x is None:
                raise ContainmentViolation(f"{f} is not in the ideal")
            for a, c in zip(own, x[len(cols) - len(own):]):
                out[a] = c
        return out


def _homology(R, strata, i, d):
    """Representatives and coordinate solver for H_i in degree d."""
    F = R.field
    K = strata[i, d]
    if not len(K):
        return _Homology(K, [], None, 0)
    lower = strata.get((i - 1, d))
    if i > 0 and lower is not None and len(lower):
        cycles = kernel_basis(_differential(R, K, lower))
    else:
        cycles = [[F.one if a == b else F.zero for a in range(len(K))] for b in range(len(K))]
    upper = strata.get((i + 1, d))
    bounds = []
    if upper is not None and len(upper):
        D = _differential(R, upper, K)
        rows = [list(c) for c in D.columns()]
        piv = rref_rows(F, rows, len(K))
        bounds = rows[: len(piv)]
    span = [list(b) for b in bounds]
    rk = len(span)
    reps = []
    for z in cycles:
        trial = span + [list(z)]
        r = len(rref_rows(F, [list(t) for t in trial], len(K)))
        if r > rk:
            span.append(list(z))
            reps.append(list(z))
            rk = r
    if not reps:
        return _Homology(K, [], None, len(bounds))
    solver = LinearSolver(Matrix.from_columns(F, bounds + reps, len(K)))
    return _Homology(K, reps, solver, len(bounds))


def _multiply(R, a_vec, a_str, b_vec, b_str, target):
    F = R.field
    out = [F.zero] * len(target)
    for (S, mu), c1 in zip(a_str.basis, a_vec):
        if c1 == F.zero:
            continue
        for (T, nu), c2 in zip(b_str.basis, b_vec):
            if c2 == F.zero:
                continue
            sgn = _wedge_sign(S, T)
            if not sgn:
                continue
            U = tuple(sorted(S + T))
            c = F.mul(c1, c2)
            if sgn < 0:
                c = F.neg(c)
            e = tuple(p + q for p, q in zip(mu, nu))
            for rho, c3 in R.nf_monomial(e).items():
                k = target.index[(U, rho)]
                out[k] = F.add(out[k], F.mul(c, c3))
    return out


def _coords(h: _Homology, vec):
    if h.solver is None:
        return []
    x = h.solver.solve(vec)
    if x is None:
        raise ArithmeticError("product of cycles is not a cycle")
    return x[h.nbound:]


def koszul_homology(ideal: IdealSpec) -> KoszulResult:
    gens = ideal.nonzero()
    if not gens:
        raise NotArtinian("zero ideal")
    if not all(g.is_homogeneous() for g in gens):
        raise NotHomogeneous("the Koszul pipeline accepts homogeneous ideals only")
    G = buchberger(gens)
    if G.is_unit():
        raise NotArtinian("unit ideal has an empty quotient")
    R = _Quotient(G)
    F = R.field
    top = R.top + 3
    strata = {(i, d): _Stratum(R, i, d) for i in range(4) for d in range(top + 1)}
    H = {(i, d): _homology(R, strata, i, d) for i in range(1, 4) for d in range(top + 1)}

    def flat(i):
        out = []
        for d in range(top + 1):
            for k in range(len(H[i, d].reps)):
                out.append((d, k))
        return out

    idx = {i: flat(i) for i in (1, 2, 3)}
    m, l, n = len(idx[1]), len(idx[2]), len(idx[3])
    if l != m + n - 1:
        raise ArithmeticError(f"Euler characteristic mismatch: {(m, l, n)}")
    pos = {i: {dk: a for a, dk in enumerate(idx[i])} for i in (1, 2, 3)}

    def embed(i, d, local):
        v = [F.zero] * len(idx[i])
        for k, c in enumerate(local):
            v[pos[i][d, k]] = c
        return v

    p11 = {}
    for a in range(m):
        da, ka = idx[1][a]
        for b in range(a + 1, m):
            db, kb = idx[1][b]
            d = da + db
            if d > top:
                continue
            prod = _multiply(R, H[1, da].reps[ka], strata[1, da], H[1, db].reps[kb], strata[1, db], strata[2, d])
            p11[a, b] = embed(2, d, _coords(H[2, d], prod))
    p12 = {}
    for a in range(m):
        da, ka = idx[1][a]
        for b in range(l):
            db, kb = idx[2][b]
            d = da + db
            if d > top:
                continue
            prod = _multiply(R, H[1, da].reps[ka], strata[1, da], H[2, db].reps[kb], strata[2, db], strata[3, d])
            p12[a, b] = embed(3, d, _coords(H[3, d], prod))
    A = TorAlgebra.from_products(F, m, n, p11, p12)

    generators = []
    for d, k in idx[1]:
        vec = H[1, d].reps[k]
        poly = Polynomial(F)
        for ((S, mu), c) in zip(strata[1, d].basis, vec):
            if c == F.zero:
                continue
            e = list(mu)
            e[S[0]] += 1
            poly = poly + Polynomial._raw(F, {tuple(e): c})
        generators.append(poly)
    degrees = tuple([d for d, _ in idx[i]] for i in (1, 2, 3))
    return KoszulResult(ideal, A, degrees, generators)


def tor_algebra(ideal: IdealSpec) -> TorAlgebra:
    return koszul_homology(ideal).algebra


def betti_numbers(ideal: IdealSpec):
    """(1, m, l, n) for the homogeneous artinian ideal."""
    return koszul_homology(ideal).betti

"""Direct linkage: the mapping-cone bookkeeping on multiplication tables and
the end-to-end colon-ideal computation on actual ideals.

For an ideal I with Tor algebra A and a regular sequence x1, x2, x3 of minimal
generators of I, the linked ideal (x1,x2,x3) : I has a Tor algebra B whose
basis is cut out of a mapping cone:

    B1: E_1..E_n (dual to A3) and E_{n+1..n+3} (one per x_i)
    B2: F_1..F_l (dual to A2) and F_{l+1..l+3}
    B3: G_1..G_m (dual to A1)

F_{l+1..l+3} and G_1..G_3 vanish in homology.  Each nonzero product
e_i e_j = ±f_k among the three slot elements kills E_{n+h} (h the third slot)
and F_k.  Products of the E_{n+i} with the rest are read from A:

    E_{n+i} E_j = sum_h (coefficient of g_j in e_i f_h) F_h
    E_{n+i} F_j = sum_{h >= 4} (coefficient of f_j in e_i e_h) G_h

The regimes fix how the slots sit relative to the normal form of A.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import permutations

from .classify import (
    Classification,
    _annihilator,
    _normalize_h,
    classify,
)
from .errors import (
    NormalizationFailed,
    NotNormalized,
    NotRegularSequence,
    ProperLinkRequired,
    RegimeMismatch,
)
from .exactla import PrimeField, rank_of_vectors
from .gen import normal_form_table
from .groebner import buchberger, colon_ideal, is_regular_sequence, minimal_generators
from .labels import ClassLabel
from .poly import IdealSpec, Polynomial, monomials_of_degree
from .rng import SplitMix64
from .toralg import TorAlgebra, change_basis, permutation_change

REGIMES = ("BGT_A", "BGT_B", "BGT_C", "BGT_D", "BGT_E", "H0", "H1", "H2")

# number of slot products that split off a pair (E_{n+h}, F_k)
SPLITS = {"BGT_A": 1, "BGT_B": 0, "BGT_C": 0, "BGT_D": 1, "BGT_E": 3, "H0": 0, "H1": 1, "H2": 2}

def regime_applies(label: ClassLabel, m: int, n: int, regime: str) -> bool:
    k = label.kind
    if regime == "BGT_A":
        return k == "B" and m >= 3
    if regime == "BGT_B":
        return k == "G" and m >= 3
    if regime == "BGT_C":
        return k == "T" and m >= 5
    if regime == "BGT_D":
        return k == "T" and m >= 4
    if regime == "BGT_E":
        return k == "T"
    if k != "H":
        return False
    p = label.p
    if regime == "H0":
        return m - 3 >= p
    if regime == "H1":
        return m - 2 >= p >= 1
    if regime == "H2":
        return m - 1 >= p >= 2
    raise ValueError(f"unknown regime {regime!r}")


def default_regime(label: ClassLabel, m: int, n: int):
    """Regime used by the iterated-linkage driver; None for C(3)."""
    k = label.kind
    if k == "B":
        return "BGT_A"
    if k == "G":
        return "BGT_B"
    if k == "T":
        return "BGT_E"
    if k == "H":
        return ("H0", "H1")[label.p] if label.p < 2 else "H2"
    return None


def layout_change(label: ClassLabel, m: int, n: int, regime: str, field):
    """Relabelling taking the normal form of ``label`` to the regime layout.

    H0/H1/H2: special element in slot 1, partner i in slot 3+i, 2+i, 1+i;
    e1 e_{slot(i)} = f_{q+i} and e1 f_j = g_j.
    BGT_C: the T triple on slots 3,4,5 with e3e4=f5, e4e5=f3, e5e3=f4.
    BGT_D: the T triple on slots 2,3,4 with e2e3=f4, e3e4=f3, e4e2=f2.
    """
    l = m + n - 1

    def fill(assigned: dict, size: int):
        perm = [None] * size
        used = set()
        for new, old in assigned.items():
            perm[new] = old
            used.add(old)
        rest = iter([i for i in range(size) if i not in used])
        return [next(rest) if v is None else v for v in perm]

    if regime in ("H0", "H1", "H2"):
        p, q = label.p, label.q
        off = {"H0": 3, "H1": 2, "H2": 1}[regime]
        e = {0: p}
        for i in range(1, p + 1):
            e[off + i - 1] = i - 1
        f = {}
        for i in range(1, p + 1):
            f[q + i - 1] = i - 1
        for j in range(1, q + 1):
            f[j - 1] = p + j - 1
        return permutation_change(field, m, n, fill(e, m), fill(f, l))
    if regime == "BGT_C":
        return permutation_change(field, m, n, fill({2: 0, 3: 1, 4: 2}, m), fill({4: 2, 2: 0, 3: 1}, l))
    if regime == "BGT_D":
        return permutation_change(field, m, n, fill({1: 0, 2: 1, 3: 2}, m), fill({3: 2, 2: 0, 1: 1}, l))
    return permutation_change(field, m, n, list(range(m)), list(range(l)))


def layout_table(label: ClassLabel, m: int, n: int, regime: str, field) -> TorAlgebra:
    A = normal_form_table(label, m, n, field)
    return change_basis(A, layout_change(label, m, n, regime, field))


@dataclass(frozen=True)
class Split:
    slots: tuple  # (i, j), 1-based slot indices with e_i e_j = sign * f_k
    third: int  # h: E_{n+h} dies
    f_index: int  # k: F_k dies
    sign: int


@dataclass
class LinkedPresentation:
    """What the mapping cone pins down about the linked algebra B.

    Indices are 1-based in the E/F/G numbering of the module docstring.
    ``products`` holds (E index, ("E" or "F", j), {index: coeff}) with the
    value written in surviving F's (for E*E) or G's (for E*F).
    """

    regime: str
    source: str
    m: int
    n: int
    m_linked: int
    n_linked: int
    splits: list
    e_alive: list
    f_alive: list
    g_alive: list
    products: list = dc_field(default_factory=list)
    p_lower: int = 0
    q_lower: int = 0
    r_lower: int = 0

    def to_json(self) -> dict:
        def coeff(c):
            return c if isinstance(c, int) else str(c)

        return {
            "regime": self.regime,
            "source": self.source,
            "m": self.m,
            "n": self.n,
            "m_linked": self.m_linked,
            "n_linked": self.n_linked,
            "splits": [
                {"slots": list(s.slots), "E_dead": self.n + s.third, "F_dead": s.f_index, "sign": s.sign}
                for s in self.splits
            ],
            "E": self.e_alive,
            "F": self.f_alive,
            "G": self.g_alive,
            "products": [
                {"E": e, "with": list(w), "value": {str(k): coeff(v) for k, v in val.items()}}
                for e, w, val in self.products
            ],
            "p_lower": self.p_lower,
            "q_lower": self.q_lower,
            "r_lower": self.r_lower,
        }


def cone_presentation(L: TorAlgebra, regime: str = "", source: str = "") -> LinkedPresentation:
    """Apply the splitting and product rules to a table whose first three
    basis vectors are the classes of the regular sequence."""
    F = L.field
    z = F.zero
    m, n, l = L.m, L.n, L.l
    if m < 3:
        raise NotNormalized("need three slot elements")
    splits = []
    used_f = set()
    for i, j in ((0, 1), (0, 2), (1, 2)):
        v = L.mu11[i][j]
        nz = [(k, c) for k, c in enumerate(v) if c != z]
        if not nz:
            continue
        if len(nz) != 1 or nz[0][1] not in (F.one, F.neg(F.one)):
            raise NotNormalized(f"e{i + 1}e{j + 1} is not plus or minus a basis vector")
        k, c = nz[0]
        if k in used_f:
            raise NotNormalized("two slot products hit the same basis vector")
        used_f.add(k)
        h = 3 - i - j  # the remaining slot, 0-based
        sign = 1 if c == F.one else -1
        splits.append(Split((i + 1, j + 1), h + 1, k + 1, sign))
    dead_e = {n + s.third for s in splits}
    e_alive = [a for a in range(1, n + 4) if a not in dead_e]
    f_alive = [k for k in range(1, l + 1) if (k - 1) not in used_f]
    g_alive = list(range(4, m + 1))
    products = []
    ee_vals, ef_vals = [], []
    r_rows = {k: {} for k in f_alive}
    for i in range(3):
        if n + i + 1 in dead_e:
            continue
        for j in range(n):
            val = {}
            for h in range(l):
                c = L.mu12[i][h][j]
                if c != z and (h + 1) in f_alive:
                    val[h + 1] = c
            if val:
                products.append((n + i + 1, ("E", j + 1), val))
                ee_vals.append([val.get(k, z) for k in f_alive])
        for j in range(l):
            if (j + 1) not in f_alive:
                continue
            val = {}
            for h in range(3, m):
                c = L.mu11[i][h][j]
                if c != z:
                    val[h + 1] = c
            if val:
                products.append((n + i + 1, ("F", j + 1), val))
                ef_vals.append([val.get(g, z) for g in g_alive])
                for g, c in val.items():
                    r_rows[j + 1][(n + i + 1, g)] = c
    cols = sorted({key for row in r_rows.values() for key in row})
    r_mat = [[row.get(cname, z) for cname in cols] for row in r_rows.values()]
    s = len(splits)
    return LinkedPresentation(
        regime=regime,
        source=source,
        m=m,
        n=n,
        m_linked=n + 3 - s,
        n_linked=m - 3,
        splits=splits,
        e_alive=e_alive,
        f_alive=f_alive,
        g_alive=g_alive,
        products=products,
        p_lower=rank_of_vectors(F, ee_vals, len(f_alive)) if ee_vals else 0,
        q_lower=rank_of_vectors(F, ef_vals, len(g_alive)) if ef_vals else 0,
        r_lower=rank_of_vectors(F, r_mat, len(cols)) if cols else 0,
    )


def link_table(A: TorAlgebra, classification: Classification, regime: str) -> LinkedPresentation:
    """Mapping-cone presentation of the algebra linked to A in ``regime``.

    A must already be in normal form for ``classification.label``.
    """
    label = classification.label
    if regime not in REGIMES:
        raise ValueError(f"unknown regime {regime!r}")
    if A != normal_form_table(label, A.m, A.n, A.field):
        raise NotNormalized(f"table is not the {label} normal form; normalize first")
    if not regime_applies(label, A.m, A.n, regime):
        raise RegimeMismatch(f"{regime} does not apply to {label} with m={A.m}, n={A.n}")
    L = change_basis(A, layout_change(label, A.m, A.n, regime, A.field))
    return cone_presentation(L, regime, str(label))


def linked_ranks(m: int, n: int, phi1: int, phi2: int, phi3: int = 0):
    """Ranks (B1, B2, B3) of the minimal resolution cut out of the mapping cone,
    given the ranks of phi_i (x) k.  The Euler characteristic forces phi3 = 0."""
    l = m + n - 1
    return n + 3 - phi3 - phi2, l + 3 - phi2 - phi1, m - phi1


def linked_betti(m: int, n: int, splits: int, minimal_gens: bool = True, phi1_rank: int | None = None):
    """(m', n') of the linked ideal.

    With x1, x2, x3 minimal generators phi1 has rank 3; otherwise pass its
    rank.  ``splits`` is the rank of phi2, the number of independent slot
    products.
    """
    if not 0 <= splits <= 3:
        raise ValueError("splits must lie in 0..3")
    if minimal_gens:
        phi1_rank = 3
    elif phi1_rank is None:
        raise ValueError("phi1_rank is required for non-minimal generators")
    b1, _, b3 = linked_ranks(m, n, phi1_rank, splits)
    return b1, b3


# ---------------------------------------------------------------------------
# proposition clauses


@dataclass
class Verdict:
    regime: str
    clauses: list = dc_field(default_factory=list)  # (name, ok)

    @property
    def ok(self):
        return all(ok for _, ok in self.clauses)

    def add(self, name, ok):
        self.clauses.append((name, bool(ok)))

    def failures(self):
        return [name for name, ok in self.clauses if not ok]

    def to_json(self):
        return {"regime": self.regime, "ok": self.ok, "clauses": [{"name": n, "ok": o} for n, o in self.clauses]}


def expected_betti(label: ClassLabel, m: int, n: int, regime: str):
    return n + 3 - SPLITS[regime], m - 3


def check_presentation(label: ClassLabel, m: int, n: int, pres: LinkedPresentation) -> Verdict:
    """Exact sizes and lower bounds that the table-level computation must meet."""
    R = pres.regime
    v = Verdict(R)
    em, en = expected_betti(label, m, n, R)
    v.add(f"m'={em}", pres.m_linked == em)
    v.add(f"n'={en}", pres.n_linked == en)
    if R == "BGT_A":
        v.add("p'>=2", pres.p_lower >= 2)
    elif R == "BGT_B":
        v.add(f"p'>={min(label.r, 3)}", pres.p_lower >= min(label.r, 3))
    elif R == "BGT_C":
        v.add("q'>=2", pres.q_lower >= 2)
    elif R == "BGT_D":
        v.add("q'>=1", pres.q_lower >= 1)
        v.add("r'>=2", pres.r_lower >= 2)
    elif R in ("H0", "H1", "H2"):
        p, q = label.p, label.q
        drop = {"H0": 0, "H1": 1, "H2": 2}[R]
        v.add(f"p'>={q}", pres.p_lower >= q)
        v.add(f"q'>={p - drop}", pres.q_lower >= p - drop)
    return v


def check_proposition(before: Classification, after: Classification, regime: str) -> Verdict:
    """All clauses of the linkage statement for ``regime`` that apply to the
    pair (class of I, class of the linked ideal)."""
    a, b = before, after
    la, lb = a.label, b.label
    m, n = a.m, a.n
    v = Verdict(regime)
    if not regime_applies(la, m, n, regime):
        raise RegimeMismatch(f"{regime} does not apply to {la} with m={m}, n={n}")
    em, en = expected_betti(la, m, n, regime)
    v.add(f"m'={em}", b.m == em)
    v.add(f"n'={en}", b.n == en)
    is_h = lb.kind == "H"
    if regime == "BGT_A":
        v.add("p'>=2", b.p >= 2)
        v.add("class H", is_h)
    elif regime == "BGT_B":
        v.add(f"p'>={min(la.r, 3)}", b.p >= min(la.r, 3))
        v.add("class H", is_h)
    elif regime == "BGT_C":
        v.add("q'>=2", b.q >= 2)
        v.add("class H", is_h)
    elif regime == "BGT_D":
        v.add("q'=1", b.q == 1)
        v.add("r'>=2", b.r >= 2)
        v.add("class B or G", lb.kind in ("B", "G"))
    elif regime == "BGT_E":
        pass
    else:
        p, q = la.p, la.q
        drop = {"H0": 0, "H1": 1, "H2": 2}[regime]
        pp = p - drop  # lower bound for q'
        v.add(f"p'>={q}", b.p >= q)
        v.add(f"q'>={pp}", b.q >= pp)
        if regime == "H2" and n == 2:
            v.add("q=2", q == 2)
            v.add("class C(3)", lb.kind == "C3")
            return v
        if regime == "H2" and not (m >= 5 or n >= 3):
            return v
        # thresholds on p shift with the number of splits
        if p >= 1 + drop:
            v.add(f"p'={q}", b.p == q)
        if p >= 2 + drop:
            v.add(f"class H({q},.)", is_h and lb.p == q)
        if q >= 2:
            v.add(f"q'={pp}", b.q == pp)
        if q >= 3:
            v.add(f"class H(.,{pp})", is_h and lb.q == pp)
        if q == 1:
            v.add("class B or H", lb.kind in ("B", "H"))
        if q == 1 and p == drop:
            v.add("class H", is_h)
        if regime == "H0" and lb.kind == "G":
            v.add("r'<=m'-2", b.r <= b.m - 2)
        if regime == "H1" and n == 2 and b.p == 3:
            v.add("A is H(1,2)", la == ClassLabel("H", p=1, q=2))
            v.add("class T", lb.kind == "T")
    return v


def descent_ok(before: Classification, after: Classification) -> bool:
    """m'+n' <= m+n - min(2, p) whenever p > 0."""
    if before.p == 0:
        return True
    return after.m + after.n <= before.m + before.n - min(2, before.p)


# ---------------------------------------------------------------------------
# end-to-end linkage of ideals


def link_ideal(ideal: IdealSpec, sequence) -> IdealSpec:
    """(x1, x2, x3) : I for a regular sequence x inside I."""
    seq = list(sequence)
    if not is_regular_sequence(seq):
        raise NotRegularSequence("the three elements are not a regular sequence")
    J = colon_ideal(IdealSpec(ideal.field, seq), ideal)
    if buchberger(J.generators).is_unit():
        raise ProperLinkRequired("the colon ideal is the unit ideal")
    if J.is_homogeneous():
        J = IdealSpec(J.field, minimal_generators(J))
    J.name = f"link({ideal.name or 'I'})" if ideal.name else ""
    return J


class _Graded:
    """A graded subspace of A1 given by homogeneous bases per degree."""

    def __init__(self, field, degrees, vectors):
        self.field = field
        self.degrees = degrees
        self.parts = {}
        for d in sorted(set(degrees)):
            part = _degree_part(field, degrees, vectors, d)
            if part:
                self.parts[d] = part

    def dim(self):
        return sum(len(v) for v in self.parts.values())

    def all(self):
        return [v for d in sorted(self.parts) for v in self.parts[d]]


def _degree_part(F, degrees, vectors, d):
    """Basis of span(vectors) ∩ (degree-d coordinates)."""
    from .exactla import Matrix, kernel_basis

    if not vectors:
        return []
    outside = [a for a, da in enumerate(degrees) if da != d]
    k = len(vectors)
    if outside:
        M = Matrix(F, [[vec[a] for vec in vectors] for a in outside], k)
        combos = kernel_basis(M)
    else:
        combos = [[F.one if i == j else F.zero for i in range(k)] for j in range(k)]
    out = []
    for c in combos:
        v = [F.zero] * len(degrees)
        for coef, vec in zip(c, vectors):
            if coef != F.zero:
                v = [F.add(x, F.mul(coef, y)) for x, y in zip(v, vec)]
        out.append(v)
    rows = [list(x) for x in out]
    from .exactla import rref_rows

    piv = rref_rows(F, rows, len(degrees))
    return rows[: len(piv)]


def _indep_mod(F, base, vs, dim):
    return rank_of_vectors(F, list(base) + list(vs), dim) == rank_of_vectors(F, base, dim) + len(vs)


def _in_span(F, base, v, dim):
    return rank_of_vectors(F, list(base) + [v], dim) == rank_of_vectors(F, base, dim)


def _random_scalar(F, rng):
    if isinstance(F, PrimeField):
        return 1 + rng.below(F.p - 1)
    return F(rng.choice([1, -1, 2, -2, 3]))


def _random_in(F, space: _Graded, rng, sparse: bool):
    """Random homogeneous element of a graded subspace."""
    if not space.parts:
        return None
    d = rng.choice(sorted(space.parts))
    basis = space.parts[d]
    if sparse:
        return list(rng.choice(basis))
    v = [F.zero] * len(basis[0])
    for b in basis:
        c = _random_scalar(F, rng)
        v = [F.add(x, F.mul(c, y)) for x, y in zip(v, b)]
    return v


def _homogeneous_units(F, degrees):
    m = len(degrees)
    return _Graded(F, degrees, [[F.one if i == j else F.zero for i in range(m)] for j in range(m)])


class SlotConditions:
    """When three elements of A1 can serve as the slots of a regime layout.

    With N the common annihilator of A1 and A2, Ann2 the annihilator of A2,
    and a the special element of class H:
      BGT_A: s1, s2 independent mod N, s3 in N
      BGT_B: the first min(r, 3) slots independent mod Ann2, the rest in Ann2
      BGT_C: s1, s2 in N, s3 outside N
      BGT_D: s1 in N, s2, s3 independent mod N
      BGT_E: s1, s2, s3 independent mod N
      H0: s1 = a, s2, s3 in N
      H1: s1 = a, s2 in N, s3 a partner with a s3 != 0
      H2: s1 = a, s2, s3 partners with a s2, a s3 independent
    Partners range over Ann2 when q >= 1, over the isotropic complement found
    by normalization when q = 0 and p >= 2, and over A1 when (p, q) = (1, 0).
    """

    def __init__(self, A: TorAlgebra, label: ClassLabel):
        self.A = A
        self.label = label
        self.null = _annihilator(A)
        self.ann2 = _annihilator(A, of_a1=False)
        self._partners = {}

    def is_special(self, a):
        A, F = self.A, self.A.field
        if rank_of_vectors(F, A.left11(a), A.l) != self.label.p:
            return False
        return not self.label.q or rank_of_vectors(F, A.left12(a), A.n) == self.label.q

    def partner_basis(self, a):
        """Basis of the partner space for the special element a."""
        key = tuple(a)
        if key not in self._partners:
            A, lab = self.A, self.label
            if lab.q >= 1:
                basis = self.ann2
            elif lab.p >= 2:
                w = _normalize_h(A, lab.p, lab.q, special=a)
                basis = w.g1.columns()[: lab.p] + self.null
            else:
                basis = [A.unit(A.m, i) for i in range(A.m)]
            self._partners[key] = [list(v) for v in basis]
        return self._partners[key]

    def holds(self, regime: str, s) -> bool:
        A, F, m = self.A, self.A.field, self.A.m
        if any(v is None for v in s) or rank_of_vectors(F, s, m) != 3:
            return False
        N = self.null

        def inside(base, v):
            return _in_span(F, base, v, m)

        if regime == "BGT_A":
            return _indep_mod(F, N, s[:2], m) and inside(N, s[2])
        if regime == "BGT_B":
            k = min(self.label.r, 3)
            return _indep_mod(F, self.ann2, s[:k], m) and all(inside(self.ann2, v) for v in s[k:])
        if regime == "BGT_C":
            return inside(N, s[0]) and inside(N, s[1]) and _indep_mod(F, N, s[2:], m)
        if regime == "BGT_D":
            return inside(N, s[0]) and _indep_mod(F, N, s[1:], m)
        if regime == "BGT_E":
            return _indep_mod(F, N, s, m)
        lab = self.label
        if lab.p == 0 and lab.q == 0:
            return regime == "H0"
        a = s[0]
        if not self.is_special(a):
            return False
        if regime == "H0":
            return inside(N, s[1]) and inside(N, s[2])
        C = self.partner_basis(a)
        if regime == "H1":
            return inside(N, s[1]) and inside(C, s[2]) and any(c != F.zero for c in A.prod11(a, s[2]))
        if regime == "H2":
            images = [A.prod11(a, s[1]), A.prod11(a, s[2])]
            return inside(C, s[1]) and inside(C, s[2]) and rank_of_vectors(F, images, A.l) == 2
        return False


def infer_regimes(A: TorAlgebra, label: ClassLabel, slots):
    """Regimes (with the slot order realizing them) matched by three elements of A1."""
    cond = SlotConditions(A, label)
    out = []
    for R in REGIMES:
        if not regime_applies(label, A.m, A.n, R):
            continue
        for order in permutations(range(3)):
            if cond.holds(R, [list(slots[i]) for i in order]):
                out.append((R, order))
                break
    return out


def _slot_candidates(A: TorAlgebra, degrees, label: ClassLabel, regime: str, seed: int, attempts: int):
    """Yield homogeneous slot triples (s1, s2, s3) realizing the regime layout."""
    F = A.field
    rng = SplitMix64(seed)
    cond = SlotConditions(A, label)
    V = _homogeneous_units(F, degrees)
    Nsp = _Graded(F, degrees, cond.null)
    Ann2sp = _Graded(F, degrees, cond.ann2)
    special = None
    Csp = None
    if label.kind == "H" and (label.p or label.q):
        special = _homogeneous_special(A, degrees, cond, rng)
        if special is None:
            return
        if label.p >= 1:
            Csp = _Graded(F, degrees, cond.partner_basis(special))
    spaces = {
        "BGT_A": (V, V, Nsp),
        "BGT_B": (V, V, V if label.r >= 3 else Ann2sp),
        "BGT_C": (Nsp, Nsp, V),
        "BGT_D": (Nsp, V, V),
        "BGT_E": (V, V, V),
        "H0": (None, Nsp, Nsp),
        "H1": (None, Nsp, Csp),
        "H2": (None, Csp, Csp),
    }[regime]
    if label.kind == "H" and special is None:
        spaces = (V, V, V)
    for t in range(attempts):
        sparse = t < attempts // 2
        s = [special if sp is None else _random_in(F, sp, rng, sparse) for sp in spaces]
        if cond.holds(regime, s):
            yield s


def _homogeneous_special(A, degrees, cond, rng):
    F = A.field
    m = A.m
    for a in range(m):
        v = A.unit(m, a)
        if cond.is_special(v):
            return v
    for d in sorted(set(degrees)):
        idx = [a for a in range(m) if degrees[a] == d]
        for _ in range(60):
            v = [F.zero] * m
            for a in idx:
                v[a] = _random_scalar(F, rng)
            if cond.is_special(v):
                return v
    return None


def _perturbations(K, poly: Polynomial, rng, tries: int):
    """poly plus random elements of (M*I) in the same degree."""
    F = poly.field
    d = poly.degree()
    pool = []
    for g in K.generators:
        dg = g.degree()
        if dg < d:
            for mono in monomials_of_degree(d - dg):
                pool.append(g * Polynomial.monomial(F, mono))
    out = [poly]
    for _ in range(tries):
        q = poly
        if pool:
            for _ in range(1 + rng.below(3)):
                q = q + rng.choice(pool) * _random_scalar(F, rng)
        out.append(q)
    return out


@dataclass
class LinkStep:
    regime: str
    sequence: list
    ideal: IdealSpec
    linked: IdealSpec
    before: Classification
    after: Classification
    verdict: Verdict
    predicted: LinkedPresentation


def choose_sequence(K, cls: Classification, regime: str, seed: int = 0, attempts: int = 60):
    """Regular sequence of minimal generators of K.ideal realizing ``regime``.

    Slots are homogeneous elements of A1 satisfying the layout conditions; the
    polynomials may be shifted by elements of M*I (which leaves their classes
    unchanged) to make them a regular sequence.
    """
    A = K.algebra
    rng = SplitMix64(seed ^ 0x5EED)
    for slots in _slot_candidates(A, K.degrees[0], cls.label, regime, seed, attempts):
        polys = [K.generator_of(s) for s in slots]
        if any(p.is_zero() for p in polys):
            continue
        if is_regular_sequence(polys):
            return polys, slots
        for trial in zip(*(_perturbations(K, p, rng, 8) for p in polys)):
            if is_regular_sequence(list(trial)):
                return list(trial), slots
    raise NormalizationFailed(f"no regular sequence realizing {regime} found")


def link_step(ideal: IdealSpec, regime: str | None = None, seed: int = 0, K=None, cls=None) -> LinkStep:
    """Link ``ideal`` once in the given (or default) regime and check the result."""
    from .koszul import koszul_homology

    K = K or koszul_homology(ideal)
    cls = cls or classify(K.algebra, seed)
    regime = regime or default_regime(cls.label, cls.m, cls.n)
    if regime is None:
        raise RegimeMismatch(f"no linkage regime for {cls.label}")
    if not regime_applies(cls.label, cls.m, cls.n, regime):
        raise RegimeMismatch(f"{regime} does not apply to {cls.label} with m={cls.m}, n={cls.n}")
    seq, _ = choose_sequence(K, cls, regime, seed)
    linked = link_ideal(ideal, seq)
    K2 = koszul_homology(linked)
    after = classify(K2.algebra, seed)
    verdict = check_proposition(cls, after, regime)
    pred = link_table(cls.normalized, cls, regime)
    return LinkStep(regime, seq, ideal, linked, cls, after, verdict, pred)


@dataclass
class SequenceLink:
    """Linking an ideal along a given sequence, with the checks that apply."""

    sequence: list
    linked: IdealSpec
    before: Classification
    after: Classification
    phi1_rank: int
    phi2_rank: int
    predicted: tuple  # (m', n') from the rank formulas
    verdicts: list  # one Verdict per regime the slots realize

    @property
    def minimal(self):
        return self.phi1_rank == 3

    @property
    def ok(self):
        sizes = (self.after.m, self.after.n) == tuple(self.predicted)
        return sizes and all(v.ok for v in self.verdicts)


def sequence_ranks(K, sequence):
    """Ranks of phi1 and phi2 (x) k: the span of the classes of x_i in A1 and
    of their pairwise products in A2."""
    A = K.algebra
    F = A.field
    slots = [K.coordinates(f) for f in sequence]
    phi1 = rank_of_vectors(F, slots, A.m)
    prods = [A.prod11(slots[i], slots[j]) for i, j in ((0, 1), (0, 2), (1, 2))]
    phi2 = rank_of_vectors(F, prods, A.l)
    return slots, phi1, phi2


def link_with_sequence(ideal: IdealSpec, sequence, seed: int = 0, K=None) -> SequenceLink:
    from .koszul import koszul_homology

    K = K or koszul_homology(ideal)
    before = classify(K.algebra, seed)
    slots, phi1, phi2 = sequence_ranks(K, sequence)
    linked = link_ideal(ideal, sequence)
    after = classify(koszul_homology(linked).algebra, seed)
    b1, _, b3 = linked_ranks(before.m, before.n, phi1, phi2)
    verdicts = []
    if phi1 == 3:
        for R, _ in infer_regimes(K.algebra, before.label, slots):
            verdicts.append(check_proposition(before, after, R))
    return SequenceLink(list(sequence), linked, before, after, phi1, phi2, (b1, b3), verdicts)


def link_chain(ideal: IdealSpec, seed: int = 0, max_steps: int | None = None):
    """Iterate links until C(3) or H(0,0), preferring the default regime and
    falling back when no homogeneous regular sequence realizes it.  Stops
    early if no regime can be realized.  Returns the steps."""
    from .koszul import koszul_homology

    steps = []
    K = koszul_homology(ideal)
    cls = classify(K.algebra, seed)
    bound = max_steps if max_steps is not None else 2 * (cls.m + cls.n)
    current = ideal
    for _ in range(bound):
        if is_terminal(cls.label):
            break
        step = None
        for regime in candidate_regimes(cls.label, cls.m, cls.n):
            try:
                step = link_step(current, regime, seed=seed, K=K, cls=cls)
                break
            except NormalizationFailed:
                continue
        if step is None:
            break
        steps.append(step)
        current = step.linked
        K = koszul_homology(current)
        cls = step.after
    return steps


def candidate_regimes(label: ClassLabel, m: int, n: int):
    """Default regime first, then every other regime whose hypotheses hold."""
    first = default_regime(label, m, n)
    rest = [R for R in REGIMES if R != first and regime_applies(label, m, n, R)]
    return ([first] if first else []) + rest


def is_terminal(label: ClassLabel) -> bool:
    return label.kind == "C3" or (label.kind == "H" and label.p == 0 and label.q == 0)

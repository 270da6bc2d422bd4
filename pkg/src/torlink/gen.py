"""Generators: normal-form tables, random basis scrambles, random ideals."""

from __future__ import annotations

from .errors import DimensionallyInvalid
from .exactla import QQ, Field, Matrix, PrimeField, rank
from .labels import ClassLabel
from .poly import IdealSpec, Polynomial, monomials_of_degree
from .rng import SplitMix64
from .toralg import BasisChange, TorAlgebra, change_basis


def check_dimensions(label: ClassLabel, m: int, n: int):
    """Raise DimensionallyInvalid if the normal form does not fit (m, n)."""
    l = m + n - 1
    k = label.kind
    ok = n >= 1 and m >= 1
    if k == "C3":
        ok = ok and m == 3 and n == 1
    elif k == "T":
        ok = ok and m >= 3 and l >= 3
    elif k == "B":
        ok = ok and m >= 2 and l >= 3
    elif k == "G":
        ok = ok and label.r <= m and label.r <= l
    elif k == "H":
        ok = ok and label.p <= m - 1 and label.q <= n and label.p + label.q <= l
    if not ok:
        raise DimensionallyInvalid(f"{label} does not fit m={m}, n={n}")


def normal_form_table(label: ClassLabel, m: int, n: int, field: Field = QQ) -> TorAlgebra:
    """The standard multiplication table of the class, all other products zero.

    C(3): e1e2=f3, e2e3=f1, e3e1=f2, e_i f_i = g1 (i=1..3)
    T:    e1e2=f3, e2e3=f1, e3e1=f2
    B:    e1e2=f3, e1f1 = e2f2 = g1
    G(r): e_i f_i = g1 for i = 1..r
    H(p,q): e_{p+1} e_i = f_i (i <= p), e_{p+1} f_{p+j} = g_j (j <= q)
    """
    check_dimensions(label, m, n)
    one = field.one
    p11, p12 = {}, {}
    k = label.kind
    if k in ("C3", "T"):
        p11[0, 1] = {2: one}
        p11[1, 2] = {0: one}
        p11[2, 0] = {1: one}
        if k == "C3":
            for i in range(3):
                p12[i, i] = {0: one}
    elif k == "B":
        p11[0, 1] = {2: one}
        p12[0, 0] = {0: one}
        p12[1, 1] = {0: one}
    elif k == "G":
        for i in range(label.r):
            p12[i, i] = {0: one}
    else:
        p, q = label.p, label.q
        for i in range(p):
            p11[p, i] = {i: one}
        for j in range(q):
            p12[p, p + j] = {j: one}
    return TorAlgebra.from_products(field, m, n, p11, p12)


def random_invertible(field: Field, size: int, rng: SplitMix64) -> Matrix:
    """Entries in -2..2 over Q, uniform over F_p; resampled until invertible."""
    while True:
        if isinstance(field, PrimeField):
            rows = [[rng.below(field.p) for _ in range(size)] for _ in range(size)]
        else:
            rows = [[rng.randint(-2, 2) for _ in range(size)] for _ in range(size)]
        M = Matrix(field, rows, size)
        if size == 0 or rank(M) == size:
            return M


def random_basis_change(field: Field, m: int, n: int, seed: int) -> BasisChange:
    rng = SplitMix64(seed)
    return BasisChange(
        random_invertible(field, m, rng),
        random_invertible(field, m + n - 1, rng),
        random_invertible(field, n, rng),
    )


def scramble(A: TorAlgebra, seed: int):
    """Rewrite A in a random basis; returns (table, basis change used)."""
    g = random_basis_change(A.field, A.m, A.n, seed)
    return change_basis(A, g), g


def _random_nonzero(field: Field, rng: SplitMix64):
    if isinstance(field, PrimeField):
        return 1 + rng.below(field.p - 1)
    return rng.choice([-2, -1, 1, 2])


def random_form(field: Field, degree: int, rng: SplitMix64, max_terms: int = 3) -> Polynomial:
    monos = monomials_of_degree(degree)
    k = 1 + rng.below(min(max_terms, len(monos)))
    picked = rng.shuffle(list(monos))[:k]
    return Polynomial(field, {e: _random_nonzero(field, rng) for e in picked})


def random_artinian_ideal(gen_count: int, max_degree: int, field: Field = QQ, seed: int = 0) -> IdealSpec:
    """x^d, y^d, z^d plus gen_count - 3 random homogeneous forms of degree 2..d.

    The pure powers make the quotient artinian; the forms carry the structure.
    """
    if gen_count < 3 or max_degree < 1:
        raise ValueError("need at least three generators and degree >= 1")
    rng = SplitMix64(seed)
    d = max_degree
    gens = [Polynomial.monomial(field, e) for e in ((d, 0, 0), (0, d, 0), (0, 0, d))]
    lo = 2 if d >= 2 else 1
    for _ in range(gen_count - 3):
        gens.append(random_form(field, rng.randint(lo, d), rng))
    return IdealSpec(field, gens, name=f"random-{gen_count}-{max_degree}-{seed}")

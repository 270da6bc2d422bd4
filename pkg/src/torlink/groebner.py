"""Buchberger's algorithm, normal forms, quotient bases and colon ideals.

The core works on raw term dicts with an arbitrary number of variables and a
sort key for the monomial order.  Public entry points use degrevlex on
k[x,y,z]; intersections use a fourth variable t with a block order that
eliminates t.
"""

from __future__ import annotations

from .errors import ContainmentViolation, FieldMismatch, NotArtinian
from .exactla import Field
from .poly import IdealSpec, Polynomial, degrevlex_key, terms_add, terms_shift


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _quo(b, a):
    return tuple(y - x for x, y in zip(a, b))


class _Ordered:
    """Polynomial as a term dict plus cached leading data for one order."""

    __slots__ = ("terms", "lm", "lc")

    def __init__(self, terms, key):
        self.terms = terms
        self.lm = max(terms, key=key)
        self.lc = terms[self.lm]


def _reduce(F: Field, terms: dict, basis, key, full=True):
    """Remainder of ``terms`` by ``basis`` (list of _Ordered).

    With ``full`` the whole polynomial is reduced, otherwise only the head.
    """
    p = dict(terms)
    rem = {}
    while p:
        lm = max(p, key=key)
        c = p[lm]
        for g in basis:
            if _divides(g.lm, lm):
                factor = F.neg(F.div(c, g.lc))
                p = terms_add(F, p, terms_shift(F, g.terms, _quo(lm, g.lm), factor))
                break
        else:
            if not full:
                rem.update(p)
                return rem
            rem[lm] = c
            del p[lm]
    return rem


def _monic(F, terms, key):
    lm = max(terms, key=key)
    inv = F.inv(terms[lm])
    return {e: F.mul(inv, c) for e, c in terms.items()}


def _spoly(F, f: _Ordered, g: _Ordered):
    L = _lcm(f.lm, g.lm)
    a = terms_shift(F, f.terms, _quo(L, f.lm), F.inv(f.lc))
    b = terms_shift(F, g.terms, _quo(L, g.lm), F.inv(g.lc))
    return terms_add(F, a, b, F.neg(F.one))


def groebner_terms(F: Field, gens, key):
    """Reduced Groebner basis of term dicts ``gens`` under order ``key``."""
    basis: list[_Ordered] = []
    for t in gens:
        if t:
            basis.append(_Ordered(_monic(F, t, key), key))
    if not basis:
        return []
    pairs = set()
    for j in range(len(basis)):
        for i in range(j):
            pairs.add((i, j))

    def sugar(pair):
        i, j = pair
        L = _lcm(basis[i].lm, basis[j].lm)
        return (sum(L), key(L), pair)

    while pairs:
        pair = min(pairs, key=sugar)
        pairs.discard(pair)
        i, j = pair
        fi, fj = basis[i], basis[j]
        # product criterion
        if all(a == 0 or b == 0 for a, b in zip(fi.lm, fj.lm)):
            continue
        # chain criterion
        L = _lcm(fi.lm, fj.lm)
        skip = False
        for k, fk in enumerate(basis):
            if k in (i, j) or not _divides(fk.lm, L):
                continue
            if (min(i, k), max(i, k)) not in pairs and (min(j, k), max(j, k)) not in pairs:
                skip = True
                break
        if skip:
            continue
        r = _reduce(F, _spoly(F, fi, fj), basis, key)
        if not r:
            continue
        basis.append(_Ordered(_monic(F, r, key), key))
        n = len(basis) - 1
        for i2 in range(n):
            pairs.add((i2, n))
    # minimalize
    keep = []
    for i, g in enumerate(basis):
        redundant = False
        for j, h in enumerate(basis):
            if i == j:
                continue
            if _divides(h.lm, g.lm) and (h.lm != g.lm or j < i):
                redundant = True
                break
        if not redundant:
            keep.append(g)
    # interreduce
    out = []
    for i, g in enumerate(keep):
        others = [h for j, h in enumerate(keep) if j != i]
        t = _reduce(F, g.terms, others, key)
        out.append(_Ordered(_monic(F, t, key), key))
    out.sort(key=lambda g: key(g.lm))
    return out


# ---------------------------------------------------------------------------
# public API on k[x,y,z] with degrevlex


class GroebnerBasis:
    """Reduced degrevlex Groebner basis of an ideal of k[x,y,z]."""

    def __init__(self, field: Field, elements):
        self.field = field
        self._ordered = elements
        self.polys = [Polynomial._raw(field, dict(g.terms)) for g in elements]

    def __iter__(self):
        return iter(self.polys)

    def __len__(self):
        return len(self.polys)

    def leading_monomials(self):
        return [g.lm for g in self._ordered]

    def is_unit(self):
        return any(lm == (0, 0, 0) for lm in self.leading_monomials())

    def reduce(self, f: Polynomial) -> Polynomial:
        if f.field != self.field:
            raise FieldMismatch("polynomial and basis over different fields")
        return Polynomial._raw(self.field, _reduce(self.field, f.terms, self._ordered, degrevlex_key))

    def contains(self, f: Polynomial) -> bool:
        return self.reduce(f).is_zero()

    def __repr__(self):
        return "GroebnerBasis[" + ", ".join(str(p) for p in self.polys) + "]"


def buchberger(ideal) -> GroebnerBasis:
    gens = ideal.generators if isinstance(ideal, IdealSpec) else list(ideal)
    if not gens:
        raise ValueError("empty generator list")
    F = gens[0].field
    for g in gens:
        if g.field != F:
            raise FieldMismatch("generators over different fields")
    return GroebnerBasis(F, groebner_terms(F, [g.terms for g in gens], degrevlex_key))


def _as_basis(G) -> GroebnerBasis:
    return G if isinstance(G, GroebnerBasis) else buchberger(G)


def normal_form(f: Polynomial, G) -> Polynomial:
    return _as_basis(G).reduce(f)


def quotient_basis(G) -> list[tuple]:
    """Standard monomials of k[x,y,z]/I, sorted by degree then degrevlex descending."""
    G = _as_basis(G)
    if G.is_unit():
        return []
    lms = G.leading_monomials()
    for v in range(3):
        if not any(lm[v] > 0 and sum(lm) == lm[v] for lm in lms):
            raise NotArtinian(f"no pure power of {'xyz'[v]} among leading monomials")
    std = []
    seen = {(0, 0, 0)}
    frontier = [(0, 0, 0)]
    while frontier:
        nxt = []
        for e in frontier:
            if any(_divides(lm, e) for lm in lms):
                continue
            std.append(e)
            for v in range(3):
                u = list(e)
                u[v] += 1
                u = tuple(u)
                if u not in seen:
                    seen.add(u)
                    nxt.append(u)
        frontier = nxt
    std.sort(key=lambda e: (sum(e), tuple(-x for x in degrevlex_key(e)[1:])))
    return std


def is_artinian(G) -> bool:
    try:
        quotient_basis(G)
        return True
    except NotArtinian:
        return False


def is_regular_sequence(polys) -> bool:
    """Three elements of k[x,y,z] form a regular sequence iff the quotient is artinian."""
    polys = list(polys)
    if len(polys) != 3 or any(p.is_zero() for p in polys):
        return False
    G = buchberger(polys)
    if G.is_unit():
        return False
    return is_artinian(G)


def ideal_contains(G, polys) -> bool:
    G = _as_basis(G)
    return all(G.contains(p) for p in polys)


# ---------------------------------------------------------------------------
# intersections and colon ideals via elimination


def _elim_key(e):
    # e = (t, x, y, z); any monomial with t beats every t-free one
    return (e[0],) + degrevlex_key(e[1:])


def _with_t(terms, tpow=0):
    return {(tpow,) + e: c for e, c in terms.items()}


def intersect_terms(F: Field, A, B):
    """Generators (term dicts in x,y,z) of (A) ∩ (B) for term-dict lists A, B."""
    one_minus_t = {(0, 0, 0, 0): F.one, (1, 0, 0, 0): F.neg(F.one)}
    gens = [_with_t(a, 1) for a in A if a]
    from .poly import terms_mul

    gens += [terms_mul(F, _with_t(b), one_minus_t) for b in B if b]
    gb = groebner_terms(F, gens, _elim_key)
    return [{e[1:]: c for e, c in g.terms.items()} for g in gb if g.lm[0] == 0]


def intersect(I, J) -> list[Polynomial]:
    I = I.generators if isinstance(I, IdealSpec) else list(I)
    J = J.generators if isinstance(J, IdealSpec) else list(J)
    F = I[0].field
    out = intersect_terms(F, [p.terms for p in I], [p.terms for p in J])
    return [Polynomial._raw(F, t) for t in out]


def _exact_divide(F: Field, num: dict, den: dict) -> dict:
    """Quotient num/den, which must be exact."""
    q = {}
    r = dict(num)
    dlm = max(den, key=degrevlex_key)
    dlc = den[dlm]
    while r:
        lm = max(r, key=degrevlex_key)
        if not _divides(dlm, lm):
            raise ArithmeticError("inexact division")
        mono = _quo(lm, dlm)
        c = F.div(r[lm], dlc)
        q[mono] = c
        r = terms_add(F, r, terms_shift(F, den, mono, F.neg(c)))
    return q


def colon_single(X, g: Polynomial) -> list[Polynomial]:
    """Generators of (X : g) = ((X) ∩ (g)) / g."""
    X = X.generators if isinstance(X, IdealSpec) else list(X)
    F = g.field
    if g.is_zero():
        return [Polynomial.constant(F, 1)]
    inter = intersect_terms(F, [p.terms for p in X], [g.terms])
    return [Polynomial._raw(F, _exact_divide(F, h, g.terms)) for h in inter]


def colon_ideal(X, I, check_containment=True) -> IdealSpec:
    """(X : I) = ∩_g (X : g) over the generators g of I.

    The result is given by its reduced Groebner basis; the unit ideal is [1].
    """
    Xg = X.generators if isinstance(X, IdealSpec) else list(X)
    Ig = I.generators if isinstance(I, IdealSpec) else list(I)
    F = Xg[0].field
    if any(p.field != F for p in Xg + Ig):
        raise FieldMismatch("ideals over different fields")
    if check_containment:
        GI = buchberger(Ig)
        for p in Xg:
            if not GI.contains(p):
                raise ContainmentViolation(f"{p} is not in the second ideal")
    acc = None
    for g in Ig:
        if g.is_zero():
            continue
        part = [p.terms for p in colon_single(Xg, g)]
        acc = part if acc is None else intersect_terms(F, acc, part)
    if acc is None:
        return IdealSpec(F, [Polynomial.constant(F, 1)])
    gb = groebner_terms(F, acc, degrevlex_key)
    polys = [Polynomial._raw(F, dict(h.terms)) for h in gb]
    return IdealSpec(F, sort_generators(polys))


def sort_generators(polys):
    """Degree ascending, then degrevlex descending on leading monomials."""
    return sorted(polys, key=lambda p: (p.degree(), tuple(-a for a in degrevlex_key(p.leading_monomial())[1:])))


def minimal_generators(ideal) -> list[Polynomial]:
    """A minimal generating set of a homogeneous ideal (greedy by degree)."""
    gens = ideal.generators if isinstance(ideal, IdealSpec) else list(ideal)
    gens = [g for g in gens if not g.is_zero()]
    if not all(g.is_homogeneous() for g in gens):
        raise ValueError("minimal_generators expects homogeneous generators")
    gens = sorted(gens, key=lambda g: (g.degree(), degrevlex_key(g.leading_monomial())))
    chosen = []
    G = None
    for g in gens:
        if G is not None and G.contains(g):
            continue
        chosen.append(g)
        G = buchberger(chosen)
    return sort_generators(chosen)

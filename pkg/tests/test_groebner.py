import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from torlink.errors import ContainmentViolation, FieldMismatch, NotArtinian
from torlink.exactla import GF, QQ
from torlink.groebner import (
    buchberger,
    colon_ideal,
    ideal_contains,
    intersect,
    is_artinian,
    is_regular_sequence,
    minimal_generators,
    normal_form,
    quotient_basis,
)
from torlink.poly import Polynomial, parse_polynomial

F101 = GF(101)


def P(text, field=QQ):
    return parse_polynomial(text, field)


def sympy_basis(texts, field):
    opts = {"order": "grevlex"}
    if field != QQ:
        opts["modulus"] = field.characteristic
    G = sympy.groebner([oracles.sym(t) for t in texts], *oracles.GENS, **opts)
    return {sympy.Poly(g, *oracles.GENS, **({"modulus": field.characteristic} if field != QQ else {})) for g in G.exprs}


def ours_as_sympy(G, field):
    opts = {"modulus": field.characteristic} if field != QQ else {}
    out = set()
    for g in G:
        expr = oracles.sym(str(g))
        poly = sympy.Poly(expr, *oracles.GENS, **opts)
        out.add(poly.monic())
    return out


def forms(field, degree):
    monos = oracles.monomials(degree)
    return st.lists(st.integers(-3, 3), min_size=len(monos), max_size=len(monos)).map(
        lambda cs: Polynomial(field, {m: c for m, c in zip(monos, cs)})
    )


def test_small_bases():
    G = buchberger([P("x*y - z"), P("y^2 - x")])
    assert all(g.leading_coefficient() == 1 for g in G)
    assert G.contains(P("x*y^2 - y*z"))
    assert not G.contains(P("x"))
    assert normal_form(P("x*y"), G) == P("z")
    with pytest.raises(FieldMismatch):
        buchberger([P("x"), P("y", F101)])


def test_quotient_basis_and_artinian():
    G = buchberger([P("x^2"), P("y^2"), P("z^2")])
    assert len(quotient_basis(G)) == 8
    assert quotient_basis(G)[0] == (0, 0, 0)
    assert not is_artinian(buchberger([P("x"), P("y")]))
    with pytest.raises(NotArtinian):
        quotient_basis(buchberger([P("x*y"), P("z")]))
    assert is_regular_sequence([P("x^2"), P("y^2"), P("z^2")])
    assert not is_regular_sequence([P("x^2"), P("x*y"), P("z")])


@pytest.mark.parametrize("field", [QQ, F101], ids=str)
@settings(max_examples=15)
@given(data=st.data())
def test_basis_matches_sympy(field, data):
    d1, d2, d3 = data.draw(st.tuples(*[st.integers(1, 3)] * 3))
    gens = [data.draw(forms(field, d)) for d in (d1, d2, d3)]
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return
    texts = [str(g) for g in gens]
    mine = ours_as_sympy(buchberger(gens), field)
    theirs = {p.monic() for p in sympy_basis(texts, field)}
    assert mine == theirs


def test_intersect_monomial():
    got = buchberger(intersect([P("x^2"), P("y")], [P("x*y"), P("z")]))
    want = buchberger([P("x*y"), P("x^2*z"), P("y*z")])
    assert got.polys == want.polys


def test_colon_examples():
    X = [P("x^2"), P("y^2"), P("z^2")]
    assert colon_ideal(X, X).generators == [P("1")]
    with pytest.raises(ContainmentViolation):
        colon_ideal(X, [P("x")])
    J = colon_ideal(X, [P("x"), P("y"), P("z")], check_containment=False)
    assert ideal_contains(buchberger(J), [P("x*y*z")])


@settings(max_examples=10)
@given(data=st.data())
def test_colon_matches_linear_algebra(data):
    # X a complete intersection of quadrics, I = X + one extra form
    extra_deg = data.draw(st.integers(1, 2))
    extra = data.draw(forms(QQ, extra_deg))
    X = [P("x^2"), P("y^2 + x*z"), P("z^2")]
    I = X + ([extra] if not extra.is_zero() else [])
    J = colon_ideal(X, I)
    texts = [str(g) for g in J.generators]
    top = 4  # S/X vanishes from degree 4 on
    want = oracles.colon_pieces([str(g) for g in X], [str(g) for g in I], top)
    got = [len(oracles.monomials(d)) - h for d, h in enumerate(oracles.hilbert_function(texts, top))]
    assert got == want


def test_minimal_generators():
    gens = [P("x^2"), P("x^2*y"), P("y^2"), P("x^2 + y^2")]
    assert minimal_generators(gens) == [P("x^2"), P("y^2")]

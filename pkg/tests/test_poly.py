import pytest
from hypothesis import given
from hypothesis import strategies as st

from torlink.errors import FieldMismatch, ParseError
from torlink.exactla import GF, QQ
from torlink.poly import (
    Polynomial,
    degrevlex_key,
    format_ideal,
    monomials_of_degree,
    parse_ideal,
    parse_polynomial,
    read_ideal,
)

F101 = GF(101)


def polys(field):
    term = st.tuples(st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3)), st.integers(-5, 5))
    return st.lists(term, max_size=5).map(lambda ts: Polynomial(field, dict(ts)))


def test_parse_basic():
    p = parse_polynomial("2/3*x^2*y - z + 1")
    assert p.terms == {(2, 1, 0): QQ(2) / 3, (0, 0, 1): -1, (0, 0, 0): 1}
    assert str(p) == "2/3*x^2*y - z + 1"
    assert parse_polynomial("(x+y)^2") == parse_polynomial("x^2 + 2*x*y + y^2")
    assert parse_polynomial("x y") == parse_polynomial("x*y")
    assert parse_polynomial("-x", F101).terms == {(1, 0, 0): 100}


def test_parse_errors_carry_position():
    with pytest.raises(ParseError) as e:
        parse_polynomial("x^2 + * y")
    assert e.value.col == 7
    with pytest.raises(ParseError) as e:
        parse_ideal("ring Q[x,y,z]\nideal: x^2, y^^2")
    assert (e.value.line, e.value.col) == (2, 15)
    with pytest.raises(ParseError):
        parse_polynomial("w + 1")
    with pytest.raises(ParseError):
        parse_polynomial("x^-1")


def test_parse_ideal_file_format():
    I = parse_ideal("# comment\nring F101[x,y,z]\nideal: x^2, y^2,\n  z^2  # tail\n", "ci")
    assert I.field == F101 and len(I.generators) == 3 and I.name == "ci"
    assert I.is_homogeneous()
    again = parse_ideal(format_ideal(I))
    assert again.generators == I.generators and again.field == I.field
    for bad in ["ideal: x", "ring R[x,y,z]\nideal: x", "ring Q[x,y,z]\n", "ring Q[x,y,z]\nideal: ,"]:
        with pytest.raises(ParseError):
            parse_ideal(bad)


def test_field_override_and_default_prime(monkeypatch):
    text = "ring Fp[x,y,z]\nideal: x^2, 103*y"
    assert parse_ideal(text).field == F101
    assert parse_ideal(text).generators[1].terms == {(0, 1, 0): 2}
    assert parse_ideal(text, field=QQ).field == QQ
    monkeypatch.setenv("TORLINK_FIELD", "F7")
    assert parse_ideal(text).field == GF(7)


def test_read_ideal_corpus_file(tmp_path):
    path = tmp_path / "t.ideal"
    path.write_text("ring Q[x,y,z]\nideal: x^2, y^2, z^2, x*y*z\n")
    I = read_ideal(path)
    assert I.name == "t" and len(I.generators) == 4
    with pytest.raises(Exception):
        read_ideal(tmp_path / "missing.ideal")


def test_field_mismatch():
    with pytest.raises(FieldMismatch):
        parse_polynomial("x", QQ) + parse_polynomial("x", F101)


def test_monomials_and_order():
    assert len(monomials_of_degree(3)) == 10
    # degrevlex: x*z < y^2 in degree 2, since the last variable breaks ties
    assert degrevlex_key((0, 2, 0)) > degrevlex_key((1, 0, 1))
    assert parse_polynomial("x*z + y^2").leading_monomial() == (0, 2, 0)


@pytest.mark.parametrize("field", [QQ, F101], ids=str)
@given(data=st.data())
def test_ring_axioms(field, data):
    a, b, c = (data.draw(polys(field)) for _ in range(3))
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a - a).is_zero()


@pytest.mark.parametrize("field", [QQ, F101], ids=str)
@given(data=st.data())
def test_print_parse_round_trip(field, data):
    p = data.draw(polys(field))
    assert parse_polynomial(str(p), field) == p

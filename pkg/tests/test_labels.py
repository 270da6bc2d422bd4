import pytest
from hypothesis import given

from strategies import classes
from torlink.errors import ParseError
from torlink.labels import B, C3, G, H, T, ClassLabel, parse_label


def test_strings():
    assert [str(x) for x in (B(), C3(), T(), G(5), H(2, 1))] == ["B", "C(3)", "T", "G(5)", "H(2,1)"]


def test_parse_variants():
    assert parse_label("C3") == parse_label("C(3)") == C3()
    assert parse_label(" H( 2 , 1 ) ") == H(2, 1)
    for bad in ["H(1)", "G(1)", "X", "G(-2)"]:
        with pytest.raises(ParseError):
            parse_label(bad)


def test_constructor_guards():
    with pytest.raises(ValueError):
        ClassLabel("Q")
    with pytest.raises(ValueError):
        G(1)


@given(cls=classes())
def test_parse_round_trip(cls):
    lab = cls[0]
    assert parse_label(str(lab)) == lab

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from torlink.errors import ContainmentViolation, NotArtinian
from torlink.exactla import GF, QQ
from torlink.gen import random_artinian_ideal
from torlink.koszul import koszul_homology
from torlink.poly import parse_ideal, parse_polynomial, read_ideal
from torlink.toralg import invariants_pqr, validate
from torlink.verify import corpus_paths

# Betti numbers of the shipped corpus over Q, from the sympy oracle
FROZEN = {
    "b52": (1, 5, 6, 2),
    "b63": (1, 6, 8, 3),
    "ci": (1, 3, 3, 1),
    "g5": (1, 5, 5, 1),
    "h00_55": (1, 5, 9, 5),
    "h00_74": (1, 7, 10, 4),
    "h01": (1, 7, 9, 3),
    "h10": (1, 5, 7, 3),
    "h11": (1, 7, 10, 4),
    "h11_54": (1, 5, 8, 4),
    "h12": (1, 6, 7, 2),
    "h20": (1, 5, 8, 4),
    "h20_65": (1, 6, 10, 5),
    "h21a": (1, 5, 7, 3),
    "h21b": (1, 5, 7, 3),
    "h21c": (1, 5, 7, 3),
    "h22": (1, 6, 8, 3),
    "h30": (1, 4, 7, 4),
    "h31": (1, 5, 8, 4),
    "h32": (1, 4, 5, 2),
    "h32_64": (1, 6, 9, 4),
    "h41": (1, 5, 9, 5),
    "h43": (1, 5, 7, 3),
    "max": (1, 3, 3, 1),
    "msq": (1, 6, 8, 3),
    "t4": (1, 4, 6, 3),
    "t43": (1, 4, 6, 3),
}

CORPUS = {p.stem: p for p in corpus_paths()}


def ideal(text, field="Q"):
    return parse_ideal(f"ring {field}[x,y,z]\nideal: {text}")


@pytest.mark.parametrize("name", sorted(FROZEN))
def test_corpus_betti_frozen(name):
    K = koszul_homology(read_ideal(CORPUS[name]))
    assert K.betti == FROZEN[name]
    validate(K.algebra)


@pytest.mark.parametrize("name", ["ci", "g5", "t4"])
def test_field_variants_agree(name):
    # the F101 copies share Betti numbers and (p, q, r) with the Q originals
    a = koszul_homology(read_ideal(CORPUS[name]))
    b = koszul_homology(read_ideal(CORPUS[name + "_f101"]))
    assert a.betti == b.betti
    assert invariants_pqr(a.algebra) == invariants_pqr(b.algebra)


@settings(max_examples=8)
@given(seed=st.integers(0, 2**32))
def test_betti_live_oracle(seed):
    I = random_artinian_ideal(4, 2, QQ, seed)
    assert koszul_homology(I).betti == oracles.koszul_betti([str(g) for g in I.generators])


def test_reference_products():
    # (x,y,z)^2 is Golod: every product in positive degree vanishes
    assert invariants_pqr(koszul_homology(ideal("x^2, x*y, x*z, y^2, y*z, z^2")).algebra) == (0, 0, 0)
    assert invariants_pqr(koszul_homology(ideal("x^2, y^2, z^2")).algebra) == (3, 1, 3)
    assert invariants_pqr(koszul_homology(ideal("x^2, y^2, z^2, x*y*z")).algebra) == (3, 0, 0)


def test_non_minimal_generators_are_pruned():
    K = koszul_homology(ideal("x^2, y^2, z^2, x^2 + y^2, x^3"))
    assert K.betti == (1, 3, 3, 1)
    assert len(K.generators) == 3


def test_rejects_non_artinian():
    with pytest.raises(NotArtinian):
        koszul_homology(ideal("x^2, x*y"))


def test_coordinates():
    K = koszul_homology(ideal("x^2, y^2, z^2, x*y*z"))
    f = K.generator_of([1, 2, 0, 3])
    assert K.coordinates(f) == [1, 2, 0, 3]
    # multiples of generators live in M*I and have zero coordinates
    assert K.coordinates(parse_polynomial("x^3 + y^2*z")) == [0, 0, 0, 0]
    with pytest.raises(ContainmentViolation):
        K.coordinates(parse_polynomial("x*y"))


def test_prime_field_pipeline():
    K = koszul_homology(ideal("x^2, y^2, z^2, x*y*z", "F101"))
    assert K.algebra.field == GF(101)
    assert K.betti == (1, 4, 6, 3)

import pytest

from torlink.errors import DimensionallyInvalid
from torlink.exactla import GF, QQ
from torlink.gen import check_dimensions, normal_form_table, random_artinian_ideal, scramble
from torlink.groebner import buchberger, is_artinian
from torlink.labels import B, C3, G, H, T


def test_check_dimensions():
    check_dimensions(C3(), 3, 1)
    check_dimensions(H(6, 5), 7, 5)
    for lab, m, n in [(C3(), 4, 1), (G(6), 5, 2), (H(4, 0), 4, 2), (H(3, 3), 4, 2)]:
        with pytest.raises(DimensionallyInvalid):
            check_dimensions(lab, m, n)


def test_normal_form_products():
    A = normal_form_table(H(2, 1), 5, 3)
    e = lambda k: [1 if i == k else 0 for i in range(5)]
    f = lambda k: [1 if i == k else 0 for i in range(7)]
    assert A.prod11(e(2), e(0)) == f(0)
    assert A.prod12(e(2), f(2)) == [1, 0, 0]
    assert A.prod12(e(0), f(0)) == [0, 0, 0]


def test_scramble_is_deterministic():
    A = normal_form_table(B(), 6, 3, GF(101))
    assert scramble(A, 5)[0] == scramble(A, 5)[0]
    assert scramble(A, 5)[0] != scramble(A, 6)[0]


@pytest.mark.parametrize("F", [QQ, GF(101)], ids=str)
def test_random_artinian_ideal(F):
    for seed in range(10):
        I = random_artinian_ideal(5, 3, F, seed)
        assert I.field == F and I.is_homogeneous()
        assert is_artinian(buchberger(I))
    assert random_artinian_ideal(5, 3, F, 1).generators == random_artinian_ideal(5, 3, F, 1).generators
    with pytest.raises(ValueError):
        random_artinian_ideal(2, 3, F)

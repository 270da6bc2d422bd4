from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from torlink.errors import ParseError, SingularMatrix
from torlink.exactla import (
    GF,
    QQ,
    LinearSolver,
    Matrix,
    default_field,
    default_prime,
    extend_to_basis,
    field_from_name,
    inverse,
    is_invertible,
    kernel_basis,
    rank,
    rref,
    solve,
)

FIELDS = [QQ, GF(101), GF(2)]


def small_matrix(field):
    return st.integers(1, 5).flatmap(
        lambda r: st.integers(1, 5).flatmap(
            lambda c: st.lists(st.lists(st.integers(-4, 4), min_size=c, max_size=c), min_size=r, max_size=r)
        )
    ).map(lambda rows: Matrix(field, rows))


def test_field_arithmetic():
    assert QQ.div(QQ(1), QQ(3)) == Fraction(1, 3)
    F = GF(7)
    assert F.mul(F(3), F.inv(F(3))) == 1
    assert F(-1) == 6
    assert F.symmetric(F(6)) == -1
    with pytest.raises(ZeroDivisionError):
        F.inv(F(0))


def test_prime_field_rejects_composite():
    with pytest.raises(ValueError):
        GF(12)


def test_field_names(monkeypatch):
    assert field_from_name("Q") is QQ
    assert field_from_name("F101") == GF(101)
    assert field_from_name("F_7") == GF(7)
    with pytest.raises(ParseError):
        field_from_name("R")
    monkeypatch.setenv("TORLINK_FIELD", "F13")
    assert default_prime() == 13
    assert field_from_name("Fp") == GF(13)
    assert default_field() == GF(13)
    monkeypatch.setenv("TORLINK_FIELD", "Q")
    assert default_field() is QQ
    monkeypatch.delenv("TORLINK_FIELD")
    assert default_field() == GF(101)


def test_rref_and_rank():
    M = Matrix(QQ, [[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    R, piv = rref(M)
    assert piv == [0, 1]
    assert R.rows[0] == (1, 0, 1) and R.rows[1] == (0, 1, 1)
    assert rank(M) == 2
    # mod 2 the first two rows reduce to (1,0,1) and 0
    assert rank(Matrix(GF(2), [[1, 2, 3], [2, 4, 6], [1, 0, 1]])) == 1


def test_kernel_solve_inverse():
    M = Matrix(QQ, [[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    ker = kernel_basis(M)
    assert len(ker) == 1
    assert M.apply(ker[0]) == [0, 0, 0]
    x = solve(M, [6, 12, 2])
    assert M.apply(x) == [6, 12, 2]
    assert solve(M, [1, 0, 0]) is None
    with pytest.raises(SingularMatrix):
        inverse(M)
    N = Matrix(GF(101), [[2, 1], [1, 1]])
    assert N @ inverse(N) == Matrix.identity(GF(101), 2)
    assert is_invertible(N) and not is_invertible(M)


def test_linear_solver_reuse():
    M = Matrix(QQ, [[1, 0], [0, 1], [1, 1]])
    S = LinearSolver(M)
    assert S.rank == 2
    assert S([1, 2, 3]) == [1, 2]
    assert S([1, 2, 4]) is None
    with pytest.raises(ValueError):
        S([1, 2])


def test_extend_to_basis():
    added = extend_to_basis(QQ, [[1, 1, 0]], 3)
    assert len(added) == 2
    with pytest.raises(ValueError):
        extend_to_basis(QQ, [[1, 0], [2, 0]], 2)


@pytest.mark.parametrize("field", FIELDS, ids=str)
@given(data=st.data())
def test_rank_nullity(field, data):
    M = data.draw(small_matrix(field))
    ker = kernel_basis(M)
    assert rank(M) + len(ker) == M.ncols
    for v in ker:
        assert all(c == 0 for c in M.apply(v))
    assert rank(M) == rank(M.transpose())


@pytest.mark.parametrize("field", FIELDS, ids=str)
@given(data=st.data())
def test_solve_consistent(field, data):
    M = data.draw(small_matrix(field))
    x = data.draw(st.lists(st.integers(-3, 3), min_size=M.ncols, max_size=M.ncols))
    b = M.apply([field(c) for c in x])
    y = LinearSolver(M).solve(b)
    assert y is not None and M.apply(y) == b

import sys
from fractions import Fraction

import pytest

sys.path.append('.')
# pylint: disable=import-error
from models.Arithmetic import (
    IntMat2,
    RatMat2,
    alpha,
    content,
    delta1,
    format_matrix,
    hnf_enumerate,
    hnf_reduce,
    is_hnf,
    lattice_basis,
    parse_matrix,
    primitive_rep,
)
from models.Errors import DomainError, FormatError
from models.helper.NumberTheoryHelper import extended_gcd, psi, sigma


def test_delta1_of_rational_diagonal():
    assert delta1(RatMat2(Fraction(1, 3), 0, 0, 2)) == 6


def test_alpha_clears_denominators_and_content():
    assert alpha(RatMat2(Fraction(1, 3), 0, 0, 2)) == 3
    assert alpha(IntMat2(2, 4, 6, 8)) == Fraction(1, 2)


def test_primitive_rep_sign_and_scale():
    rep = primitive_rep(IntMat2(-2, 0, 0, -4)).rep
    assert rep == IntMat2(1, 0, 0, 2)

    rep = primitive_rep(IntMat2(0, 1, -3, 0)).rep
    assert rep == IntMat2(0, -1, 3, 0)


def test_primitive_rep_needs_positive_determinant():
    with pytest.raises(DomainError) as exc_info:
        primitive_rep(IntMat2(0, 1, 1, 0))
    assert "is not in GL2+(Q)" in str(exc_info.value)


def test_content_of_zero_matrix():
    with pytest.raises(DomainError) as exc_info:
        content(IntMat2(0, 0, 0, 0))
    assert exc_info.value.args[0] == "zero matrix has no content"


@pytest.mark.parametrize(('m', 'expected'), [
    (IntMat2(0, -1, 1, 0), IntMat2(1, 0, 0, 1)),
    (IntMat2(1, 5, 0, 3), IntMat2(1, 2, 0, 3)),
    (IntMat2(2, 0, 1, 1), IntMat2(1, 1, 0, 2)),
    (IntMat2(3, 1, 5, 2), IntMat2(1, 0, 0, 1)),
    (IntMat2(-2, 0, 0, -1), IntMat2(2, 0, 0, 1)),
])
def test_hnf_reduce(m, expected):
    reduced = hnf_reduce(m)
    assert reduced == expected
    assert is_hnf(reduced)
    assert reduced.det == m.det


def test_hnf_reduce_is_invariant_under_sl2z():
    m = IntMat2(4, 3, 2, 5)
    gamma = IntMat2(2, 1, 7, 4)
    assert hnf_reduce(gamma @ m) == hnf_reduce(m)


@pytest.mark.parametrize('n', [1, 2, 4, 6, 12, 30, 97])
def test_hnf_enumerate_counts(n):
    assert len(list(hnf_enumerate(n))) == sigma(n)
    assert len(list(hnf_enumerate(n, primitive_only=True))) == psi(n)


def test_hnf_enumerate_order():
    assert [m.to_text() for m in hnf_enumerate(2)] == ["2,0;0,1", "1,0;0,2", "1,1;0,2"]


def test_lattice_basis():
    assert lattice_basis([(2, 0), (0, 2), (1, 1)]) == IntMat2(1, 1, 0, 2)
    assert lattice_basis([(12, 0), (0, 1), (4, 0), (0, 4)]) == IntMat2(4, 0, 0, 1)


def test_lattice_basis_needs_rank_two():
    with pytest.raises(DomainError):
        lattice_basis([(1, 2), (2, 4)])


def test_parse_matrix():
    assert parse_matrix("1,0;0,1") == IntMat2(1, 0, 0, 1)
    assert parse_matrix(" 2, -1 ; 0, 3 ") == IntMat2(2, -1, 0, 3)
    m = parse_matrix("1,1/2;0,1")
    assert isinstance(m, RatMat2)
    assert m.b == Fraction(1, 2)


@pytest.mark.parametrize('text', ["1,2;3", "1,2,3;4,5", "a,0;0,1", "1/0,0;0,1", "1;2", "1/-2,0;0,1", "1/+2,0;0,1"])
def test_parse_matrix_rejects_malformed(text):
    with pytest.raises(FormatError):
        parse_matrix(text)


def test_format_matrix():
    assert format_matrix(RatMat2(Fraction(1, 2), 0, 0, 1)) == "1/2,0;0,1"
    assert format_matrix(IntMat2(6, 0, 0, 1)) == "6,0;0,1"


@pytest.mark.parametrize(('a', 'b', 'g'), [
    (12, 18, 6),
    (-7, 3, 1),
    (5, -12, 1),
    (0, 4, 4),
])
def test_extended_gcd(a, b, g):
    x, y, result = extended_gcd(a, b)
    assert result == g
    assert x * a + y * b == g
    assert all(type(value) is int for value in (x, y, result))

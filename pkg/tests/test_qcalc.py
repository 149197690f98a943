from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qosp.qcalc import PolyBasis, jackson_matrix, mult_by_x_matrix, q_base, qint, qint_half
from qosp.scalar import T, LaurentPoly, RatFunc

q = q_base()
ONE = LaurentPoly.const(1, T)


@pytest.mark.parametrize("n", range(-8, 9))
def test_qint_recurrences(n):
    assert qint(n + 1) == 1 + q * qint(n)
    assert qint(n) * (1 - q) == 1 - q ** n


def test_qint_small_values():
    assert qint(0) == LaurentPoly.zero(T)
    assert qint(1) == ONE
    assert qint(3) == 1 + q + q ** 2
    assert qint(-2) == -(q ** -1) - q ** -2


@given(st.integers(-8, 8))
def test_qint_classical_limit(n):
    assert qint(n).evaluate({"t": 1}) == n
    assert qint(n, Fraction(1)) == n


def test_qint_fraction_base():
    assert qint(3, Fraction(2)) == 7
    assert qint(-1, Fraction(2)) == Fraction(-1, 2)


def test_qint_half_matches_integer_case():
    # even arguments reduce to ordinary q^2-integers
    for m in range(-4, 5):
        assert qint_half(2 * m, 2) == RatFunc(qint(m, q ** 2))
    # [-3/2]_{q^2} at q = 2
    assert qint_half(-3, 2).evaluate_square("t", 2) == Fraction(-7, 24)


def test_jackson_on_monomials():
    d = jackson_matrix(PolyBasis(3))
    assert d.shape == (4, 4)
    for k in range(1, 4):
        assert d[k - 1, k] == qint(k)
    assert all(d[i, 0] == 0 for i in range(4))


def test_jackson_custom_base():
    d = jackson_matrix(2, Fraction(3))
    assert d[1, 2] == 4


def test_mult_by_x():
    m = mult_by_x_matrix(1, 2)
    assert m.shape == (3, 2)
    assert m[1, 0] == 1 and m[2, 1] == 1
    with pytest.raises(ValueError):
        mult_by_x_matrix(2, 2)
    assert mult_by_x_matrix(2, 2, truncate=True)[2, 1] == 1


def test_jackson_times_x_commutation():
    # D (x f) - q x D f = f on P(n)
    n = 4
    x = mult_by_x_matrix(n, n, truncate=True)
    d = jackson_matrix(n)
    lhs = d @ x - (x @ d).scale(q)
    for i in range(n):
        assert lhs[i, i] == 1

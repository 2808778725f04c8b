from fractions import Fraction

import pytest

from resurgamma.coeffs import (LambdaPolynomial, as_rational, b_coeff, b_coeff_polynomial,
                               b_coeff_table, positive_rational, series_exp_kernel, stirling_gamma,
                               stirling_table)
from resurgamma.numerics import DomainError
from resurgamma.verify import TABLE_PRINTED

from utils import assert_digits


def test_low_order_polynomials():
    assert b_coeff_polynomial(0).coeffs == (1,)
    assert b_coeff_polynomial(1).coeffs == (0, -1)
    assert b_coeff_polynomial(2).coeffs == (0, -1, 2)
    assert b_coeff_polynomial(3).coeffs == (0, -1, 8, -6)
    assert str(b_coeff_polynomial(3)) == '−6λ³ + 8λ² − λ'
    assert str(b_coeff_polynomial(1)) == '−λ'


@pytest.mark.parametrize('n', range(1, 11))
def test_polynomial_shape(n):
    poly = b_coeff_polynomial(n)
    assert poly.degree == n, f'b_{n} has degree {poly.degree}'
    assert poly.poly.is_integral(), f'b_{n} has non-integer coefficients {poly.coeffs}'
    assert poly.poly.constant_term() == 0


def test_coefficient_values():
    assert b_coeff(0, 7) == 1
    assert b_coeff(1, 1) == -1
    assert b_coeff(2, 3) == 15
    assert b_coeff(3, 2) == -18
    assert b_coeff(2, Fraction(1, 2)) == 0


def test_kernel_series_starts_at_one():
    series = series_exp_kernel(1, 4)
    assert series[0] == 1
    # g(t) = 1 - (κ/2) t + ..., κ = λ/(λ+1)
    assert series[1] == Fraction(-1, 4)


@pytest.mark.parametrize('lam', [Fraction(1, 3), Fraction(1), Fraction(2), Fraction(5, 2)])
def test_recurrence_table_matches_series(lam):
    table = b_coeff_table(12, lam)
    for n in range(13):
        assert table.value(n) == b_coeff(n, lam), f'λ={lam}, n={n}'
        assert table.value(n) == b_coeff_polynomial(n).evaluate(lam), f'λ={lam}, n={n}'


def test_table_is_extended_in_place():
    lam = Fraction(3, 7)
    short = b_coeff_table(4, lam)
    longer = b_coeff_table(9, lam)
    assert longer.numerators[:5] == short.numerators
    assert longer.size == 10


def test_b100_small_lambda(context):
    lam = Fraction(1, 100)
    value = b_coeff(100, lam)
    mantissa, exponent = TABLE_PRINTED[(lam, 57)]['exact']
    assert_digits(context, context.mp.mpf(value.numerator) / value.denominator, mantissa, exponent, 45)
    assert b_coeff_table(100, lam).value(100) == value


def test_stirling_coefficients():
    assert stirling_table(3) == (Fraction(1), Fraction(-1, 12), Fraction(1, 288), Fraction(139, 51840))
    assert stirling_gamma(0).value == 1
    assert stirling_gamma(1).value == Fraction(-1, 12)
    assert stirling_gamma(5).value == stirling_table(5)[5]
    with pytest.raises(DomainError):
        stirling_gamma(-1)


def test_polynomial_serialization():
    poly = b_coeff_polynomial(3)
    data = poly.to_dict()
    assert data == {'n': 3, 'coeffs': ['0/1', '-1/1', '8/1', '-6/1']}


def test_polynomial_arithmetic():
    lam = LambdaPolynomial.variable()
    square = (lam + 1) ** 2
    assert square.coeffs == (1, 2, 1)
    assert (square - lam * lam).coeffs == (1, 2)
    assert square(Fraction(1, 2)) == Fraction(9, 4)
    assert LambdaPolynomial().pretty() == '0'


@pytest.mark.parametrize('raw, expected', [
    ('1/100', Fraction(1, 100)),
    ('0.05', Fraction(1, 20)),
    ('−3/4', Fraction(-3, 4)),
    (2, Fraction(2)),
    (0.5, Fraction(1, 2)),
])
def test_as_rational(raw, expected):
    assert as_rational(raw) == expected


@pytest.mark.parametrize('raw', ['one half', True, None, 1j])
def test_as_rational_rejects(raw):
    with pytest.raises(DomainError):
        as_rational(raw)


def test_invalid_arguments():
    with pytest.raises(DomainError):
        positive_rational(0)
    with pytest.raises(DomainError):
        b_coeff(-1, 1)
    with pytest.raises(DomainError):
        b_coeff(3, -2)
    with pytest.raises(DomainError):
        b_coeff_polynomial(2.0)

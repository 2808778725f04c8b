from fractions import Fraction

import pytest

from resurgamma.latecoeffs import (TABLE_CASES, gamma_ratios, late_bound_general, late_bound_large_lambda,
                                   late_coeff_approx, late_table, optimal_k)
from resurgamma.numerics import InvalidTruncationError, RegimeError
from resurgamma.phase import phase_data
from resurgamma.verify import TABLE_PRINTED

from utils import assert_close, assert_digits


def test_gamma_ratios():
    assert gamma_ratios(3, 2) == [1, Fraction(2, 5), Fraction(4, 15)]
    assert gamma_ratios(10, 0) == [1]


@pytest.mark.parametrize('lam, expected', [(Fraction(2), 57), (Fraction(5), 43), (Fraction(1, 100), 57)])
def test_optimal_k(context, lam, expected):
    k_terms = optimal_k(100, lam, context)
    assert k_terms == expected
    assert k_terms % 2 == 1


def test_optimal_k_needs_room(context):
    with pytest.raises(InvalidTruncationError):
        optimal_k(3, 1, context)
    assert optimal_k(4, 1, context) <= 3


def test_single_term(context):
    ctx = context.mp
    approx = late_coeff_approx(2, 1, 1, context)
    omega = phase_data(1, context).omega
    assert_close(approx.normalized_sum, ctx.sin(5 * omega / 2), 1e-70)
    assert_close(approx.approx_value, approx.prefactor * ctx.sin(5 * omega / 2), 1e-70)
    # b_2(-1) = 1
    assert approx.exact == 1
    assert approx.best_bound is None


@pytest.mark.parametrize('lam, k_terms', TABLE_CASES)
def test_table_values(fine_context, lam, k_terms):
    printed = TABLE_PRINTED[(lam, k_terms)]
    approx = late_coeff_approx(100, lam, k_terms, fine_context)
    assert_digits(fine_context, approx.exact, *printed['exact'], 45)
    assert_digits(fine_context, approx.approx_value, *printed['approximation'], 45)
    assert_digits(fine_context, approx.error, *printed['error'], 6)
    if 'bound_large_lambda' in printed:
        bound = late_bound_large_lambda(100, lam, k_terms, fine_context, absolute=True)
        assert_digits(fine_context, bound, *printed['bound_large_lambda'], 8)
    else:
        bound = late_bound_general(100, lam, k_terms, fine_context, absolute=True)
        assert_digits(fine_context, bound, *printed['bound_general'], 8)
    assert abs(approx.error) <= bound


@pytest.mark.parametrize('n, lam, k_terms', [
    (10, Fraction(2), 8),
    (20, Fraction(1), 10),
    (20, Fraction(1, 100), 5),
    (50, Fraction(5), 17),
])
def test_bounds_are_sound(context, n, lam, k_terms):
    approx = late_coeff_approx(n, lam, k_terms, context)
    assert abs(approx.remainder_true) <= approx.best_bound
    assert abs(approx.error) <= approx.absolute(approx.best_bound)


def test_large_lambda_bound_regime(context):
    with pytest.raises(RegimeError):
        late_bound_large_lambda(10, 1, 3, context)
    approx = late_coeff_approx(10, 1, 3, context)
    assert approx.bound_large_lambda is None
    assert approx.best_bound == approx.bound_general


def test_ranges(context):
    with pytest.raises(InvalidTruncationError):
        late_coeff_approx(100, 2, 100, context)
    with pytest.raises(InvalidTruncationError):
        late_coeff_approx(1, 2, 1, context)
    with pytest.raises(InvalidTruncationError):
        late_bound_general(10, 2, 1, context)
    with pytest.raises(InvalidTruncationError):
        late_bound_large_lambda(10, 2, 9, context)


def test_late_table(context):
    rows = late_table(context)
    assert len(rows) == 12
    assert [r.quantity for r in rows[:4]] == ['exact', 'approximation', 'error', 'bound_general']
    assert rows[4].lam == 2 and rows[7].quantity == 'bound_large_lambda'
    assert rows[11].quantity == 'bound_large_lambda'

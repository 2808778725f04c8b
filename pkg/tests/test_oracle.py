from fractions import Fraction

import pytest

from resurgamma.coeffs import b_coeff
from resurgamma.expansion import true_remainder
from resurgamma.numerics import DomainError, InvalidTruncationError, SectorError
from resurgamma.oracle import (b_coeff_from_remainders, b_coeff_integral, b_coeff_oracle, gammastar_oracle,
                               incgamma_oracle, remainder_integral, remainder_series)

from utils import assert_close


def test_incgamma_at_one(context):
    ctx = context.mp
    result = incgamma_oracle(1, 1, context)
    # Γ(-1, 1) = e^-1 - E_1(1)
    assert_close(result.value, ctx.mpc(ctx.exp(-1) - ctx.e1(1)), 1e-35)
    assert_close(result.value.real, ctx.mpf('0.148495506775922'), 1e-14)
    assert result.est_rel_err <= context.quad_rel_tol


@pytest.mark.parametrize('a, lam', [(3, 1), (10, Fraction(1, 2)), (25, 2), (complex(5, 2), Fraction(1, 2))])
def test_incgamma_against_mpmath(context, a, lam):
    ctx = context.mp
    a = ctx.mpc(a)
    lam_mp = ctx.mpf(lam.numerator) / lam.denominator if isinstance(lam, Fraction) else ctx.mpf(lam)
    expected = ctx.gammainc(-a, lam_mp * a)
    assert_close(incgamma_oracle(a, lam, context).value, ctx.mpc(expected), 1e-30)


def test_incgamma_conjugate_symmetry(context):
    ctx = context.mp
    a = ctx.mpc(8, 3)
    upper_half = incgamma_oracle(a, 2, context).value
    lower_half = incgamma_oracle(ctx.conj(a), 2, context).value
    assert_close(lower_half, ctx.conj(upper_half), 1e-35)


@pytest.mark.parametrize('a', [-1, complex(0, 5), complex(-3, 1), complex(1, 200)])
def test_incgamma_sector(context, a):
    with pytest.raises(SectorError):
        incgamma_oracle(a, 1, context)


def test_gammastar(context):
    ctx = context.mp
    assert_close(gammastar_oracle(1, context), ctx.mpc(ctx.e / ctx.sqrt(2 * ctx.pi)), 1e-70)
    assert_close(gammastar_oracle(100, context), ctx.mpc(1 + ctx.mpf(1) / 1200), 1e-6)
    z = ctx.mpc(3, 4)
    assert_close(gammastar_oracle(ctx.conj(z), context), ctx.conj(gammastar_oracle(z, context)), 1e-70)
    assert gammastar_oracle(5, context).imag == 0
    with pytest.raises(DomainError):
        gammastar_oracle(0, context)
    with pytest.raises(DomainError):
        gammastar_oracle(-2, context)


@pytest.mark.parametrize('n, lam, radius', [
    (0, Fraction(2), None),
    (3, Fraction(2), None),
    (5, Fraction(1), None),
    (12, Fraction(1, 2), 1),
])
def test_b_coeff_oracle(context, n, lam, radius):
    ctx = context.mp
    exact = b_coeff(n, lam)
    oracle = b_coeff_oracle(n, lam, context, radius=radius)
    assert_close(oracle, ctx.mpf(exact.numerator) / exact.denominator, 1e-25, f'n={n} λ={lam}')


def test_b_coeff_oracle_vanishing_coefficient(context):
    # b_2(-1/2) = 2·(1/2)² - 1/2 = 0
    assert b_coeff(2, Fraction(1, 2)) == 0
    value = b_coeff_oracle(2, Fraction(1, 2), context)
    assert abs(value) < context.mp.mpf('1e-30')


@pytest.mark.parametrize('compute', [
    lambda c: incgamma_oracle(10, 1, c),
    lambda c: incgamma_oracle(c.mp.mpc(8, 3), Fraction(1, 2), c),
    lambda c: gammastar_oracle(c.mp.mpc(3, -4), c),
    lambda c: b_coeff_oracle(5, Fraction(2), c),
])
def test_oracles_stable_under_precision_doubling(context, compute):
    value = compute(context)
    doubled = compute(context.with_precision(2 * context.precision_bits))
    assert_close(value, context.mp.mpc(doubled), 1e-30)


def test_b_coeff_oracle_radius(context):
    with pytest.raises(DomainError, match='radius'):
        b_coeff_oracle(2, 1, context, radius=100)
    with pytest.raises(DomainError):
        b_coeff_oracle(-1, 1, context)


def test_remainder_integral_matches_subtraction(context):
    direct = remainder_integral(10, 1, 5, context)
    subtracted = true_remainder(10, 1, 5, context)
    assert_close(direct, subtracted, 1e-25)


def test_remainder_integral_arguments(context):
    ctx = context.mp
    with pytest.raises(InvalidTruncationError):
        remainder_integral(10, 1, 0, context)
    with pytest.raises(SectorError):
        remainder_integral(10 * ctx.expj(ctx.mpf('2.5')), 1, 3, context)


@pytest.mark.parametrize('n, lam', [(1, Fraction(1)), (3, Fraction(2)), (4, Fraction(1, 3))])
def test_b_coeff_integral(context, n, lam):
    ctx = context.mp
    exact = b_coeff(n, lam)
    assert_close(b_coeff_integral(n, lam, context), ctx.mpf(exact.numerator) / exact.denominator, 1e-25)


def test_b_coeff_integral_needs_positive_n(context):
    with pytest.raises(DomainError):
        b_coeff_integral(0, 1, context)


@pytest.mark.slow
def test_b_coeff_from_remainders(context):
    ctx = context.mp
    for n in (1, 2, 3):
        exact = b_coeff(n, 2)
        value = b_coeff_from_remainders(n, 30, 2, context)
        assert_close(value, ctx.mpc(ctx.mpf(exact.numerator) / exact.denominator), 1e-10, f'n={n}')


@pytest.mark.slow
def test_saddle_sum(context):
    ctx = context.mp
    series = remainder_series(15, Fraction(1, 10), 3, 3, context)
    reference = true_remainder(15, Fraction(1, 10), 3, context)
    assert len(series.partial_sums) == 4
    assert series.tail_bound > 0
    difference = abs(series.partial_sums[-1] - reference)
    assert difference <= ctx.mpf('1e-6') * abs(reference) + series.tail_bound


def test_saddle_sum_needs_small_lambda(context):
    with pytest.raises(DomainError, match='W'):
        remainder_series(15, 1, 3, 2, context)

from fractions import Fraction

import pytest

from resurgamma.expansion import optimal_truncation, true_remainder
from resurgamma.hyper import ORDER_DRIFT_LIMIT, hyper_expand, improved_remainder_bound, order_estimate_check
from resurgamma.numerics import DomainError, InvalidTruncationError, SectorError
from resurgamma.phase import phase_data

from utils import assert_close


A, LAM = 10, Fraction(2)


@pytest.fixture
def n_opt(context):
    return optimal_truncation(A, LAM, context)


def test_no_terminants(context, n_opt):
    expansion = hyper_expand(A, LAM, n_opt, 0, context)
    assert expansion.terminant_sum == 0
    assert expansion.remainder_true == expansion.remainder_n
    assert_close(expansion.remainder_n, true_remainder(A, LAM, n_opt, context), 1e-60)


def test_decomposition(context, n_opt):
    expansion = hyper_expand(A, LAM, n_opt, 3, context)
    assert_close(expansion.remainder_true + expansion.terminant_sum, expansion.remainder_n, 1e-60)


def test_real_a_gives_conjugate_sums(context, n_opt):
    ctx = context.mp
    expansion = hyper_expand(A, LAM, n_opt, 2, context, with_true=False, with_bound=False)
    assert_close(expansion.terminant_sum_plus, ctx.conj(expansion.terminant_sum_minus), 1e-30)


def test_terminants_improve_on_optimal_truncation(context, n_opt):
    r_n = abs(true_remainder(A, LAM, n_opt, context))
    best = min(abs(hyper_expand(A, LAM, n_opt, k, context, with_bound=False).remainder_true)
               for k in range(2, 6))
    assert best < r_n / A


@pytest.mark.parametrize('k_terms', [0, 1, 2, 3, 5])
def test_bound_is_sound(context, n_opt, k_terms):
    expansion = hyper_expand(A, LAM, n_opt, k_terms, context)
    assert abs(expansion.remainder_true) <= expansion.remainder_bound


def test_bound_below_two_terms(context, n_opt):
    k1 = improved_remainder_bound(A, LAM, n_opt, 1, context)
    k2 = improved_remainder_bound(A, LAM, n_opt, 2, context)
    assert k1 >= k2


def test_sector_edge(context):
    ctx = context.mp
    omega = phase_data(LAM, context).omega
    inside = A * ctx.expj(ctx.pi - omega - ctx.mpf('1e-50'))
    assert improved_remainder_bound(inside, LAM, 20, 2, context) > 0
    beyond = A * ctx.expj(ctx.pi - omega + ctx.mpf('0.01'))
    with pytest.raises(SectorError):
        improved_remainder_bound(beyond, LAM, 20, 2, context)
    with pytest.raises(SectorError):
        hyper_expand(beyond, LAM, 20, 2, context)


def test_no_oracle_off_the_right_half_plane(context):
    ctx = context.mp
    expansion = hyper_expand(A * ctx.expj(2), LAM, 20, 2, context)
    assert expansion.remainder_true is None
    assert expansion.remainder_bound > 0


def test_arguments(context):
    with pytest.raises(InvalidTruncationError):
        hyper_expand(A, LAM, 5, 6, context)
    with pytest.raises(InvalidTruncationError):
        hyper_expand(A, LAM, 0, 0, context)
    with pytest.raises(InvalidTruncationError):
        improved_remainder_bound(A, LAM, 1, 0, context)
    with pytest.raises(DomainError):
        hyper_expand(0, LAM, 5, 2, context)


def test_order_check_needs_three_points(context):
    with pytest.raises(DomainError):
        order_estimate_check([10, 20, 20], LAM, 2, 0, context)


@pytest.mark.slow
@pytest.mark.parametrize('lam, k_terms, rho', [(Fraction(1), 2, 0), (Fraction(2), 3, 1)])
def test_order_ladder(context, lam, k_terms, rho):
    check = order_estimate_check([10, 20, 40], lam, k_terms, rho, context)
    assert check.passed, f'drift {check.drift:.3f} above {ORDER_DRIFT_LIMIT}'
    assert [p.n_terms for p in check.points] == sorted(p.n_terms for p in check.points)

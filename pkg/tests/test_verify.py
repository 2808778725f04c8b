from fractions import Fraction

import pytest

from resurgamma.numerics import DomainError
from resurgamma.verify import SUITES, CheckResult, _check_remainder_soundness, digits_agree, run_suite


def test_digits_agree(context):
    ctx = context.mp
    value = ctx.mpf('-0.3206813585776') * ctx.mpf(10) ** 90
    assert digits_agree(context, value, '-0.320681358577665', 90, 12)
    assert not digits_agree(context, value, '-0.320681358577665', 90, 14)


def test_check_result_text():
    assert str(CheckResult('coeffs', 'degree', True)) == 'PASS coeffs/degree'
    assert str(CheckResult('late', 'table', False, 'off by 1')) == 'FAIL late/table: off by 1'


def test_unknown_suite(context):
    with pytest.raises(DomainError, match='unknown suite'):
        run_suite('everything', context)


def test_suites_build_tasks():
    for name, build in SUITES.items():
        assert build(quick=True), name
        assert len(build(quick=False)) >= len(build(quick=True)), name


def test_quick_coefficient_suite(context):
    results = run_suite('coeffs', context, quick=True)
    failed = [str(r) for r in results if not r.passed]
    assert not failed, failed


@pytest.mark.slow
@pytest.mark.parametrize('suite', ['late', 'bounds', 'hyper', 'stokes', 'appendix'])
def test_quick_suites(context, suite):
    results = run_suite(suite, context, quick=True, workers=2)
    failed = [str(r) for r in results if not r.passed]
    assert results
    assert not failed, failed


@pytest.mark.slow
def test_realism_is_checked_off_the_sin_n_omega_zeros(context):
    # a=5, λ=1 stops at N=19, where |sin(Nω)| is small but |sin((N+1/2)ω)| is not
    results = _check_remainder_soundness(context, 5, Fraction(1))
    realism = [r for r in results if r.name.startswith('realism')]
    assert [r.name for r in realism] == ['realism a=5 λ=1 N=19']
    assert all(r.passed for r in results), [str(r) for r in results]

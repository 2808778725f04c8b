import pytest

from resurgamma.numerics import (PRECISION_ENV, DomainError, NumericOverflowError, PrecisionContext,
                                 convert_real, enclose, ensure_finite, erf_complex, gamma_real,
                                 lambert_w0, lower, upper, zeta_int)

from utils import assert_close


def test_default_context():
    context = PrecisionContext()
    assert context.precision_bits == 256
    assert context.quad_rel_tol == context.mp.ldexp(1, -128)
    assert context.mp.prec == 256
    assert context.iv.prec == 256


@pytest.mark.parametrize('kwargs', [
    {'precision_bits': 32},
    {'precision_bits': 128.0},
    {'quad_max_levels': 0},
    {'quad_rel_tol': 1},
    {'precision_bits': 128, 'quad_rel_tol': '1e-100'},
])
def test_context_validation(kwargs):
    with pytest.raises(DomainError):
        PrecisionContext(**kwargs)


def test_context_from_env():
    assert PrecisionContext.from_env({PRECISION_ENV: '320'}).precision_bits == 320
    assert PrecisionContext.from_env({}).precision_bits == 256
    # an explicit precision wins over the environment
    assert PrecisionContext.from_env({PRECISION_ENV: '320'}, precision_bits=128).precision_bits == 128
    with pytest.raises(DomainError, match=PRECISION_ENV):
        PrecisionContext.from_env({PRECISION_ENV: 'lots'})


def test_contexts_are_independent(context):
    fork = context.fork()
    assert fork == context
    assert fork.mp is not context.mp
    raised = context.at_least(512)
    assert raised.precision_bits == 512
    assert raised.quad_rel_tol == raised.mp.ldexp(1, -256)
    assert context.at_least(100) is context
    assert context.mp.prec == 256


def test_lambert_w0(context):
    ctx = context.mp
    for x in (ctx.exp(ctx.pi - 1), ctx.exp(-1), ctx.mpf(10)):
        w = lambert_w0(x, context)
        assert_close(w * ctx.exp(w), x, 1e-70)
    assert_close(lambert_w0(ctx.exp(ctx.pi - 1), context), ctx.mpf('1.64428'), 1e-5)
    assert_close(lambert_w0(ctx.exp(-1), context), ctx.mpf('0.2784645427610738'), 1e-15)
    assert_close(lambert_w0(-ctx.exp(-1), context), ctx.mpf(-1), 1e-30)
    with pytest.raises(DomainError):
        lambert_w0(-1, context)


def test_lambert_w0_residual_grid(context):
    ctx = context.mp
    lo = -ctx.exp(-1) + ctx.mpf('1e-6')
    grid = list(ctx.linspace(lo, 1000, 41)) + [ctx.mpf(10) ** k for k in range(-12, 3)]
    tol = 8 * ctx.ldexp(1, -context.precision_bits + 8)
    for x in grid:
        w = lambert_w0(x, context)
        assert w >= -1
        assert abs(w * ctx.exp(w) - x) <= tol * abs(x), f'x={ctx.nstr(x, 15)}'


@pytest.mark.parametrize('compute', [
    lambda c: lambert_w0('0.75', c),
    lambda c: erf_complex(c.mp.mpc('1.5', '-2.25'), c),
    lambda c: zeta_int(5, c),
    lambda c: gamma_real('50.5', c),
])
def test_precision_doubling_consistency(context, compute):
    value = compute(context)
    doubled = compute(context.with_precision(2 * context.precision_bits))
    tol = context.mp.ldexp(1, -context.precision_bits + 8)
    assert_close(value, context.mp.mpc(doubled), tol)


def test_erf_complex(context):
    ctx = context.mp
    assert_close(erf_complex(1, context).real, ctx.mpf('0.842700792949714869341220635083'), 1e-28)
    z = ctx.mpc('0.3', '-2.5')
    assert erf_complex(-z, context) == -erf_complex(z, context)
    assert erf_complex(0, context) == 0


def test_zeta_and_gamma(context):
    ctx = context.mp
    assert_close(zeta_int(2, context), ctx.pi ** 2 / 6, 1e-70)
    assert_close(gamma_real('0.5', context), ctx.sqrt(ctx.pi), 1e-70)
    with pytest.raises(DomainError):
        zeta_int(1, context)
    with pytest.raises(DomainError):
        gamma_real(0, context)


def test_enclose_contains_value(context):
    ctx = context.mp
    value = ctx.pi * 1000
    interval = enclose(context, value)
    assert lower(context, interval) <= value <= upper(context, interval)
    assert upper(context, interval) - lower(context, interval) < value * ctx.ldexp(1, -240)


def test_conversion_errors(context):
    ctx = context.mp
    with pytest.raises(DomainError, match='φ'):
        convert_real(context, complex(1, 2), 'φ')
    with pytest.raises(NumericOverflowError):
        ensure_finite(context, ctx.mpc(ctx.inf, 0))

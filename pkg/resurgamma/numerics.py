import os
import logging

from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cached_property

import mpmath

from mpmath.ctx_mp import MPContext
from mpmath.ctx_iv import MPIntervalContext


logger = logging.getLogger(__name__)

PRECISION_ENV = 'RESURGAMMA_DEFAULT_PRECISION'
DEFAULT_PRECISION = 256
MIN_PRECISION = 64


class ResurgammaError(Exception):
    pass


class DomainError(ResurgammaError, ValueError):
    pass


class InvalidTruncationError(DomainError):
    pass


class SectorError(DomainError):
    pass


class RegimeError(ResurgammaError):
    pass


class SingularError(ResurgammaError):
    pass


class ConvergenceError(ResurgammaError):
    pass


class NumericOverflowError(ResurgammaError, ArithmeticError):
    pass


@dataclass(frozen=True)
class PrecisionContext:
    '''Working precision and quadrature tolerances for one computation.

    Every floating evaluation in the package runs inside the mpmath
    contexts owned by an instance, never in the global ``mpmath.mp``.
    '''
    precision_bits: int = DEFAULT_PRECISION
    quad_rel_tol: object = None
    quad_max_levels: int = 8
    _ctxdata: dict = field(default_factory=dict, init=False, repr=False,
                           compare=False, hash=False)

    def __post_init__(self):
        if not isinstance(self.precision_bits, int) or self.precision_bits < MIN_PRECISION:
            raise DomainError(f'precision_bits must be an integer >= {MIN_PRECISION}, '
                              f'got {self.precision_bits!r}')
        if not isinstance(self.quad_max_levels, int) or self.quad_max_levels < 1:
            raise DomainError(f'quad_max_levels must be a positive integer, '
                              f'got {self.quad_max_levels!r}')
        floor = mpmath.ldexp(1, -self.precision_bits + 8)
        if self.quad_rel_tol is None:
            tol = mpmath.ldexp(1, -(self.precision_bits // 2))
        else:
            tol = mpmath.mpf(self.quad_rel_tol)
        if tol < floor or tol >= 1:
            raise DomainError(f'quad_rel_tol must lie in [2^({8 - self.precision_bits}), 1), '
                              f'got {self.quad_rel_tol!r}')
        object.__setattr__(self, 'quad_rel_tol', tol)

    @classmethod
    def from_env(cls, environ=None, **kwargs):
        environ = os.environ if environ is None else environ
        raw = environ.get(PRECISION_ENV)
        if raw is None or 'precision_bits' in kwargs:
            return cls(**kwargs)
        try:
            bits = int(raw)
        except ValueError:
            raise DomainError(f'{PRECISION_ENV} must be an integer number of bits, got {raw!r}')
        return cls(precision_bits=bits, **kwargs)

    @cached_property
    def mp(self):
        ctx = MPContext()
        ctx.prec = self.precision_bits
        return ctx

    @cached_property
    def iv(self):
        ctx = MPIntervalContext()
        ctx.prec = self.precision_bits
        return ctx

    @property
    def digits(self):
        '''Significant decimal digits worth printing at this precision.'''
        return max(int(self.precision_bits * 0.30102999566398120) - 2, 15)

    @property
    def eps(self):
        return mpmath.ldexp(1, -self.precision_bits)

    @property
    def quad_degree(self):
        '''tanh-sinh degree cap: quad_max_levels, raised to the usual degree for this precision.'''
        base = 4 + max(0, (self.precision_bits // 30).bit_length() - 1)
        return max(base + 2, self.quad_max_levels)

    def with_precision(self, bits):
        return replace(self, precision_bits=int(bits), quad_rel_tol=None)

    def at_least(self, bits):
        bits = int(bits)
        if bits <= self.precision_bits:
            return self
        logger.debug(f'raising working precision {self.precision_bits} -> {bits} bits')
        return self.with_precision(bits)

    def fork(self):
        '''A fresh context with the same settings (own mpmath state, for another thread).'''
        return replace(self, quad_rel_tol=self.quad_rel_tol)


def convert(context, x):
    '''Convert ints, Fractions, strings, floats, complex and mpmath numbers into context.mp.'''
    ctx = context.mp
    if isinstance(x, Fraction):
        return ctx.mpf(x.numerator) / x.denominator
    if isinstance(x, complex) or hasattr(x, '_mpc_'):
        return ctx.mpc(x)
    return ctx.convert(x)


def convert_real(context, x, name='value'):
    value = convert(context, x)
    if hasattr(value, '_mpc_'):
        if value.imag != 0:
            raise DomainError(f'{name} must be real, got {x!r}')
        value = value.real
    return value


def convert_complex(context, x):
    return context.mp.mpc(convert(context, x))


def ensure_finite(context, value, what='value'):
    ctx = context.mp
    parts = (value.real, value.imag) if hasattr(value, '_mpc_') else (value,)
    for part in parts:
        if ctx.isinf(part) or ctx.isnan(part):
            raise NumericOverflowError(f'{what} is not finite')
    return value


def lambert_w0(x, context):
    '''lambert_w0 returns the principal branch W(x) for x >= -1/e'''
    ctx = context.mp
    x = convert_real(context, x, 'x')
    branch_point = -ctx.exp(-1)
    if x < branch_point:
        if branch_point - x > ctx.ldexp(abs(branch_point), -context.precision_bits + 8):
            raise DomainError(f'lambert_w0 requires x >= -1/e, got {ctx.nstr(x, 15)}')
        return ctx.mpf(-1)
    w = ctx.lambertw(x)
    if hasattr(w, '_mpc_'):
        w = w.real
    return ensure_finite(context, w, 'lambert_w0')


def erf_complex(z, context):
    '''erf_complex evaluates erf at complex z, exactly odd in its argument'''
    ctx = context.mp
    z = convert_complex(context, z)
    flip = z.real < 0 or (z.real == 0 and z.imag < 0)
    if flip:
        z = -z
    value = ctx.mpc(ctx.erf(z))
    ensure_finite(context, value, 'erf_complex')
    return -value if flip else value


def zeta_int(k, context):
    if not isinstance(k, int) or k < 2:
        raise DomainError(f'zeta_int requires an integer K >= 2, got {k!r}')
    return context.mp.zeta(k)


def gamma_real(x, context):
    ctx = context.mp
    x = convert_real(context, x, 'x')
    if x <= 0:
        raise DomainError(f'gamma_real requires x > 0, got {ctx.nstr(x, 15)}')
    return ensure_finite(context, ctx.gamma(x), 'gamma_real')


# Interval helpers. Bounds are assembled in context.iv and reported
# through their upper endpoint.

def enclose(context, value, ulps=16):
    '''Interval around a real mp value computed with a few ulps of error.'''
    ctx = context.mp
    value = ctx.mpf(value)
    width = ctx.ldexp(abs(value), -context.precision_bits + 4) * ulps
    width += ctx.ldexp(1, -4 * context.precision_bits)
    return context.iv.mpf([value - width, value + width])


def exact_interval(context, x):
    '''Interval for an exact int or Fraction.'''
    iv = context.iv
    if isinstance(x, Fraction):
        return iv.mpf(x.numerator) / x.denominator
    return iv.mpf(x)


def upper(context, x):
    '''Upper endpoint of a real interval, as an mp number.'''
    return context.mp.make_mpf(x._mpi_[1])


def lower(context, x):
    return context.mp.make_mpf(x._mpi_[0])

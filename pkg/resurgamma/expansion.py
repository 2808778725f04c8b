'''The truncated asymptotic expansion of Γ(-a, λa) and its true remainder.'''
import logging

from dataclasses import dataclass

from .bounds import remainder_bound
from .coeffs import b_coeff_table, positive_rational
from .numerics import (DomainError, InvalidTruncationError, RegimeError, SectorError,
                       SingularError, convert, convert_complex, ensure_finite)
from .oracle import incgamma_oracle
from .phase import phase_data


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ExpansionResult:
    a: object
    lam: object
    n_terms: int
    partial_sum: object      # sum_{n<N} a^n b_n(-λ)/(z+a)^(2n+1)
    prefactor: object        # z^-a e^-z
    value: object
    remainder_bound: object = None
    regime_used: object = None

    def to_dict(self, digits=20):
        nstr = self.value.context.nstr

        def pair(x):
            return [nstr(x.real, digits), nstr(x.imag, digits)]

        return {
            'a': pair(self.a),
            'lambda': str(self.lam),
            'N': self.n_terms,
            'partial_sum': pair(self.partial_sum),
            'prefactor': pair(self.prefactor),
            'value': pair(self.value),
            'remainder_bound': None if self.remainder_bound is None else nstr(self.remainder_bound, digits),
            'regime_used': None if self.regime_used is None else self.regime_used.value,
        }


def _check_sector(context, a, phase):
    ctx = context.mp
    if a == 0:
        raise DomainError('a must be nonzero')
    if not abs(ctx.arg(a)) < ctx.pi - phase.omega:
        raise SectorError(f'|arg a| = {ctx.nstr(abs(ctx.arg(a)), 10)} is outside |arg a| < π - ω '
                          f'= {ctx.nstr(ctx.pi - phase.omega, 10)}')


def series_terms(a, lam, count, context):
    '''The first count terms a^n b_n(-λ)/(z+a)^(2n+1) of the expansion.'''
    ctx = context.mp
    lam = positive_rational(lam)
    a = convert_complex(context, a)
    table = b_coeff_table(max(count - 1, 0), lam)
    s = (convert(context, lam) + 1) * a
    ratio = a / (s * s)
    power = 1 / s
    terms = []
    for n in range(count):
        terms.append(table.mp_value(ctx, n) * power)
        power *= ratio
    return terms


def partial_sum(a, lam, n_terms, context, with_bound=True):
    '''z^-a e^-z times the first N terms, with the least applicable remainder bound attached.'''
    ctx = context.mp
    if not isinstance(n_terms, int) or n_terms < 1:
        raise InvalidTruncationError(f'N must be an integer >= 1, got {n_terms!r}')
    lam = positive_rational(lam)
    a = convert_complex(context, a)
    phase = phase_data(lam, context)
    _check_sector(context, a, phase)

    total = ctx.fsum(series_terms(a, lam, n_terms, context))
    z = convert(context, lam) * a
    prefactor = ctx.exp(-a * ctx.log(z) - z)
    value = ensure_finite(context, prefactor * total, 'partial_sum')

    bound, regime = None, None
    if with_bound and n_terms >= 2:
        try:
            selection = remainder_bound(a, lam, n_terms, context)
            bound, regime = selection.bound_value, selection.regime
        except (RegimeError, SingularError) as e:
            logger.debug(f'no remainder bound attached: {e}')
    return ExpansionResult(a=a, lam=lam, n_terms=n_terms, partial_sum=total, prefactor=prefactor,
                           value=value, remainder_bound=bound, regime_used=regime)


def optimal_truncation(a, lam, context):
    '''N = round(|a| |λ + log λ + 1 + πi|), at least 1.'''
    ctx = context.mp
    a = convert_complex(context, a)
    if a == 0:
        raise DomainError('a must be nonzero')
    phase = phase_data(lam, context)
    return max(1, int(ctx.nint(abs(a) * phase.singulant_mod)))


def remainder_precision(a, lam, context):
    '''A context able to resolve R_N ~ e^(-|a|μ) against a partial sum of order one.

    The working precision is at least 2(|a|μ log2 e) + 96 bits, which leaves
    the default quadrature tolerance 48 bits below e^(-|a|μ).
    '''
    ctx = context.mp
    a = convert_complex(context, a)
    phase = phase_data(lam, context)
    exponent_bits = abs(a) * phase.singulant_mod / ctx.ln2
    return context.at_least(int(ctx.ceil(2 * exponent_bits)) + 96)


def remainders(a, lam, n_values, context):
    '''R_N for every N in n_values from a single oracle evaluation.'''
    n_values = sorted(set(n_values))
    if not n_values or n_values[0] < 1:
        raise InvalidTruncationError(f'every N must be >= 1, got {n_values!r}')
    lam = positive_rational(lam)
    work = remainder_precision(a, lam, context)
    wctx = work.mp
    a_work = convert_complex(work, a)
    _check_sector(work, a_work, phase_data(lam, work))
    # Γ(-a, λa)/(z^-a e^-z) is the bare integral
    reference = incgamma_oracle(a_work, lam, work).integral
    terms = series_terms(a_work, lam, n_values[-1], work)
    out = {}
    running = wctx.mpc(0)
    done = 0
    for n in n_values:
        running += wctx.fsum(terms[done:n])
        done = n
        out[n] = convert_complex(context, reference - running)
    logger.debug(f'remainders for N={n_values[0]}..{n_values[-1]} at {work.precision_bits} bits')
    return out


def true_remainder(a, lam, n_terms, context):
    '''R_N(a, λ) = Γ(-a, λa)/(z^-a e^-z) minus the partial sum, for Re a > 0.'''
    if not isinstance(n_terms, int) or n_terms < 1:
        raise InvalidTruncationError(f'N must be an integer >= 1, got {n_terms!r}')
    return remainders(a, lam, [n_terms], context)[n_terms]

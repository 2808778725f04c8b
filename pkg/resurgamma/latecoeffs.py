'''Large-n approximation of b_n(-λ) through the Stirling coefficients, with its error bounds.

The approximation reads
    b_n(-λ) = P_n (sum_{k<K} (-1)^k μ^k γ_k r_k sin((n-k+1/2)ω) + A_K),
    P_n = (-1)^n Γ(n+1/2)(λ+1)^(2n+1) / ((πμ/2)^(1/2) μ^n),
    r_k = Γ(n-k+1/2)/Γ(n+1/2),
with μ = |λ + log λ + 1 + πi|. Bounds on A_K are in the normalized units
of the bracket; multiply by |P_n| for absolute errors on b_n.
'''
import logging

from dataclasses import dataclass
from fractions import Fraction

from .coeffs import as_rational, b_coeff_table, stirling_table
from .numerics import (InvalidTruncationError, RegimeError, enclose, exact_interval, upper,
                       zeta_int)
from .phase import meijer_phi_star, phase_data


logger = logging.getLogger(__name__)

TABLE_CASES = ((Fraction(1, 100), 57), (Fraction(2), 57), (Fraction(5), 43))
TABLE_N = 100


@dataclass(frozen=True)
class LateCoeffApprox:
    n: int
    k_terms: int
    lam: object
    prefactor: object
    normalized_sum: object
    approx_value: object
    bound_general: object = None         # on |A_K|, normalized units
    bound_large_lambda: object = None    # on |A_K|, normalized units
    exact: object = None
    remainder_true: object = None        # A_K, normalized units

    @property
    def error(self):
        '''b_n(-λ) minus the approximation, absolute units.'''
        return None if self.exact is None else self.exact - self.approx_value

    @property
    def best_bound(self):
        bounds = [b for b in (self.bound_general, self.bound_large_lambda) if b is not None]
        return min(bounds) if bounds else None

    def absolute(self, normalized):
        return None if normalized is None else abs(self.prefactor) * normalized


def _check_range(n, k_terms, k_max):
    if not isinstance(n, int) or n < 2:
        raise InvalidTruncationError(f'n must be an integer >= 2, got {n!r}')
    if not isinstance(k_terms, int) or not 1 <= k_terms <= k_max:
        raise InvalidTruncationError(f'K must be an integer in [1, {k_max}] for n={n}, got {k_terms!r}')


def gamma_ratios(n, k_max):
    '''r_k = Γ(n-k+1/2)/Γ(n+1/2) = prod_{j=1..k} 1/(n-j+1/2), exactly, for k = 0..k_max.'''
    ratios = [Fraction(1)]
    for j in range(1, k_max + 1):
        ratios.append(ratios[-1] / Fraction(2 * n - 2 * j + 1, 2))
    return ratios


def _mp_fraction(ctx, x):
    return ctx.mpf(x.numerator) / x.denominator


def _prefactor(context, phase, n):
    ctx = context.mp
    mu = phase.singulant_mod
    half = ctx.mpf(1) / 2
    return (-1) ** n * ctx.gamma(n + half) * (phase.lam + 1) ** (2 * n + 1) \
        / (ctx.sqrt(ctx.pi * mu / 2) * mu ** n)


def _prefactor_modulus(context, lam_iv, mu_iv, n):
    iv = context.iv
    half = iv.mpf(1) / 2
    return iv.gamma(n + half) * (lam_iv + 1) ** (2 * n + 1) / (iv.sqrt(iv.pi * mu_iv / 2) * mu_iv ** n)


def _intervals(context, phase):
    iv = context.iv
    lam_iv = enclose(context, phase.lam)
    real_part = lam_iv + iv.ln(lam_iv) + 1
    return lam_iv, iv.atan2(iv.pi, real_part), iv.sqrt(real_part * real_part + iv.pi * iv.pi)


def late_bound_general(n, lam, k_terms, context, absolute=False):
    '''|A_K| <= (1/2)(sec(ω-φ*)/cos^K φ* + 1) μ^K ζ(K)Γ(K)/(π(2π)^K) r_K, for any λ > 0.'''
    iv = context.iv
    _check_range(n, k_terms, n - 1)
    if k_terms < 2:
        raise InvalidTruncationError(f'the general bound needs K >= 2, got {k_terms}')
    phase = phase_data(lam, context)
    lam_iv, omega_iv, mu_iv = _intervals(context, phase)
    phi = iv.mpf(meijer_phi_star(phase.omega, k_terms, context))
    meijer = 1 / (iv.cos(omega_iv - phi) * iv.cos(phi) ** k_terms) + 1
    ratio = exact_interval(context, gamma_ratios(n, k_terms)[k_terms])
    bound = meijer / 2 * mu_iv ** k_terms * enclose(context, zeta_int(k_terms, context)) \
        * iv.factorial(k_terms - 1) / (iv.pi * (2 * iv.pi) ** k_terms) * ratio
    if absolute:
        bound = bound * _prefactor_modulus(context, lam_iv, mu_iv, n)
    return upper(context, bound)


def late_bound_large_lambda(n, lam, k_terms, context, absolute=False):
    '''|A_K| <= μ^K |γ_K| r_K + μ^(K+1) |γ_(K+1)| r_(K+1), for λ >= W(e^{π-1}).'''
    ctx, iv = context.mp, context.iv
    _check_range(n, k_terms, n - 2)
    phase = phase_data(lam, context)
    if phase.lam + ctx.log(phase.lam) + 1 < ctx.pi - ctx.ldexp(1, -context.precision_bits + 16):
        raise RegimeError(f'the large-λ bound needs λ >= W(e^(π-1)), got λ={ctx.nstr(phase.lam, 15)}')
    lam_iv, _, mu_iv = _intervals(context, phase)
    gammas = stirling_table(k_terms + 1)
    ratios = gamma_ratios(n, k_terms + 1)
    bound = mu_iv ** k_terms * exact_interval(context, abs(gammas[k_terms]) * ratios[k_terms]) \
        + mu_iv ** (k_terms + 1) * exact_interval(context, abs(gammas[k_terms + 1]) * ratios[k_terms + 1])
    if absolute:
        bound = bound * _prefactor_modulus(context, lam_iv, mu_iv, n)
    return upper(context, bound)


def late_coeff_approx(n, lam, k_terms, context, with_exact=True):
    ctx = context.mp
    _check_range(n, k_terms, n - 1)
    phase = phase_data(lam, context)
    mu, omega = phase.singulant_mod, phase.omega
    gammas = stirling_table(k_terms)
    ratios = gamma_ratios(n, k_terms)
    half = ctx.mpf(1) / 2

    terms = [(-1) ** k * mu ** k * _mp_fraction(ctx, gammas[k] * ratios[k]) * ctx.sin((n - k + half) * omega)
             for k in range(k_terms)]
    normalized = ctx.fsum(terms)
    prefactor = _prefactor(context, phase, n)

    general = late_bound_general(n, lam, k_terms, context) if k_terms >= 2 else None
    large = None
    if k_terms <= n - 2:
        try:
            large = late_bound_large_lambda(n, lam, k_terms, context)
        except RegimeError:
            pass

    exact = remainder = None
    if with_exact:
        exact_rational = b_coeff_table(n, as_rational(lam)).value(n)
        exact = _mp_fraction(ctx, exact_rational)
        remainder = exact / prefactor - normalized
    logger.debug(f'late coefficient n={n} K={k_terms}: sum={ctx.nstr(normalized, 15)}')
    return LateCoeffApprox(n=n, k_terms=k_terms, lam=lam, prefactor=prefactor,
                           normalized_sum=normalized, approx_value=prefactor * normalized,
                           bound_general=general, bound_large_lambda=large,
                           exact=exact, remainder_true=remainder)


def optimal_k(n, lam, context):
    '''The odd integer nearest to (n+1/2)2π/(μ+2π), clamped to [2, n-1].'''
    ctx = context.mp
    if not isinstance(n, int) or n < 4:
        raise InvalidTruncationError(f'optimal_k needs n >= 4, got {n!r}')
    mu = phase_data(lam, context).singulant_mod
    target = (n + ctx.mpf(1) / 2) * 2 * ctx.pi / (mu + 2 * ctx.pi)
    k = 2 * int(ctx.nint((target - 1) / 2)) + 1
    return min(max(k, 2), n - 1)


@dataclass(frozen=True)
class LateTableRow:
    lam: Fraction
    k_terms: int
    quantity: str       # exact, approximation, error, bound_general or bound_large_lambda
    value: object


def late_table(context, n=TABLE_N, cases=TABLE_CASES):
    '''Exact value, approximation, signed error and the applicable bound for each (λ, K), absolute units.

    The bound row uses the large-λ bound when it applies and the general one otherwise.
    '''
    rows = []
    for lam, k_terms in cases:
        approx = late_coeff_approx(n, lam, k_terms, context)
        if approx.bound_large_lambda is not None:
            kind, bound = 'bound_large_lambda', late_bound_large_lambda(n, lam, k_terms, context, absolute=True)
        else:
            kind, bound = 'bound_general', late_bound_general(n, lam, k_terms, context, absolute=True)
        rows.extend([
            LateTableRow(lam, k_terms, 'exact', approx.exact),
            LateTableRow(lam, k_terms, 'approximation', approx.approx_value),
            LateTableRow(lam, k_terms, 'error', approx.error),
            LateTableRow(lam, k_terms, kind, bound),
        ])
        logger.info(f'late table λ={lam} K={k_terms} done')
    return rows

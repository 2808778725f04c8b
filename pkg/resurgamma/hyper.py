'''Re-expansion of R_N in terminant functions and the bound on what remains.

    R_N = -i e^{aF₋} sqrt(2π/a) sum_{k<K} γ_k/a^k T̂_{N-k+1/2}(aF₋)
          + i e^{aF₊} sqrt(2π/a) sum_{k<K} γ_k/a^k T̂_{N-k+1/2}(aF₊) + R_{N,K},
    F± = λ + log λ + 1 ± πi,  arg(aF±) = arg a ± ω.
'''
import logging
import statistics

from dataclasses import dataclass

from .coeffs import stirling_table
from .expansion import remainders
from .numerics import (DomainError, InvalidTruncationError, SectorError, convert_complex, enclose,
                       upper, zeta_int)
from .oracle import ORACLE_SECTOR_MARGIN
from .phase import meijer_phi_star, phase_data
from .terminant import terminant_polar


logger = logging.getLogger(__name__)

ORDER_DRIFT_LIMIT = 0.5


@dataclass(frozen=True)
class HyperExpansion:
    a: object
    lam: object
    n_terms: int
    k_terms: int
    terminant_sum_minus: object
    terminant_sum_plus: object
    remainder_bound: object = None       # on |R_{N,K}|
    remainder_true: object = None        # R_{N,K} from the oracle
    remainder_n: object = None           # R_N from the oracle

    @property
    def terminant_sum(self):
        return self.terminant_sum_minus + self.terminant_sum_plus


@dataclass(frozen=True)
class _Geometry:
    a: object
    theta: object
    phase: object
    modulus: object          # |aF±| = |a|μ
    root: object             # sqrt(2π/a)


def _geometry(a, lam, context, closed=False):
    ctx = context.mp
    a = convert_complex(context, a)
    if a == 0:
        raise DomainError('a must be nonzero')
    phase = phase_data(lam, context)
    theta = ctx.arg(a)
    edge = ctx.pi - phase.omega
    if abs(theta) > edge or (not closed and abs(theta) == edge):
        raise SectorError(f'|arg a| must stay within π - ω = {ctx.nstr(edge, 10)}')
    return _Geometry(a=a, theta=theta, phase=phase, modulus=abs(a) * phase.singulant_mod,
                     root=ctx.sqrt(2 * ctx.pi / a))


def _terminant_terms(context, geo, n_terms, ks):
    '''The k-th terms of the minus and plus sums, including their outer factors.'''
    ctx = context.mp
    gammas = stirling_table(max(ks, default=0))
    singulant = geo.phase.singulant
    outer_minus = -ctx.j * ctx.exp(geo.a * ctx.conj(singulant)) * geo.root
    outer_plus = ctx.j * ctx.exp(geo.a * singulant) * geo.root
    minus, plus = {}, {}
    half = ctx.mpf(1) / 2
    for k in ks:
        order = n_terms - k + half
        weight = ctx.mpf(gammas[k].numerator) / gammas[k].denominator / geo.a ** k
        t_minus = terminant_polar(order, geo.modulus, geo.theta - geo.phase.omega, context).value
        t_plus = terminant_polar(order, geo.modulus, geo.theta + geo.phase.omega, context).value
        minus[k] = outer_minus * weight * t_minus
        plus[k] = outer_plus * weight * t_plus
    return minus, plus


def _oracle_applies(context, a):
    ctx = context.mp
    return a.real > 0 and abs(ctx.arg(a)) <= ctx.pi / 2 - ctx.mpf(ORACLE_SECTOR_MARGIN)


def hyper_expand(a, lam, n_terms, k_terms, context, with_true=True, with_bound=True):
    ctx = context.mp
    if not isinstance(n_terms, int) or n_terms < 1:
        raise InvalidTruncationError(f'N must be an integer >= 1, got {n_terms!r}')
    if not isinstance(k_terms, int) or not 0 <= k_terms <= n_terms:
        raise InvalidTruncationError(f'K must be an integer in [0, N], got {k_terms!r}')
    geo = _geometry(a, lam, context)
    minus, plus = _terminant_terms(context, geo, n_terms, range(k_terms))
    sum_minus = ctx.fsum(minus.values()) if minus else ctx.mpc(0)
    sum_plus = ctx.fsum(plus.values()) if plus else ctx.mpc(0)

    bound = None
    if with_bound and n_terms >= 2:
        bound = improved_remainder_bound(geo.a, lam, n_terms, k_terms, context)

    r_n = r_nk = None
    if with_true and _oracle_applies(context, geo.a):
        r_n = remainders(geo.a, lam, [n_terms], context)[n_terms]
        r_nk = r_n - sum_minus - sum_plus
    logger.debug(f'hyper N={n_terms} K={k_terms}: sums {ctx.nstr(sum_minus, 8)}, {ctx.nstr(sum_plus, 8)}')
    return HyperExpansion(a=geo.a, lam=lam, n_terms=n_terms, k_terms=k_terms,
                          terminant_sum_minus=sum_minus, terminant_sum_plus=sum_plus,
                          remainder_bound=bound, remainder_true=r_nk, remainder_n=r_n)


def _meijer_remainder_bound(context, geo, n_terms, k_terms):
    ctx, iv = context.mp, context.iv
    phase = geo.phase
    phi = iv.mpf(meijer_phi_star(phase.omega, k_terms, context))
    omega = enclose(context, phase.omega)
    sec = 1 / iv.cos(omega - phi)
    cos_k = iv.cos(phi) ** k_terms
    first = sec / cos_k + 1
    second = sec * sec / cos_k + 1
    zeta_gamma = enclose(context, zeta_int(k_terms, context)) * iv.factorial(k_terms - 1)
    abs_a = enclose(context, abs(geo.a))
    mu = enclose(context, phase.singulant_mod)

    minus, plus = _terminant_terms(context, geo, n_terms, [k_terms])
    gamma_k = stirling_table(k_terms)[k_terms]
    # strip the γ_K/a^K weight to recover |e^{aF} sqrt(2π/a) T̂_{N-K+1/2}(aF)|
    weight = abs(ctx.mpf(gamma_k.numerator) / gamma_k.denominator / geo.a ** k_terms)
    slack = 1 + 4 * context.quad_rel_tol
    magnitudes = (enclose(context, abs(minus[k_terms]) / weight * slack)
                  + enclose(context, abs(plus[k_terms]) / weight * slack))

    half = iv.mpf(1) / 2
    order = n_terms - k_terms + half
    total = first * magnitudes * zeta_gamma / ((2 * iv.pi) ** (k_terms + 1) * abs_a ** k_terms) \
        + second * 2 * zeta_gamma * iv.gamma(order) \
        / ((2 * iv.pi) ** (k_terms + 1 + half) * mu ** order * abs_a ** (n_terms + 1))
    return upper(context, total)


def improved_remainder_bound(a, lam, n_terms, k_terms, context):
    '''Bound on |R_{N,K}| for |arg a| <= π - ω.

    For 2 <= K <= N this is the Meijer-type three-term bound. K = 0 and
    K = 1 go through R_{N,2}, adding the moduli of the γ_0 and γ_1
    terminant terms that separate R_{N,K} from R_{N,2}.
    '''
    if not isinstance(n_terms, int) or n_terms < 2:
        raise InvalidTruncationError(f'the bound needs N >= 2, got {n_terms!r}')
    if not isinstance(k_terms, int) or not 0 <= k_terms <= n_terms:
        raise InvalidTruncationError(f'K must be an integer in [0, N], got {k_terms!r}')
    geo = _geometry(a, lam, context, closed=True)
    if k_terms >= 2:
        return _meijer_remainder_bound(context, geo, n_terms, k_terms)
    base = _meijer_remainder_bound(context, geo, n_terms, 2)
    minus, plus = _terminant_terms(context, geo, n_terms, range(k_terms, 2))
    extra = sum(abs(minus[k]) + abs(plus[k]) for k in range(k_terms, 2))
    return base + extra * (1 + 4 * context.quad_rel_tol)


@dataclass(frozen=True)
class OrderCheckPoint:
    modulus: object          # |a|
    n_terms: int
    remainder: object        # |R_{N,K}|
    scaled_log: float        # log|R_{N,K}| + |a|μ + (K+1/2) log|a|


@dataclass(frozen=True)
class OrderCheck:
    lam: object
    k_terms: int
    rho: int
    points: tuple
    drift: float
    passed: bool


def order_estimate_check(magnitudes, lam, k_terms, rho, context):
    '''Regress log|R_{N,K}| + |a|μ + (K+1/2)log|a| on log|a| along real a, N = round(|a|μ) + ρ.

    A bounded R_{N,K} e^{|a|μ}|a|^(K+1/2) gives slope <= 0; the check passes
    when the slope (drift) stays at or below ORDER_DRIFT_LIMIT.
    '''
    ctx = context.mp
    magnitudes = sorted(set(magnitudes))
    if len(magnitudes) < 3:
        raise DomainError(f'the order check needs at least 3 magnitudes, got {len(magnitudes)}')
    mu = phase_data(lam, context).singulant_mod
    points = []
    for modulus in magnitudes:
        a = ctx.mpf(modulus)
        n_terms = int(ctx.nint(a * mu)) + rho
        if n_terms < max(k_terms, 1):
            raise InvalidTruncationError(f'N = {n_terms} is below K = {k_terms} at |a| = {modulus}')
        expansion = hyper_expand(a, lam, n_terms, k_terms, context, with_bound=False)
        size = abs(expansion.remainder_true)
        scaled = ctx.log(size) + a * mu + (k_terms + ctx.mpf(1) / 2) * ctx.log(a)
        points.append(OrderCheckPoint(a, n_terms, size, float(scaled)))
        logger.info(f'order check |a|={modulus} N={n_terms}: |R_NK|={ctx.nstr(size, 6)}')
    xs = [float(ctx.log(p.modulus)) for p in points]
    ys = [p.scaled_log for p in points]
    drift = statistics.linear_regression(xs, ys).slope
    return OrderCheck(lam=lam, k_terms=k_terms, rho=rho, points=tuple(points), drift=drift,
                      passed=drift <= ORDER_DRIFT_LIMIT)

'''Independent reference values.

Nothing here uses the coefficient or series code of the main path: the
incomplete gamma function comes from quadrature of its Laplace-type
integral, Γ* from mpmath's log-gamma, and b_n(-λ) from a trapezoid rule
on a loop around the origin.
'''
import logging

from dataclasses import dataclass

from .numerics import (ConvergenceError, DomainError, InvalidTruncationError, SectorError,
                       convert_complex, convert_real, ensure_finite)
from .phase import phase_data, omega_k, singulant_mod_k


logger = logging.getLogger(__name__)

ORACLE_SECTOR_MARGIN = '0.01'


@dataclass(frozen=True)
class QuadratureResult:
    value: object
    est_rel_err: object
    levels_used: int
    integral: object = None


def _positive(context, lam):
    value = convert_real(context, lam, 'λ')
    if not value > 0:
        raise DomainError(f'λ must be positive, got {lam!r}')
    return value


def _check_oracle_sector(context, a):
    ctx = context.mp
    if not a.real > 0 or abs(ctx.arg(a)) > ctx.pi / 2 - ctx.mpf(ORACLE_SECTOR_MARGIN):
        raise SectorError(f'the quadrature oracle needs |arg a| <= π/2 - {ORACLE_SECTOR_MARGIN}, '
                          f'got a = {ctx.nstr(a, 10)}')


def _checked_quad(context, f, points, what):
    ctx = context.mp
    value, err = ctx.quad(f, points, error=True, maxdegree=context.quad_degree)
    scale = abs(value)
    rel = err / scale if scale else err
    logger.debug(f'{what}: {len(points) - 1} panels, degree <= {context.quad_degree}, '
                 f'est. rel. error {ctx.nstr(rel, 3)}')
    if rel > context.quad_rel_tol:
        raise ConvergenceError(f'{what} did not reach relative tolerance '
                               f'{ctx.nstr(context.quad_rel_tol, 3)} (estimate {ctx.nstr(rel, 3)})')
    return value, rel


def _laplace_cutoff(context, a, lam):
    '''T with Re(a)(λ(e^T - 1) + T) beyond the working precision.'''
    ctx = context.mp
    target = (context.precision_bits + 32) * ctx.ln2
    t = max(ctx.log(target / (lam * a.real)), ctx.mpf(1) / 4)
    while a.real * (lam * ctx.expm1(t) + t) <= target:
        t *= ctx.mpf(3) / 2
    return t


def incgamma_oracle(a, lam, context):
    '''Γ(-a, λa) = z^-a e^-z ∫_0^∞ exp(-a(λe^t + t - λ)) dt for Re a > 0.'''
    ctx = context.mp
    a = convert_complex(context, a)
    lam = _positive(context, lam)
    _check_oracle_sector(context, a)

    with ctx.extraprec(32):
        cutoff = _laplace_cutoff(context, a, lam)
        # Step 1: panels refined geometrically toward the origin, where the
        # integrand falls off on the scale 1/(|a|(λ+1))
        points = [ctx.zero]
        width = 1 / (abs(a) * (lam + 1))
        while width < cutoff:
            points.append(width)
            width *= 4
        points.append(cutoff)

        # Step 2: integrate
        integral, rel = _checked_quad(
            context, lambda t: ctx.exp(-a * (lam * ctx.expm1(t) + t)), points,
            f'Γ(-a, λa) integral at a={ctx.nstr(a, 8)}, λ={ctx.nstr(lam, 8)}')

        # Step 3: restore the prefactor z^-a e^-z
        z = lam * a
        value = ctx.exp(-a * ctx.log(z) - z) * integral
    ensure_finite(context, value, 'incgamma_oracle')
    return QuadratureResult(value=+value, est_rel_err=rel, levels_used=context.quad_degree,
                            integral=+integral)


def gammastar_oracle(z, context):
    '''Γ*(z) = Γ(z)/(√(2π) z^(z-1/2) e^-z), principal branches, |arg z| < π.'''
    ctx = context.mp
    z = convert_complex(context, z)
    if z == 0:
        raise DomainError('Γ* is undefined at 0')
    if z.imag == 0 and z.real < 0:
        raise DomainError('Γ* is evaluated off the negative real axis only')
    extra = 32 + 2 * int(ctx.log(abs(z) + 2, 2))
    with ctx.extraprec(extra):
        value = ctx.exp(ctx.loggamma(z) - (z - ctx.mpf(1) / 2) * ctx.log(z) + z) / ctx.sqrt(2 * ctx.pi)
    if z.imag == 0:
        value = ctx.mpc(value.real, 0)
    return +value


def b_coeff_oracle(n, lam, context, radius=None):
    '''b_n(-λ) = (λ+1)^(2n+1) n!/(2πi) ∮ du / f(u)^(n+1), f(u) = λe^u + u - λ.'''
    ctx = context.mp
    if not isinstance(n, int) or n < 0:
        raise DomainError(f'n must be a non-negative integer, got {n!r}')
    lam = _positive(context, lam)
    saddle = abs(ctx.mpc(-ctx.log(lam), ctx.pi))
    radius = saddle / 2 if radius is None else convert_real(context, radius, 'radius')
    if not 0 < radius < saddle:
        raise DomainError(f'contour radius must lie in (0, {ctx.nstr(saddle, 10)})')

    with ctx.extraprec(4 * (n + 1) + 32):
        def sample(phi):
            u = radius * ctx.expjpi(2 * phi)
            return u / (lam * ctx.expm1(u) + u) ** (n + 1)

        # Nodes phi = j/M in units of a full turn; each doubling adds the odd ones.
        # The change is measured against the mean |sample| too, since b_n(-λ) can vanish.
        nodes = 16
        values = [sample(ctx.mpf(j) / nodes) for j in range(nodes)]
        total = ctx.fsum(values)
        magnitude = ctx.fsum(abs(v) for v in values)
        previous = total / nodes
        max_nodes = 2 ** (context.quad_max_levels + 8)
        while True:
            nodes *= 2
            values = [sample(ctx.mpf(j) / nodes) for j in range(1, nodes, 2)]
            total += ctx.fsum(values)
            magnitude += ctx.fsum(abs(v) for v in values)
            current = total / nodes
            change = abs(current - previous)
            if change <= context.quad_rel_tol * max(abs(current), magnitude / nodes):
                break
            if nodes >= max_nodes:
                raise ConvergenceError(f'trapezoid rule for b_{n}(-λ) did not converge with {nodes} nodes')
            previous = current
        value = (lam + 1) ** (2 * n + 1) * ctx.factorial(n) * current
    logger.debug(f'b_{n}(-λ) oracle: {nodes} nodes, last change {ctx.nstr(change, 3)}')
    return +value


def _gamma_kernel_integral(context, power, mu, kernel, gammastar_arg_phase, reciprocal=False):
    '''∫_0^∞ t^power e^(-tμ) kernel(t) Γ*(t e^(i·phase))^(±1) dt by tanh-sinh.'''
    ctx = context.mp
    rotation = ctx.expj(gammastar_arg_phase)

    def integrand(t):
        if t == 0:
            return ctx.zero
        g = gammastar_oracle(t * rotation, context)
        if reciprocal:
            g = 1 / g
        return t ** power * ctx.exp(-t * mu) * kernel(t) * g

    peak = max(power, ctx.mpf(1) / 2) / mu
    points = [ctx.zero, peak / 4, peak, 4 * peak, 16 * peak + 16 / mu, ctx.inf]
    value, _ = _checked_quad(context, integrand, points, 'Γ*-kernel integral')
    return value


def remainder_integral(a, lam, n_terms, context):
    '''R_N(a, λ) from its integral representation over the adjacent steepest-descent paths.

    R_N = (-1)^N a^-(N+1)/(√(2π) i) [e^{iψ} J(ω) - e^{-iψ} J(-ω)], ψ = (N+1/2)ω,
    J(±ω) = ∫ t^(N-1/2) e^(-tμ) Γ*(te^{±iω}) / (1 + te^{±iω}/a) dt.
    '''
    ctx = context.mp
    if not isinstance(n_terms, int) or n_terms < 1:
        raise InvalidTruncationError(f'N must be an integer >= 1, got {n_terms!r}')
    a = convert_complex(context, a)
    phase = phase_data(lam, context)
    if abs(ctx.arg(a)) >= ctx.pi - phase.omega:
        raise SectorError('the integral representation needs |arg a| < π - ω')
    omega, mu = phase.omega, phase.singulant_mod
    power = n_terms - ctx.mpf(1) / 2
    psi = (n_terms + ctx.mpf(1) / 2) * omega

    with ctx.extraprec(24):
        j_plus = _gamma_kernel_integral(context, power, mu, lambda t: 1 / (1 + t * ctx.expj(omega) / a), omega)
        j_minus = _gamma_kernel_integral(context, power, mu, lambda t: 1 / (1 + t * ctx.expj(-omega) / a), -omega)
        value = (-1) ** n_terms / a ** (n_terms + 1) \
            * (ctx.expj(psi) * j_plus - ctx.expj(-psi) * j_minus) / (ctx.sqrt(2 * ctx.pi) * ctx.j)
    return +value


def b_coeff_integral(n, lam, context):
    '''b_n(-λ) from the real-axis integral against Γ*(te^{±iω}); valid for n >= 1.'''
    ctx = context.mp
    if not isinstance(n, int) or n < 1:
        raise DomainError(f'the integral representation holds for n >= 1, got {n!r}')
    phase = phase_data(lam, context)
    omega, mu = phase.omega, phase.singulant_mod
    psi = (n + ctx.mpf(1) / 2) * omega
    with ctx.extraprec(24):
        # Γ*(conj z) = conj Γ*(z), so the bracket is 2i Im(e^{iψ} Γ*(te^{iω}))
        integral = _gamma_kernel_integral(
            context, n - ctx.mpf(1) / 2, mu, lambda t: ctx.expj(psi), omega)
        value = (-1) ** n * (phase.lam + 1) ** (2 * n + 1) * ctx.sqrt(2 / ctx.pi) * integral.imag
    return +value


def b_coeff_from_remainders(n, a, lam, context, remainder=None):
    '''(z+a)^(2n+1)/a^n (R_n - R_{n+1}), which equals b_n(-λ) for every admissible a.'''
    ctx = context.mp
    remainder = remainder_integral if remainder is None else remainder
    a = convert_complex(context, a)
    lam_value = _positive(context, lam)
    r_n = remainder(a, lam, n, context)
    r_next = remainder(a, lam, n + 1, context)
    z_plus_a = (lam_value + 1) * a
    return z_plus_a ** (2 * n + 1) / a ** n * (r_n - r_next)


@dataclass(frozen=True)
class SeriesRemainder:
    partial_sums: tuple          # after k = 0, 1, ..., k_max
    tail_bound: object           # bound on the terms k > k_max


def remainder_series(a, lam, n_terms, k_max, context):
    '''R_N as the sum over the saddles t^(±k) for λ < W(e^-1), truncated after k_max.

    Each term integrates t^(N-1/2) e^(-tμ_k)/(1 + te^{±iω_k}/a) against
    1/Γ*(te^{±i(ω_k-π)}). Those arguments lie in the right half-plane, where
    |1/Γ*| <= 1; each kernel is at most 1/min(1, |sin(±ω_k - arg a)|), and the
    two together bound the tail.
    '''
    ctx = context.mp
    if not isinstance(n_terms, int) or n_terms < 1:
        raise InvalidTruncationError(f'N must be an integer >= 1, got {n_terms!r}')
    a = convert_complex(context, a)
    phase = phase_data(lam, context)
    if phase.omega <= ctx.pi / 2:
        raise DomainError('the saddle-sum representation needs λ < W(e^-1)')
    if not a.real > 0 or abs(ctx.arg(a)) >= ctx.pi - phase.omega:
        raise SectorError('the saddle-sum representation is evaluated for |arg a| < π - ω, Re a > 0')
    power = n_terms - ctx.mpf(1) / 2
    prefactor = (-1) ** n_terms / a ** (n_terms + 1) / (ctx.sqrt(2 * ctx.pi) * ctx.j)

    sums = []
    total = ctx.mpc(0)
    with ctx.extraprec(24):
        for k in range(k_max + 1):
            om = omega_k(phase.lam, k, context)
            mu = singulant_mod_k(phase.lam, k, context)
            psi = (n_terms + ctx.mpf(1) / 2) * om
            first = _gamma_kernel_integral(
                context, power, mu, lambda t: 1 / (1 + t * ctx.expj(om) / a), om - ctx.pi, reciprocal=True)
            second = _gamma_kernel_integral(
                context, power, mu, lambda t: 1 / (1 + t * ctx.expj(-om) / a), ctx.pi - om, reciprocal=True)
            total += prefactor * (ctx.expj(psi) * first - ctx.expj(-psi) * second)
            sums.append(+total)
            logger.debug(f'saddle sum through k={k}: {ctx.nstr(total, 12)}')

        magnitude = abs(prefactor) * ctx.gamma(power + 1)
        theta = ctx.arg(a)

        def tail_term(k):
            om = omega_k(phase.lam, int(k), context)
            kernels = sum(1 / min(ctx.one, abs(ctx.sin(side * om - theta))) for side in (1, -1))
            return magnitude * kernels / singulant_mod_k(phase.lam, int(k), context) ** (power + 1)

        tail = ctx.nsum(tail_term, [k_max + 1, ctx.inf])
    return SeriesRemainder(partial_sums=tuple(sums), tail_bound=+tail)

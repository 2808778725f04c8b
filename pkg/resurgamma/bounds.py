'''Computable bounds for the remainder R_N(a, λ) and for the scaled gamma remainder M_N(z).

Every bound is assembled in interval arithmetic (context.iv) and reported
through the upper endpoint, so rounding never undercuts a certified value.
'''
import logging

from dataclasses import dataclass, field

from .coeffs import as_rational
from .numerics import (DomainError, InvalidTruncationError, RegimeError, SingularError,
                       convert_complex, convert_real, enclose, upper, zeta_int)
from .phase import Regime, meijer_phi_star, phase_data


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BoundReport:
    regime: Regime
    applicable: bool
    bound_value: object = None
    kernel_factor: object = None
    integral_factor: object = None
    reason: str = ''

    def to_dict(self, digits=20):
        def show(x):
            return None if x is None else x.context.nstr(x, digits)
        return {
            'regime': self.regime.value,
            'applicable': self.applicable,
            'bound_value': show(self.bound_value),
            'kernel_factor': show(self.kernel_factor),
            'integral_factor': show(self.integral_factor),
            'reason': self.reason,
        }


@dataclass(frozen=True)
class BoundSelection:
    '''The least bound over every applicable case, with each case's report.'''
    best: BoundReport
    reports: tuple = field(default_factory=tuple)

    @property
    def bound_value(self):
        return self.best.bound_value

    @property
    def regime(self):
        return self.best.regime


@dataclass(frozen=True)
class _Setup:
    a: object
    abs_a: object            # interval
    theta: object            # mp
    theta_iv: object
    phase: object
    lam_iv: object
    omega_iv: object
    mu_iv: object
    n_terms: int


def _check_truncation(n_terms):
    if not isinstance(n_terms, int) or n_terms < 2:
        raise InvalidTruncationError(f'the remainder bounds need an integer N >= 2, got {n_terms!r}')


def _setup(a, lam, n_terms, context):
    _check_truncation(n_terms)
    ctx, iv = context.mp, context.iv
    a = convert_complex(context, a)
    if a == 0:
        raise DomainError('a must be nonzero')
    phase = phase_data(lam, context)
    lam_iv = enclose(context, phase.lam)
    real_part = lam_iv + iv.ln(lam_iv) + 1
    re, im = iv.mpf(a.real), iv.mpf(a.imag)
    return _Setup(
        a=a,
        abs_a=iv.sqrt(re * re + im * im),
        theta=ctx.arg(a),
        theta_iv=iv.atan2(im, re),
        phase=phase,
        lam_iv=lam_iv,
        omega_iv=iv.atan2(iv.pi, real_part),
        mu_iv=iv.sqrt(real_part * real_part + iv.pi * iv.pi),
        n_terms=n_terms,
    )


def _not_applicable(regime, reason):
    logger.debug(f'{regime.value}: not applicable ({reason})')
    return BoundReport(regime=regime, applicable=False, reason=reason)


def _in_open_sector(context, setup):
    return abs(setup.theta) < context.mp.pi - setup.phase.omega


def _kernel_interval(context, phi_iv):
    ctx, iv = context.mp, context.iv
    mid = upper(context, phi_iv.mid)
    turns = ctx.nint(mid / (2 * ctx.pi))
    reduced_mid = mid - 2 * turns * ctx.pi
    if reduced_mid == 0:
        raise SingularError('kernel_csc_bound has a pole at φ ≡ 0 (mod 2π)')
    if abs(reduced_mid) >= ctx.pi / 2:
        return iv.mpf(1)
    reduced = phi_iv - 2 * iv.mpf(int(turns)) * iv.pi
    value = 1 / abs(iv.sin(reduced))
    if ctx.isinf(upper(context, value)):
        raise SingularError('kernel_csc_bound is unbounded on this angle interval')
    return value


def kernel_csc_bound(phi, context):
    '''Upper bound for 1/|1 - re^{iφ}| over r > 0: |csc φ| near 0 (mod 2π), else 1.'''
    phi = convert_real(context, phi, 'φ')
    return upper(context, _kernel_interval(context, context.iv.mpf(phi)))


def _kernel_average(context, setup):
    iv = context.iv
    first = _kernel_interval(context, iv.pi + setup.omega_iv - setup.theta_iv)
    second = _kernel_interval(context, iv.pi - setup.omega_iv - setup.theta_iv)
    return (first + second) / 2


def _gamma_over_power(context, s, mu_iv):
    '''∫_0^∞ t^(s-1) e^(-μt) dt = Γ(s)/μ^s, as an interval.'''
    iv = context.iv
    return iv.gamma(iv.mpf(s)) / mu_iv ** iv.mpf(s)


def _leading_factor(context, setup):
    '''|a|^-(N+1) Γ(N+1/2) / ((πμ/2)^(1/2) μ^N)'''
    iv = context.iv
    n = setup.n_terms
    half = iv.mpf(1) / 2
    return iv.gamma(n + half) / (setup.abs_a ** (n + 1) * iv.sqrt(iv.pi * setup.mu_iv / 2)
                                 * setup.mu_iv ** n)


def _meijer_m2_constant(context, setup):
    '''(sec(ω-φ*)/cos²φ* + 1) ζ(2)/(2π)³, so that |M_2(te^{iω})| <= constant/t².'''
    iv = context.iv
    phi = iv.mpf(meijer_phi_star(setup.phase.omega, 2, context))
    factor = 1 / (iv.cos(setup.omega_iv - phi) * iv.cos(phi) ** 2) + 1
    return factor * enclose(context, zeta_int(2, context)) / (2 * iv.pi) ** 3


def _report(context, regime, setup, leading, kernel, total):
    ctx = context.mp
    bound = upper(context, total)
    kernel_value = upper(context, kernel)
    base = upper(context, leading) * kernel_value
    report = BoundReport(regime=regime, applicable=True, bound_value=bound,
                         kernel_factor=kernel_value,
                         integral_factor=bound / base if base else ctx.inf)
    logger.debug(f'{regime.value}: N={setup.n_terms} bound={ctx.nstr(bound, 12)} '
                 f'kernel={ctx.nstr(kernel_value, 8)}')
    return report


def bound_large_lambda(a, lam, n_terms, context):
    '''Bound for λ > W(e^{π-1}) and |arg a| < π - ω, using |M_1(te^{iω})| <= 1/12t + 1/288t².'''
    setup = _setup(a, lam, n_terms, context)
    if not setup.phase.applies(Regime.LARGE):
        return _not_applicable(Regime.LARGE, 'λ <= W(e^{π-1})')
    if not _in_open_sector(context, setup):
        return _not_applicable(Regime.LARGE, '|arg a| >= π - ω')
    iv = context.iv
    n, mu = iv.mpf(n_terms), setup.mu_iv
    half = iv.mpf(1) / 2
    correction = 1 + mu / (12 * (n - half)) + mu * mu / (288 * (n - half) * (n - 3 * half))
    leading = _leading_factor(context, setup)
    kernel = _kernel_average(context, setup)
    return _report(context, Regime.LARGE, setup, leading, kernel, leading * correction * kernel)


def bound_right_half(a, lam, n_terms, context):
    '''Bound for λ >= W(e^{-1}) and |arg a| <= π/4 from the four-term real/imaginary split.

    The kernel 1/|(1 + te^{iω}/a)(1 + te^{-iω}/a)| is at most 1 here, the real
    and imaginary parts of Γ*(te^{iω}) are bounded through |M_2| < 1/48t², and
    every t-integral is Γ(s)/μ^s.
    '''
    ctx, iv = context.mp, context.iv
    setup = _setup(a, lam, n_terms, context)
    if not setup.phase.applies(Regime.RIGHT_HALF):
        return _not_applicable(Regime.RIGHT_HALF, 'λ < W(e^{-1})')
    if abs(setup.theta) > ctx.pi / 4 + ctx.ldexp(1, -context.precision_bits + 16):
        return _not_applicable(Regime.RIGHT_HALF, '|arg a| > π/4')

    n, omega, mu = setup.n_terms, setup.omega_iv, setup.mu_iv
    half = iv.mpf(1) / 2
    cos_w, sin_w = abs(iv.cos(omega)), abs(iv.sin(omega))

    def g(s):
        return _gamma_over_power(context, s, mu)

    inv_a1 = 1 / setup.abs_a ** (n + 1)
    inv_a2 = inv_a1 / setup.abs_a
    terms = (
        abs(iv.sin((n + half) * omega)) * inv_a1
        * (g(n + half) + cos_w * g(n - half) / 12 + g(n - 3 * half) / 48),
        abs(iv.cos((n + half) * omega)) * inv_a1
        * (sin_w * g(n - half) / 12 + g(n - 3 * half) / 48),
        abs(iv.sin((n - half) * omega)) * inv_a2
        * (g(n + 3 * half) + cos_w * g(n + half) / 12 + g(n - half) / 48),
        abs(iv.cos((n - half) * omega)) * inv_a2
        * (sin_w * g(n + half) / 12 + g(n - half) / 48),
    )
    total = iv.sqrt(2 / iv.pi) * sum(terms[1:], terms[0])
    return _report(context, Regime.RIGHT_HALF, setup, _leading_factor(context, setup), iv.mpf(1), total)


def _meijer_case(regime, reason, a, lam, n_terms, context):
    setup = _setup(a, lam, n_terms, context)
    if not setup.phase.applies(regime):
        return _not_applicable(regime, reason)
    if not _in_open_sector(context, setup):
        return _not_applicable(regime, '|arg a| >= π - ω')
    iv = context.iv
    n, mu = iv.mpf(n_terms), setup.mu_iv
    half = iv.mpf(1) / 2
    # |Γ*(te^{iω})| <= 1 + 1/12t + C/t² with the Meijer constant C
    correction = 1 + mu / (12 * (n - half)) \
        + _meijer_m2_constant(context, setup) * mu * mu / ((n - half) * (n - 3 * half))
    leading = _leading_factor(context, setup)
    kernel = _kernel_average(context, setup)
    return _report(context, regime, setup, leading, kernel, leading * correction * kernel)


def bound_middle_lambda(a, lam, n_terms, context):
    '''Bound for W(e^{-π-1}) <= λ <= W(e^{π-1}) and |arg a| < π - ω.'''
    return _meijer_case(Regime.MIDDLE, 'λ outside [W(e^{-π-1}), W(e^{π-1})]', a, lam, n_terms, context)


def bound_small_lambda(a, lam, n_terms, context):
    '''Bound for 0 < λ < W(e^{-π-1}); the kernel average is (|csc(θ-ω)| + |csc(θ+ω)|)/2.'''
    return _meijer_case(Regime.SMALL, 'λ >= W(e^{-π-1})', a, lam, n_terms, context)


CASE_BOUNDS = {
    Regime.LARGE: bound_large_lambda,
    Regime.RIGHT_HALF: bound_right_half,
    Regime.MIDDLE: bound_middle_lambda,
    Regime.SMALL: bound_small_lambda,
}


def remainder_bound(a, lam, n_terms, context):
    '''Evaluate every case and keep the least applicable bound.'''
    reports = tuple(bound(a, lam, n_terms, context) for bound in CASE_BOUNDS.values())
    applicable = [r for r in reports if r.applicable]
    if not applicable:
        reasons = '; '.join(f'{r.regime.value}: {r.reason}' for r in reports)
        raise RegimeError(f'no remainder bound applies ({reasons})')
    best = min(applicable, key=lambda r: r.bound_value)
    return BoundSelection(best=best, reports=reports)


def _bound_m_interval(context, abs_z, theta, n_terms):
    iv = context.iv
    phi = iv.mpf(meijer_phi_star(theta, n_terms, context))
    theta_iv = enclose(context, theta)
    factor = 1 / (iv.cos(theta_iv - phi) * iv.cos(phi) ** n_terms) + 1
    gamma_n = iv.factorial(n_terms - 1)
    return factor * enclose(context, zeta_int(n_terms, context)) * gamma_n \
        / ((2 * iv.pi) ** (n_terms + 1) * abs_z ** n_terms)


def bound_m(z, n_terms, context):
    '''(sec(θ-φ*)/cos^N φ* + 1) ζ(N)Γ(N)/((2π)^(N+1)|z|^N) bounds the scaled gamma remainder M_N(z).

    z with negative argument is reflected; |M_N(conj z)| = |M_N(z)|.
    '''
    ctx, iv = context.mp, context.iv
    if not isinstance(n_terms, int) or n_terms < 2:
        raise InvalidTruncationError(f'bound_m needs an integer N >= 2, got {n_terms!r}')
    z = convert_complex(context, z)
    if z.imag == 0:
        raise DomainError('bound_m is stated for 0 < |arg z| < π')
    z = ctx.conj(z) if z.imag < 0 else z
    re, im = iv.mpf(z.real), iv.mpf(z.imag)
    abs_z = iv.sqrt(re * re + im * im)
    return upper(context, _bound_m_interval(context, abs_z, ctx.arg(z), n_terms))


def m1_bound(t):
    '''1/(12t) + 1/(288t²), exactly; valid for |M_1(te^{iω})| with 0 < ω < π/4.'''
    t = as_rational(t, 't')
    if t <= 0:
        raise DomainError(f't must be positive, got {t}')
    return 1 / (12 * t) + 1 / (288 * t * t)


def m2_bound(t):
    '''1/(48t²), exactly; valid for |M_2(te^{iω})| with 0 < ω <= π/2.'''
    t = as_rational(t, 't')
    if t <= 0:
        raise DomainError(f't must be positive, got {t}')
    return 1 / (48 * t * t)

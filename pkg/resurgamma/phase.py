import enum
import logging

from dataclasses import dataclass

from .numerics import ConvergenceError, DomainError, convert_real, lambert_w0


logger = logging.getLogger(__name__)


class Regime(enum.Enum):
    '''Bound regimes, keyed by λ through the Lambert-W thresholds.'''
    LARGE = 'large'              # λ > W(e^{π-1}),  0 < ω < π/4
    RIGHT_HALF = 'right_half'    # λ >= W(e^{-1}),  0 < ω <= π/2
    MIDDLE = 'middle'            # W(e^{-π-1}) <= λ <= W(e^{π-1}),  π/4 <= ω <= 3π/4
    SMALL = 'small'              # λ < W(e^{-π-1}),  3π/4 < ω < π


@dataclass(frozen=True)
class Thresholds:
    w_e_minus_one: object        # W(e^{-1}) = 0.27846...
    w_e_pi_minus_one: object     # W(e^{π-1}) = 1.64428...
    w_e_minus_pi_minus_one: object


def thresholds(context):
    ctx = context.mp
    return Thresholds(
        w_e_minus_one=lambert_w0(ctx.exp(-1), context),
        w_e_pi_minus_one=lambert_w0(ctx.exp(ctx.pi - 1), context),
        w_e_minus_pi_minus_one=lambert_w0(ctx.exp(-ctx.pi - 1), context),
    )


def classify(lam, context):
    '''Every regime whose λ-range contains lam.

    At the exact thresholds the real part λ + log λ + 1 equals 0 or ±π, so
    the comparison is made on that quantity instead of on λ itself.
    '''
    ctx = context.mp
    real_part = lam + ctx.log(lam) + 1
    pi = +ctx.pi
    tol = ctx.ldexp(1, -context.precision_bits + 16)
    regimes = set()
    if real_part > pi + tol:
        regimes.add(Regime.LARGE)
    if real_part >= -tol:
        regimes.add(Regime.RIGHT_HALF)
    if -pi - tol <= real_part <= pi + tol:
        regimes.add(Regime.MIDDLE)
    if real_part < -pi - tol:
        regimes.add(Regime.SMALL)
    return frozenset(regimes)


@dataclass(frozen=True)
class PhaseData:
    lam: object
    omega: object
    singulant: object            # λ + log λ + 1 + πi
    singulant_mod: object
    regimes: frozenset

    @property
    def regime(self):
        return self.regimes

    def applies(self, regime):
        return regime in self.regimes


def _positive_lambda(lam, context):
    value = convert_real(context, lam, 'λ')
    if not value > 0:
        raise DomainError(f'λ must be positive, got {lam!r}')
    return value


def phase_data(lam, context):
    ctx = context.mp
    lam = _positive_lambda(lam, context)
    real_part = lam + ctx.log(lam) + 1
    singulant = ctx.mpc(real_part, ctx.pi)
    return PhaseData(
        lam=lam,
        omega=ctx.atan2(ctx.pi, real_part),
        singulant=singulant,
        singulant_mod=ctx.hypot(real_part, ctx.pi),
        regimes=classify(lam, context),
    )


def omega_k(lam, k, context):
    ctx = context.mp
    lam = _positive_lambda(lam, context)
    if not isinstance(k, int) or k < 0:
        raise DomainError(f'k must be a non-negative integer, got {k!r}')
    return ctx.atan2((2 * k + 1) * ctx.pi, lam + ctx.log(lam) + 1)


def singulant_mod_k(lam, k, context):
    '''|λ + log λ + 1 + (2k+1)πi|'''
    ctx = context.mp
    lam = _positive_lambda(lam, context)
    return ctx.hypot(lam + ctx.log(lam) + 1, (2 * k + 1) * ctx.pi)


def meijer_bracket(omega, context):
    ctx = context.mp
    half_pi = ctx.pi / 2
    if omega >= half_pi:
        return omega - half_pi, half_pi
    return ctx.zero, omega


def meijer_phi_star(omega, k, context):
    '''meijer_phi_star solves (K+1) sin(ω - 2φ) = (K-1) sin ω on the admissible bracket

    On either bracket ω - 2φ stays inside (-π/2, π/2), so the root is
    φ* = (ω - asin(((K-1)/(K+1)) sin ω))/2.
    '''
    ctx = context.mp
    omega = convert_real(context, omega, 'ω')
    if not isinstance(k, int) or k < 2:
        raise DomainError(f'K must be an integer >= 2, got {k!r}')
    if not 0 < omega < ctx.pi:
        raise DomainError(f'ω must lie in (0, π), got {ctx.nstr(omega, 15)}')
    ratio = ctx.mpf(k - 1) / (k + 1)
    phi = (omega - ctx.asin(ratio * ctx.sin(omega))) / 2
    lo, hi = meijer_bracket(omega, context)
    if not lo < phi < hi:
        raise ConvergenceError(f'φ* = {ctx.nstr(phi, 20)} left its bracket ({ctx.nstr(lo, 20)}, {ctx.nstr(hi, 20)})')
    return phi

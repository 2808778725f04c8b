'''The scaled terminant function T̂_p(w) and its error-function smoothing across the Stokes line.

T̂_p(w) = e^{iπp} Γ(p) Γ(1-p, w)/(2πi)
       = e^{iπp} w^(1-p) e^(-w)/(2πi) ∫_0^∞ t^(p-1) e^(-t)/(w+t) dt,   |arg w| < π.
'''
import enum
import logging

from dataclasses import dataclass

from .numerics import (ConvergenceError, DomainError, SectorError, convert_complex, convert_real,
                       ensure_finite, erf_complex)


logger = logging.getLogger(__name__)

# Angle kept between the integration ray and the pole at t = -w
RAY_CLEARANCE = '0.3'
# Distance from the ends of the smoothing formulas' ranges
SMOOTHING_MARGIN = '0.01'


class Sector(enum.Enum):
    PRINCIPAL = 'principal'      # |arg w| <= π, the defining integral continued onto the rays ±π
    CONTINUED = 'continued'      # |arg w| > π, through the connection relation


@dataclass(frozen=True)
class TerminantValue:
    p: object
    modulus: object
    phi: object
    value: object
    sector: Sector

    @property
    def w(self):
        ctx = self.value.context
        return ctx.mpc(self.modulus * ctx.cos(self.phi), self.modulus * ctx.sin(self.phi))


@dataclass(frozen=True)
class StokesSmoothing:
    phi: object
    c_phi: object
    erf_term: object
    value: object
    branch: str                  # 'upper' for -π < φ < 3π, 'lower' for the mirrored range


def _positive_order(context, p):
    p = convert_real(context, p, 'p')
    if not p > 0:
        raise DomainError(f'the terminant order p must be positive, got {p}')
    return p


def _ray_angle(context, phi):
    ctx = context.mp
    clearance = ctx.mpf(RAY_CLEARANCE)
    if phi >= 0:
        return max(ctx.zero, phi - ctx.pi + clearance)
    return min(ctx.zero, phi + ctx.pi - clearance)


def _defining_integral(context, p, r, phi):
    '''T̂_p(re^{iφ}) for |φ| <= π, integrating along t = s e^{iα} clear of the pole at -w.'''
    ctx = context.mp
    alpha = _ray_angle(context, phi)
    guard = int((p - 1) * ctx.log(ctx.sec(alpha), 2)) + 32 if p > 1 else 32
    with ctx.extraprec(guard):
        w = ctx.mpc(r * ctx.cos(phi), r * ctx.sin(phi))
        direction = ctx.expj(alpha)
        cos_alpha = ctx.cos(alpha)
        peak = max(p - 1, ctx.zero) / cos_alpha
        # log of the integrand modulus at its peak
        scale = (p - 1) * ctx.log(peak) - peak * cos_alpha if p > 1 else ctx.zero

        def integrand(s):
            if s == 0:
                return ctx.zero
            t = s * direction
            return ctx.exp((p - 1) * ctx.log(t) - t - scale) / (w + t) * direction

        width = ctx.sqrt(p + 1) / cos_alpha
        points = {ctx.zero}
        for j in (-4, -2, -1, 0, 1, 2, 4, 8):
            s = peak + j * width
            if s > 0:
                points.add(s)
        points.add(r)
        points = sorted(points) + [ctx.inf]
        integral, err = ctx.quad(integrand, points, error=True, maxdegree=context.quad_degree)
        rel = err / abs(integral) if integral else err
        logger.debug(f'terminant p={ctx.nstr(p, 10)} r={ctx.nstr(r, 10)} φ={ctx.nstr(phi, 10)}: '
                     f'ray angle {ctx.nstr(alpha, 5)}, est. rel. error {ctx.nstr(rel, 3)}')
        if rel > context.quad_rel_tol:
            raise ConvergenceError(f'terminant integral did not converge (estimate {ctx.nstr(rel, 3)})')
        # w^(1-p) on the principal sheet of the polar representation
        log_w = ctx.mpc(ctx.log(r), phi)
        value = ctx.expjpi(p) * ctx.exp((1 - p) * log_w - w + scale) * integral / (2 * ctx.pi * ctx.j)
    return +value


def terminant_polar(p, r, phi, context):
    '''T̂_p(re^{iφ}) for any real φ, continued through T̂_p(we^{±2πi}) relations beyond |φ| = π.'''
    ctx = context.mp
    p = _positive_order(context, p)
    r = convert_real(context, r, 'r')
    phi = convert_real(context, phi, 'φ')
    if not r > 0:
        raise DomainError(f'|w| must be positive, got {r}')
    if abs(phi) <= ctx.pi:
        value = _defining_integral(context, p, r, phi)
        sector = Sector.PRINCIPAL
    elif phi > ctx.pi:
        inner = terminant_polar(p, r, phi - 2 * ctx.pi, context)
        value = 1 + ctx.expjpi(-2 * p) * inner.value
        sector = Sector.CONTINUED
    else:
        inner = terminant_polar(p, r, phi + 2 * ctx.pi, context)
        value = ctx.expjpi(2 * p) * (inner.value - 1)
        sector = Sector.CONTINUED
    ensure_finite(context, value, 'terminant')
    return TerminantValue(p=p, modulus=r, phi=phi, value=value, sector=sector)


def terminant(p, w, context):
    '''T̂_p(w) for complex w off the negative real axis.'''
    ctx = context.mp
    w = convert_complex(context, w)
    if w == 0:
        raise DomainError('the terminant is evaluated for w != 0')
    if w.imag == 0 and w.real < 0:
        raise SectorError('complex w on the negative real axis is ambiguous; use terminant_polar with φ = ±π')
    return terminant_polar(p, abs(w), ctx.arg(w), context)


def terminant_incgamma(p, w, context):
    '''e^{iπp} Γ(p) Γ(1-p, w)/(2πi) through mpmath's incomplete gamma function.'''
    ctx = context.mp
    p = _positive_order(context, p)
    w = convert_complex(context, w)
    if w == 0 or (w.imag == 0 and w.real < 0):
        raise SectorError('terminant_incgamma is evaluated for |arg w| < π')
    with ctx.extraprec(32):
        value = ctx.expjpi(p) * ctx.gamma(p) * ctx.gammainc(1 - p, w) / (2 * ctx.pi * ctx.j)
    return +ctx.mpc(value)


def c_of_phi(phi, context):
    '''The root of c²/2 = 1 + i(φ-π) - e^{i(φ-π)} with c ~ φ - π near the Stokes line.

    c = ψ sqrt(Q) with ψ = φ - π and Q = 2(1 + iψ - e^{iψ})/ψ². Q stays in the
    closed right half-plane for real ψ and tends to 1 as ψ → 0, so the
    principal square root selects the branch.
    '''
    ctx = context.mp
    phi = convert_real(context, phi, 'φ')
    psi = phi - ctx.pi
    if not abs(psi) < 2 * ctx.pi:
        raise DomainError(f'c(φ) is taken for |φ - π| < 2π, got φ = {ctx.nstr(phi, 15)}')
    if psi == 0:
        return ctx.mpc(0)
    # 1 + iψ - e^{iψ} loses about 2 log2(1/|ψ|) bits to cancellation
    with ctx.extraprec(2 * max(0, -ctx.mag(psi)) + 16):
        q = -2 * (ctx.expj(psi) - 1 - ctx.j * psi) / (psi * psi)
        value = psi * ctx.sqrt(q)
    return +value


def stokes_smoothing_polar(p, r, phi, context, branch=None):
    '''Error-function approximation of T̂_p(re^{iφ}) for p close to r.

    upper: 1/2 + erf(c(φ) sqrt(r/2))/2, for -π < φ < 3π.
    lower: e^{2πip}(-1/2 + erf(-conj(c(-φ)) sqrt(r/2))/2), for -3π < φ < π.
    The default is the upper branch for φ >= 0.
    '''
    ctx = context.mp
    p = _positive_order(context, p)
    r = convert_real(context, r, 'r')
    phi = convert_real(context, phi, 'φ')
    margin = ctx.mpf(SMOOTHING_MARGIN)
    branch = branch or ('upper' if phi >= 0 else 'lower')
    scale = ctx.sqrt(r / 2)
    if branch == 'upper':
        if not -ctx.pi + margin <= phi <= 3 * ctx.pi - margin:
            raise SectorError(f'the upper smoothing branch needs -π < φ < 3π, got {ctx.nstr(phi, 10)}')
        c = c_of_phi(phi, context)
        erf_term = erf_complex(c * scale, context)
        value = (1 + erf_term) / 2
    elif branch == 'lower':
        if not -3 * ctx.pi + margin <= phi <= ctx.pi - margin:
            raise SectorError(f'the lower smoothing branch needs -3π < φ < π, got {ctx.nstr(phi, 10)}')
        c = c_of_phi(-phi, context)
        erf_term = erf_complex(-ctx.conj(c) * scale, context)
        value = ctx.expjpi(2 * p) * (erf_term - 1) / 2
    else:
        raise DomainError(f'branch must be "upper" or "lower", got {branch!r}')
    return StokesSmoothing(phi=phi, c_phi=c, erf_term=erf_term, value=value, branch=branch)


def stokes_smoothing(p, w, context, branch=None):
    ctx = context.mp
    w = convert_complex(context, w)
    if w == 0:
        raise DomainError('the smoothing formula is evaluated for w != 0')
    return stokes_smoothing_polar(p, abs(w), ctx.arg(w), context, branch=branch)

'''PASS/FAIL verification suites run against the independent oracles.

Each suite is a list of tasks; a task takes a PrecisionContext and returns
CheckResults. Tasks go through sweep.run_grid, so a suite can spread over
worker threads while keeping its report order.
'''
import math
import logging

from dataclasses import dataclass
from fractions import Fraction
from functools import partial

from .bounds import bound_m, remainder_bound
from .coeffs import b_coeff, b_coeff_polynomial, b_coeff_table, stirling_table
from .expansion import optimal_truncation, remainders
from .hyper import hyper_expand, improved_remainder_bound, order_estimate_check
from .latecoeffs import late_coeff_approx, late_table, optimal_k
from .numerics import DomainError, RegimeError
from .oracle import (b_coeff_from_remainders, b_coeff_integral, b_coeff_oracle, gammastar_oracle,
                     remainder_integral, remainder_series)
from .phase import phase_data
from .sweep import run_grid
from .terminant import c_of_phi, stokes_smoothing_polar, terminant_incgamma, terminant_polar


logger = logging.getLogger(__name__)

# b_100(-λ) as printed: (mantissa, exponent) per (λ, K) and quantity
TABLE_PRINTED = {
    (Fraction(1, 100), 57): {
        'exact': ('-0.320681358577665454823220737555930836965007363', 90),
        'approximation': ('-0.320681358577665454823220737555930624925282126', 90),
        'error': ('-0.212039725237', 57),
        'bound_general': ('0.23677013448560065229', 65),
    },
    (Fraction(2), 57): {
        'exact': ('0.732252465623483776580694573188048575042344276', 184),
        'approximation': ('0.732252465623483776580694573188048575045373691', 184),
        'error': ('-0.3029415', 146),
        'bound_large_lambda': ('0.63782498', 147),
    },
    (Fraction(5), 43): {
        'exact': ('0.186478888380183206402841100236655575383457561', 222),
        'approximation': ('0.186478888380183206402841097953515994081833820', 222),
        'error': ('0.2283139581301623741', 196),
        'bound_large_lambda': ('0.5373934537697861855', 196),
    },
}
TABLE_DIGITS = {'exact': 45, 'approximation': 45, 'error': 6, 'bound_general': 8,
                'bound_large_lambda': 8}
TABLE_PRECISION = 512

REALISM_FACTOR = 10
REALISM_GATE = 0.3
STOKES_ENVELOPE = 1
STOKES_SCALING = 2


@dataclass(frozen=True)
class CheckResult:
    suite: str
    name: str
    passed: bool
    detail: str = ''

    def __str__(self):
        status = 'PASS' if self.passed else 'FAIL'
        return f'{status} {self.suite}/{self.name}' + (f': {self.detail}' if self.detail else '')


def digits_agree(context, value, mantissa, exponent, digits):
    '''value matches the printed 0.ddd...×10^exponent in its first `digits` digits.'''
    ctx = context.mp
    expected = ctx.mpf(mantissa) * ctx.mpf(10) ** exponent
    return abs(value - expected) <= ctx.mpf(10) ** (exponent - digits)


# coeffs

def _check_polynomials(context):
    expected = {0: [1], 1: [0, -1], 2: [0, -1, 2], 3: [0, -1, 8, -6]}
    out = []
    for n, coeffs in expected.items():
        poly = b_coeff_polynomial(n)
        out.append(CheckResult('coeffs', f'polynomial n={n}', list(poly.coeffs) == coeffs, str(poly)))
    return out


def _check_degrees(context, n_max):
    wrong = [n for n in range(n_max + 1) if b_coeff_polynomial(n).degree != n]
    return [CheckResult('coeffs', f'degree = n for n <= {n_max}', not wrong,
                        f'wrong at n = {wrong}' if wrong else '')]


def _check_oracle_equivalence(context, lam, n_max):
    ctx = context.mp
    lam_mp = ctx.mpf(lam.numerator) / lam.denominator
    radius = abs(ctx.mpc(-ctx.log(lam_mp), ctx.pi)) / 2
    worst = ctx.zero
    for n in range(n_max + 1):
        exact = b_coeff(n, lam)
        exact_mp = ctx.mpf(exact.numerator) / exact.denominator
        oracle = b_coeff_oracle(n, lam, context)
        # b_n(-λ) can vanish (b_2(-1/2) = 0); measure against the integrand scale too
        scale = abs(exact_mp) + (lam_mp + 1) ** n * ctx.factorial(n) / radius ** n
        worst = max(worst, abs(oracle - exact_mp) / scale)
    return [CheckResult('coeffs', f'oracle agreement λ={lam}, n <= {n_max}', worst <= context.quad_rel_tol,
                        f'worst scaled difference {ctx.nstr(worst, 3)}')]


def _check_table(context, lam, n_max):
    table = b_coeff_table(n_max, lam)
    wrong = [n for n in range(n_max + 1) if table.value(n) != b_coeff(n, lam)]
    return [CheckResult('coeffs', f'recurrence table λ={lam}, n <= {n_max}', not wrong,
                        f'differs at n = {wrong}' if wrong else '')]


def _check_stirling(context):
    expected = [Fraction(1), Fraction(-1, 12), Fraction(1, 288), Fraction(139, 51840)]
    got = list(stirling_table(3))
    return [CheckResult('coeffs', 'stirling γ_0..γ_3', got == expected, ', '.join(map(str, got)))]


def coeffs_tasks(quick):
    tasks = [_check_polynomials, partial(_check_degrees, n_max=16 if quick else 64), _check_stirling]
    lams = (Fraction(1, 2), Fraction(1), Fraction(2), Fraction(5))
    tasks += [partial(_check_oracle_equivalence, lam=lam, n_max=8 if quick else 12) for lam in lams]
    tasks += [partial(_check_table, lam=lam, n_max=8 if quick else 16) for lam in lams]
    return tasks


# late

def _check_late_table(context):
    work = context.at_least(TABLE_PRECISION)
    out = []
    for row in late_table(work):
        mantissa, exponent = TABLE_PRINTED[(row.lam, row.k_terms)][row.quantity]
        digits = TABLE_DIGITS[row.quantity]
        ok = digits_agree(work, row.value, mantissa, exponent, digits)
        out.append(CheckResult('late', f'table λ={row.lam} K={row.k_terms} {row.quantity}', ok,
                               f'{work.mp.nstr(row.value, digits + 2)} vs {mantissa}e{exponent}'))
    return out


def _check_late_soundness(context, n, lam):
    ctx = context.mp
    out = []
    for k_terms in sorted({2, 5, optimal_k(n, lam, context)}):
        approx = late_coeff_approx(n, lam, k_terms, context)
        size = abs(approx.remainder_true)
        ok = size <= approx.best_bound
        out.append(CheckResult('late', f'soundness n={n} λ={lam} K={k_terms}', ok,
                               f'|A_K| = {ctx.nstr(size, 6)}, bound {ctx.nstr(approx.best_bound, 6)}'))
    return out


def late_tasks(quick):
    tasks = [_check_late_table]
    lams = (Fraction(1, 100), Fraction(1), Fraction(2), Fraction(5))
    for n in ((20, 50) if quick else (20, 50, 100)):
        tasks += [partial(_check_late_soundness, n=n, lam=lam) for lam in lams]
    return tasks


# bounds

def _check_remainder_soundness(context, a, lam):
    ctx = context.mp
    phase = phase_data(lam, context)
    n_opt = optimal_truncation(a, lam, context)
    n_max = max(2, math.ceil(1.5 * n_opt))
    exact = remainders(a, lam, range(2, n_max + 1), context)
    violations, worst = [], ctx.zero
    realism = []
    for n_terms, r_n in exact.items():
        try:
            selection = remainder_bound(a, lam, n_terms, context)
        except RegimeError:
            continue
        size = abs(r_n)
        for report in selection.reports:
            if report.applicable and report.bound_value < size:
                violations.append((n_terms, report.regime.value))
        worst = max(worst, size / selection.bound_value)
        if n_terms == n_opt and phase.lam >= 1:
            gate = abs(ctx.sin((n_terms + ctx.mpf(1) / 2) * phase.omega))
            if gate >= REALISM_GATE:
                ratio = selection.bound_value / size
                realism.append(CheckResult('bounds', f'realism a={a} λ={lam} N={n_terms}', ratio <= REALISM_FACTOR,
                                           f'bound/|R_N| = {ctx.nstr(ratio, 4)}'))
    out = [CheckResult('bounds', f'soundness a={a} λ={lam} N=2..{n_max}', not violations,
                       f'violations {violations[:5]}' if violations else f'max |R_N|/bound {ctx.nstr(worst, 4)}')]
    return out + realism


def _check_bound_m(context, t, theta_over_pi, n_terms):
    ctx = context.mp
    theta = ctx.pi * theta_over_pi
    z = t * ctx.expj(theta)
    gammas = stirling_table(n_terms)
    series = ctx.fsum((-1) ** k * ctx.mpf(gammas[k].numerator) / gammas[k].denominator / z ** k
                      for k in range(n_terms))
    size = abs(gammastar_oracle(z, context) - series)
    bound = bound_m(z, n_terms, context)
    return [CheckResult('bounds', f'bound_m t={t} θ={theta_over_pi}π N={n_terms}', size <= bound,
                        f'|M_N| = {ctx.nstr(size, 6)}, bound {ctx.nstr(bound, 6)}')]


def bounds_tasks(quick):
    a_values = (5, 10) if quick else (5, 10, 20, 40)
    lams = (Fraction(1, 20), Fraction(3, 10), Fraction(1), Fraction(2), Fraction(5))
    tasks = [partial(_check_remainder_soundness, a=a, lam=lam) for a in a_values for lam in lams]
    for t in (2, 5, 20):
        for theta in (Fraction(1, 6), Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)):
            for n_terms in (2, 3, 5):
                tasks.append(partial(_check_bound_m, t=t, theta_over_pi=theta, n_terms=n_terms))
    return tasks


# hyper

def _check_hyper_point(context, a, lam, k_values, k_improve):
    ctx = context.mp
    n_terms = optimal_truncation(a, lam, context)
    r_n = remainders(a, lam, [n_terms], context)[n_terms]
    phase = phase_data(lam, context)
    out = []

    # terminant ingredients against the incomplete gamma route
    modulus = a * phase.singulant_mod
    worst = ctx.zero
    for k in range(max(k_values)):
        order = n_terms - k + ctx.mpf(1) / 2
        for sign in (-1, 1):
            polar = terminant_polar(order, modulus, sign * phase.omega, context).value
            w = a * (ctx.conj(phase.singulant) if sign < 0 else phase.singulant)
            direct = terminant_incgamma(order, w, context)
            worst = max(worst, abs(polar - direct) / abs(direct))
    out.append(CheckResult('hyper', f'terminant cross-check a={a} λ={lam} N={n_terms}',
                           worst <= 10 * context.quad_rel_tol, f'worst relative {ctx.nstr(worst, 3)}'))

    best = abs(r_n)
    for k_terms in sorted(set(k_values) | set(range(k_improve + 1))):
        expansion = hyper_expand(a, lam, n_terms, k_terms, context, with_true=False, with_bound=False)
        size = abs(r_n - expansion.terminant_sum)
        best = min(best, size)
        if k_terms in k_values:
            bound = improved_remainder_bound(a, lam, n_terms, k_terms, context)
            out.append(CheckResult('hyper', f'soundness a={a} λ={lam} N={n_terms} K={k_terms}', size <= bound,
                                   f'|R_NK| = {ctx.nstr(size, 6)}, bound {ctx.nstr(bound, 6)}'))
    out.append(CheckResult('hyper', f'improvement a={a} λ={lam} K <= {k_improve}', best <= abs(r_n) / a,
                           f'min |R_NK| = {ctx.nstr(best, 6)}, |R_N|/|a| = {ctx.nstr(abs(r_n) / a, 6)}'))
    return out


def _check_order(context, lam, k_terms, rho, magnitudes):
    check = order_estimate_check(magnitudes, lam, k_terms, rho, context)
    return [CheckResult('hyper', f'order ladder λ={lam} K={k_terms} ρ={rho}', check.passed,
                        f'drift {check.drift:.3f}')]


def hyper_tasks(quick):
    k_values = (2, 3, 5)
    points = ((10, Fraction(1)), (10, Fraction(2))) if quick else \
        ((10, Fraction(1)), (10, Fraction(2)), (30, Fraction(1)), (30, Fraction(2)))
    tasks = [partial(_check_hyper_point, a=a, lam=lam, k_values=k_values, k_improve=8) for a, lam in points]
    tasks += [partial(_check_order, lam=Fraction(1), k_terms=2, rho=0, magnitudes=(10, 20, 40)),
              partial(_check_order, lam=Fraction(2), k_terms=3, rho=1, magnitudes=(10, 20, 40))]
    return tasks


# stokes

def _stokes_errors(context, r, phis):
    '''|T̂ - smoothing| and its envelope r^(-1/2) e^(-r Re c²/2) at each φ.'''
    ctx = context.mp
    p = r + ctx.mpf(1) / 2
    rows = []
    for phi in phis:
        value = terminant_polar(p, r, phi, context).value
        smooth = stokes_smoothing_polar(p, r, phi, context).value
        c = c_of_phi(phi, context)
        envelope = ctx.exp(-r * (c * c).real / 2) / ctx.sqrt(r)
        rows.append((phi, abs(value - smooth), envelope))
    return rows


def _check_stokes_envelope(context, r, steps):
    ctx = context.mp
    half = ctx.mpf(1) / 2
    phis = [ctx.pi - half + j * (2 * half) / (steps - 1) for j in range(steps)]
    rows = _stokes_errors(context, r, phis)
    worst = max(err / env for _, err, env in rows)
    return [CheckResult('stokes', f'smoothing envelope |w|={r}, {steps} angles', worst <= STOKES_ENVELOPE,
                        f'max error/envelope {ctx.nstr(worst, 4)}')]


def _check_stokes_scaling(context, radii):
    ctx = context.mp
    scaled = []
    for r in radii:
        (_, err, env), = _stokes_errors(context, r, [ctx.pi])
        scaled.append(err / env)
    ratios = [scaled[i + 1] / scaled[i] for i in range(len(scaled) - 1)]
    ok = all(1 / ctx.mpf(STOKES_SCALING) <= q <= STOKES_SCALING for q in ratios)
    return [CheckResult('stokes', f'|w|^(-1/2) scaling on the Stokes line, |w| in {tuple(radii)}', ok,
                        'ratios ' + ', '.join(ctx.nstr(q, 4) for q in ratios))]


def stokes_tasks(quick):
    radii = (25, 100) if quick else (25, 100, 400)
    steps = 11 if quick else 21
    return [partial(_check_stokes_envelope, r=r, steps=steps) for r in radii] + \
        [partial(_check_stokes_scaling, radii=radii)]


# appendix

def _check_saddle_sum(context, lam, a, n_terms, k_max):
    ctx = context.mp
    series = remainder_series(a, lam, n_terms, k_max, context)
    reference = remainder_integral(a, lam, n_terms, context)
    diff = abs(series.partial_sums[-1] - reference)
    ok = diff <= ctx.mpf('1e-6') * abs(reference) + series.tail_bound
    return [CheckResult('appendix', f'saddle sum λ={lam} a={a} N={n_terms} k <= {k_max}', ok,
                        f'difference {ctx.nstr(diff, 4)}, tail bound {ctx.nstr(series.tail_bound, 4)}')]


def _check_integral_coeffs(context, lam, n_max):
    ctx = context.mp
    worst = ctx.zero
    for n in range(1, n_max + 1):
        exact = b_coeff(n, lam)
        exact_mp = ctx.mpf(exact.numerator) / exact.denominator
        worst = max(worst, abs(b_coeff_integral(n, lam, context) / exact_mp - 1))
    return [CheckResult('appendix', f'real-axis integral for b_n λ={lam}, n <= {n_max}',
                        worst <= ctx.mpf('1e-20'), f'worst relative {ctx.nstr(worst, 3)}')]


def _check_coeffs_from_remainders(context, lam, a, n_max):
    ctx = context.mp
    worst = ctx.zero
    for n in range(1, n_max + 1):
        exact = b_coeff(n, lam)
        exact_mp = ctx.mpf(exact.numerator) / exact.denominator
        worst = max(worst, abs(b_coeff_from_remainders(n, a, lam, context) / exact_mp - 1))
    return [CheckResult('appendix', f'b_n from R_n - R_(n+1) λ={lam} a={a}, n <= {n_max}',
                        worst <= ctx.mpf('1e-10'), f'worst relative {ctx.nstr(worst, 3)}')]


def appendix_tasks(quick):
    return [
        partial(_check_saddle_sum, lam=Fraction(1, 10), a=15, n_terms=3, k_max=3),
        partial(_check_integral_coeffs, lam=Fraction(1), n_max=4 if quick else 6),
        partial(_check_integral_coeffs, lam=Fraction(2), n_max=4 if quick else 6),
        partial(_check_coeffs_from_remainders, lam=Fraction(2), a=30, n_max=4 if quick else 6),
    ]


SUITES = {
    'coeffs': coeffs_tasks,
    'late': late_tasks,
    'bounds': bounds_tasks,
    'hyper': hyper_tasks,
    'stokes': stokes_tasks,
    'appendix': appendix_tasks,
}


def run_suite(name, context, quick=False, workers=1):
    if name == 'all':
        results = []
        for suite in SUITES:
            results.extend(run_suite(suite, context, quick=quick, workers=workers))
        return results
    if name not in SUITES:
        raise DomainError(f'unknown suite {name!r}; choose from {", ".join(list(SUITES) + ["all"])}')

    tasks = SUITES[name](quick)
    logger.info(f'suite {name}: {len(tasks)} tasks{" (quick)" if quick else ""}')
    results = []
    for outcome in run_grid(tasks, context, num_workers=workers):
        if outcome.ok:
            results.extend(outcome.result)
        else:
            results.append(CheckResult(name, f'task {outcome.index}', False,
                                       f'{type(outcome.error).__name__}: {outcome.error}'))
    for result in results:
        if result.passed:
            logger.info(str(result))
        else:
            logger.warning(str(result))
    return results

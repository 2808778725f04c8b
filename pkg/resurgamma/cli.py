'''Command-line front end.

    python -m resurgamma expand --a-re 10 --lambda 1 --n 5
    python -m resurgamma table1 --precision 512
    python -m resurgamma verify --suite bounds --quick

Results go to stdout (or --out) as CSV or JSON; logs go to stderr (or --log-file).
'''
import csv
import sys
import json
import logging
import argparse
import itertools

from fractions import Fraction
from functools import partial

from .bounds import remainder_bound
from .coeffs import as_rational, b_coeff, b_coeff_polynomial
from .expansion import optimal_truncation, partial_sum
from .hyper import hyper_expand
from .latecoeffs import late_table
from .numerics import DomainError, PrecisionContext, ResurgammaError
from .oracle import b_coeff_oracle, gammastar_oracle, incgamma_oracle
from .sweep import run_grid
from .terminant import stokes_smoothing_polar, terminant_incgamma, terminant_polar
from .verify import SUITES, run_suite


logger = logging.getLogger(__name__)

LOG_FORMAT = '%(threadName)-6s %(asctime)s %(message)s'

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_VERIFY_FAILED = 2

GRID_KEYS = ('a_re', 'a_im', 'lam', 'n', 'k_terms')


# Output

def _show(context, x):
    if x is None:
        return ''
    if isinstance(x, (bool, int, str, Fraction)):
        return str(x)
    return context.mp.nstr(x, context.digits)


def _complex_columns(context, name, x):
    if x is None:
        return {f'{name}_re': '', f'{name}_im': ''}
    x = context.mp.mpc(x)
    return {f'{name}_re': _show(context, x.real), f'{name}_im': _show(context, x.imag)}


def emit(rows, columns, fmt, out=None):
    '''Write rows (dicts of strings) as CSV with the given header, or as a JSON list.'''
    stream = open(out, 'w', newline='', encoding='utf-8') if out else sys.stdout
    try:
        if fmt == 'json':
            json.dump(rows, stream, indent=2, ensure_ascii=False)
            stream.write('\n')
        else:
            writer = csv.DictWriter(stream, fieldnames=columns, lineterminator='\n')
            writer.writeheader()
            for row in rows:
                writer.writerow(row)
    finally:
        if out:
            stream.close()


# Grid

def parse_grid(text):
    '''"lambda=1,2,5;n=2:10" -> {'lam': [...], 'n': [...]}; lo:hi[:step] is an inclusive integer range.'''
    grid = {}
    if not text:
        return grid
    for part in text.split(';'):
        part = part.strip()
        if not part:
            continue
        key, sep, values = part.partition('=')
        key = key.strip().replace('-', '_')
        key = 'lam' if key == 'lambda' else 'k_terms' if key in ('k', 'k_terms') else key
        if not sep or key not in GRID_KEYS:
            raise DomainError(f'bad grid entry {part!r}; keys are a-re, a-im, lambda, n, k')
        parsed = []
        for item in values.split(','):
            item = item.strip()
            if ':' in item:
                bounds = [int(x) for x in item.split(':')]
                lo, hi = bounds[0], bounds[1]
                step = bounds[2] if len(bounds) > 2 else 1
                parsed.extend(range(lo, hi + 1, step))
            elif key in ('n', 'k_terms'):
                parsed.append(int(item))
            else:
                parsed.append(item)
        grid[key] = parsed
    return grid


def grid_points(args):
    '''Cartesian product of the --grid axes over the scalar flags, in a fixed order.'''
    grid = parse_grid(args.grid)
    axes = [grid.get(key, [getattr(args, key, None)]) for key in GRID_KEYS]
    return [dict(zip(GRID_KEYS, values)) for values in itertools.product(*axes)]


def _a_value(context, point):
    ctx = context.mp
    if point['a_re'] is None:
        raise DomainError('--a-re is required')
    return ctx.mpc(ctx.mpf(point['a_re']), ctx.mpf(point['a_im'] or 0))


def _lam(point):
    if point['lam'] is None:
        raise DomainError('--lambda is required')
    return as_rational(point['lam'])


# Commands

def _expand_point(point, context):
    a, lam = _a_value(context, point), _lam(point)
    n_terms = point['n'] or optimal_truncation(a, lam, context)
    data = partial_sum(a, lam, n_terms, context).to_dict(context.digits)
    row = {'lambda': data['lambda'], 'N': str(data['N']),
           'remainder_bound_units=partial_sum': data['remainder_bound'] or '',
           'regime': data['regime_used'] or ''}
    for name in ('a', 'value', 'partial_sum'):
        row[f'{name}_re'], row[f'{name}_im'] = data[name]
    return row


EXPAND_COLUMNS = ['a_re', 'a_im', 'lambda', 'N', 'value_re', 'value_im', 'partial_sum_re',
                  'partial_sum_im', 'remainder_bound_units=partial_sum', 'regime']


def _bound_point(point, context):
    a, lam = _a_value(context, point), _lam(point)
    n_terms = point['n'] or optimal_truncation(a, lam, context)
    selection = remainder_bound(a, lam, n_terms, context)
    return {
        'a': [_show(context, a.real), _show(context, a.imag)],
        'lambda': str(lam),
        'N': n_terms,
        'selected': selection.regime.value,
        'bound_value': _show(context, selection.bound_value),
        'reports': [r.to_dict(context.digits) for r in selection.reports],
    }


BOUND_COLUMNS = ['a_re', 'a_im', 'lambda', 'N', 'selected', 'bound_value_units=partial_sum']


def _bound_csv_row(record):
    return {'a_re': record['a'][0], 'a_im': record['a'][1], 'lambda': record['lambda'],
            'N': record['N'], 'selected': record['selected'],
            'bound_value_units=partial_sum': record['bound_value']}


def _hyper_point(point, context):
    a, lam = _a_value(context, point), _lam(point)
    n_terms = point['n'] or optimal_truncation(a, lam, context)
    k_terms = point['k_terms'] if point['k_terms'] is not None else 2
    result = hyper_expand(a, lam, n_terms, k_terms, context)
    row = {'lambda': str(lam), 'N': str(n_terms), 'K': str(k_terms)}
    row.update(_complex_columns(context, 'a', a))
    row.update(_complex_columns(context, 'terminant_sum_minus', result.terminant_sum_minus))
    row.update(_complex_columns(context, 'terminant_sum_plus', result.terminant_sum_plus))
    row.update(_complex_columns(context, 'remainder_NK', result.remainder_true))
    row.update(_complex_columns(context, 'remainder_N', result.remainder_n))
    row['bound_NK_units=partial_sum'] = _show(context, result.remainder_bound)
    return row


HYPER_COLUMNS = ['a_re', 'a_im', 'lambda', 'N', 'K', 'terminant_sum_minus_re', 'terminant_sum_minus_im',
                 'terminant_sum_plus_re', 'terminant_sum_plus_im', 'remainder_NK_re', 'remainder_NK_im',
                 'remainder_N_re', 'remainder_N_im', 'bound_NK_units=partial_sum']


def _outcome_rows(outcomes):
    rows = []
    for outcome in outcomes:
        if not outcome.ok:
            raise outcome.error
        rows.append(outcome.result)
    return rows


def cmd_expand(args, context):
    tasks = [partial(_expand_point, point) for point in grid_points(args)]
    return _outcome_rows(run_grid(tasks, context, args.workers)), EXPAND_COLUMNS


def cmd_bound(args, context):
    tasks = [partial(_bound_point, point) for point in grid_points(args)]
    records = _outcome_rows(run_grid(tasks, context, args.workers))
    if args.format == 'csv':
        return [_bound_csv_row(r) for r in records], BOUND_COLUMNS
    return records, None


def cmd_hyper(args, context):
    tasks = [partial(_hyper_point, point) for point in grid_points(args)]
    return _outcome_rows(run_grid(tasks, context, args.workers)), HYPER_COLUMNS


def cmd_coeffs(args, context):
    if args.n is None:
        raise DomainError('--n is required')
    if args.lam is None:
        poly = b_coeff_polynomial(args.n)
        row = {**poly.to_dict(), 'polynomial': str(poly)}
        columns = ['n', 'coeffs', 'polynomial']
    else:
        lam = as_rational(args.lam)
        value = b_coeff(args.n, lam)
        row = {'n': args.n, 'lambda': str(lam), 'b_n(-lambda)': str(value),
               'decimal': _show(context, context.mp.mpf(value.numerator) / value.denominator)}
        columns = ['n', 'lambda', 'b_n(-lambda)', 'decimal']
    if args.format == 'csv':
        row = {k: ' '.join(v) if isinstance(v, list) else v for k, v in row.items()}
    return [row], columns


def cmd_late_table(args, context):
    rows = [{'lambda': str(r.lam), 'K': r.k_terms, 'quantity': r.quantity,
             'value_units=absolute_bn': _show(context, r.value)} for r in late_table(context)]
    return rows, ['lambda', 'K', 'quantity', 'value_units=absolute_bn']


def _terminant_row(context, p, modulus, phi):
    ctx = context.mp
    value = terminant_polar(p, modulus, phi, context)
    row = {'p': _show(context, value.p), 'modulus': _show(context, value.modulus),
           'phi_rad': _show(context, value.phi), 'sector': value.sector.value}
    row.update(_complex_columns(context, 'value', value.value))
    incgamma = None
    if abs(value.phi) < ctx.pi:
        incgamma = terminant_incgamma(p, value.w, context)
    row.update(_complex_columns(context, 'incgamma', incgamma))
    return row


TERMINANT_COLUMNS = ['p', 'modulus', 'phi_rad', 'sector', 'value_re', 'value_im', 'incgamma_re', 'incgamma_im']


def _required_real(context, raw, name):
    if raw is None:
        raise DomainError(f'{name} is required')
    return context.mp.mpf(raw)


def cmd_terminant(args, context):
    p = _required_real(context, args.p, '--p')
    modulus = _required_real(context, args.modulus, '--modulus')
    phi = _required_real(context, args.phi, '--phi')
    return [_terminant_row(context, p, modulus, phi)], TERMINANT_COLUMNS


def _stokes_point(p, modulus, phi, context):
    ctx = context.mp
    value = terminant_polar(p, modulus, phi, context).value
    smooth = stokes_smoothing_polar(p, modulus, phi, context)
    row = {'phi_rad': _show(context, phi), 'branch': smooth.branch}
    row.update(_complex_columns(context, 'terminant', value))
    row.update(_complex_columns(context, 'smoothing', smooth.value))
    row['abs_difference'] = _show(context, abs(value - smooth.value))
    row['envelope_|w|^-1/2*exp(-|w|Re(c^2)/2)'] = _show(
        context, ctx.exp(-modulus * (smooth.c_phi ** 2).real / 2) / ctx.sqrt(modulus))
    return row


STOKES_COLUMNS = ['phi_rad', 'branch', 'terminant_re', 'terminant_im', 'smoothing_re', 'smoothing_im',
                  'abs_difference', 'envelope_|w|^-1/2*exp(-|w|Re(c^2)/2)']


def cmd_stokes_sweep(args, context):
    ctx = context.mp
    modulus = _required_real(context, args.modulus, '--modulus')
    p = ctx.mpf(args.p) if args.p is not None else modulus + ctx.mpf(1) / 2
    width = ctx.mpf(args.width)
    if args.steps < 2:
        raise DomainError('--steps must be at least 2')
    phis = [ctx.pi - width + 2 * width * j / (args.steps - 1) for j in range(args.steps)]
    tasks = [partial(_stokes_point, p, modulus, phi) for phi in phis]
    return _outcome_rows(run_grid(tasks, context, args.workers)), STOKES_COLUMNS


def cmd_oracle(args, context):
    ctx = context.mp
    if args.quantity == 'incgamma':
        point = grid_points(args)[0]
        result = incgamma_oracle(_a_value(context, point), _lam(point), context)
        row = _complex_columns(context, 'value', result.value)
        row['est_rel_err'] = _show(context, result.est_rel_err)
    elif args.quantity == 'gammastar':
        z = ctx.mpc(_required_real(context, args.z_re, '--z-re'), ctx.mpf(args.z_im or 0))
        row = _complex_columns(context, 'value', gammastar_oracle(z, context))
        row['est_rel_err'] = ''
    else:
        if args.n is None:
            raise DomainError('--n is required')
        if args.lam is None:
            raise DomainError('--lambda is required')
        row = _complex_columns(context, 'value', b_coeff_oracle(args.n, as_rational(args.lam), context))
        row['est_rel_err'] = _show(context, context.quad_rel_tol)
    return [row], ['value_re', 'value_im', 'est_rel_err']


def cmd_verify(args, context):
    results = run_suite(args.suite, context, quick=args.quick, workers=args.workers)
    rows = [{'suite': r.suite, 'check': r.name, 'passed': 'PASS' if r.passed else 'FAIL', 'detail': r.detail}
            for r in results]
    failed = sum(not r.passed for r in results)
    logger.warning(f'verify {args.suite}: {len(results) - failed} passed, {failed} failed')
    return rows, ['suite', 'check', 'passed', 'detail'], failed


COMMANDS = {
    'expand': cmd_expand,
    'bound': cmd_bound,
    'coeffs': cmd_coeffs,
    'table1': cmd_late_table,
    'late-table': cmd_late_table,
    'terminant': cmd_terminant,
    'stokes-sweep': cmd_stokes_sweep,
    'hyper': cmd_hyper,
    'oracle': cmd_oracle,
    'verify': cmd_verify,
}

DEFAULT_FORMAT = {'bound': 'json', 'coeffs': 'json'}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--precision', type=int, default=None,
                        help='working precision in bits (default: $RESURGAMMA_DEFAULT_PRECISION or 256)')
    common.add_argument('--format', choices=['csv', 'json'], default=None, help='output format')
    common.add_argument('--out', default=None, help='output file (default: stdout)')
    common.add_argument('--log-level', default='WARNING',
                        choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'], help='log level (default: WARNING)')
    common.add_argument('--log-file', default=None, help='log file (default: stderr)')
    common.add_argument('--workers', type=int, default=1, help='worker threads for grids and suites')

    point = argparse.ArgumentParser(add_help=False)
    point.add_argument('--a-re', dest='a_re', default=None, help='real part of a')
    point.add_argument('--a-im', dest='a_im', default='0', help='imaginary part of a')
    point.add_argument('--lambda', dest='lam', default=None, help='λ as an integer, decimal or p/q')
    point.add_argument('--n', type=int, default=None, help='truncation index N (default: optimal)')
    point.add_argument('--k-terms', dest='k_terms', type=int, default=None, help='terminant terms K')
    point.add_argument('--grid', default=None,
                       help='grid over a-re, a-im, lambda, n, k, e.g. "lambda=1,2;n=2:10"')

    parser = argparse.ArgumentParser(prog='resurgamma',
                                     description='Asymptotics of Γ(-a, λa) with computable error bounds.')
    sub = parser.add_subparsers(dest='command', required=True)
    sub.add_parser('expand', parents=[common, point], help='truncated expansion with its remainder bound')
    sub.add_parser('bound', parents=[common, point], help='remainder bounds for every case')
    sub.add_parser('hyper', parents=[common, point], help='terminant re-expansion of R_N')

    coeffs = sub.add_parser('coeffs', parents=[common], help='exact b_n(-λ)')
    coeffs.add_argument('--n', type=int, default=None)
    coeffs.add_argument('--lambda', dest='lam', default=None, help='evaluate at λ instead of printing the polynomial')

    sub.add_parser('table1', parents=[common], aliases=['late-table'],
                   help='b_100(-λ) against its late-coefficient approximation')

    terminant = sub.add_parser('terminant', parents=[common], help='T̂_p(re^{iφ})')
    terminant.add_argument('--p', default=None)
    terminant.add_argument('--modulus', default=None, help='|w|')
    terminant.add_argument('--phi', default=None, help='arg w in radians, any real value')

    stokes = sub.add_parser('stokes-sweep', parents=[common], help='T̂ against its erf smoothing across arg w = π')
    stokes.add_argument('--modulus', default=None, help='|w|')
    stokes.add_argument('--p', default=None, help='order (default: |w| + 1/2)')
    stokes.add_argument('--width', default='0.5', help='half-width of the φ window around π')
    stokes.add_argument('--steps', type=int, default=21)

    oracle = sub.add_parser('oracle', parents=[common, point], help='independent reference values')
    oracle.add_argument('--quantity', choices=['incgamma', 'gammastar', 'bcoeff'], default='incgamma')
    oracle.add_argument('--z-re', dest='z_re', default=None)
    oracle.add_argument('--z-im', dest='z_im', default='0')

    verify = sub.add_parser('verify', parents=[common], help='run verification suites')
    verify.add_argument('--suite', choices=list(SUITES) + ['all'], default='all')
    verify.add_argument('--quick', action='store_true', help='reduced grids')
    return parser


def configure_logging(level, log_file=None):
    logging.basicConfig(level=level, filename=log_file, format=LOG_FORMAT)


def main(argv=None):
    args = build_parser().parse_args(argv)
    configure_logging(args.log_level, args.log_file)
    args.format = args.format or DEFAULT_FORMAT.get(args.command, 'csv')
    try:
        if args.precision is None:
            context = PrecisionContext.from_env()
        else:
            context = PrecisionContext.from_env(precision_bits=args.precision)
        logger.info(f'{args.command} at {context.precision_bits} bits')
        output = COMMANDS[args.command](args, context)
        rows, columns = output[0], output[1]
        emit(rows, columns, args.format, args.out)
    except (ResurgammaError, ValueError) as e:
        logger.error(f'{args.command}: {e}')
        return EXIT_ERROR
    if args.command == 'verify' and output[2]:
        return EXIT_VERIFY_FAILED
    return EXIT_OK


if __name__ == '__main__':
    sys.exit(main())

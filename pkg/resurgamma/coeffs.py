from __future__ import annotations

import logging
import math
import threading

from dataclasses import dataclass
from fractions import Fraction
from typing import Generic, Sequence, TypeVar, Union

import mpmath

from .numerics import DomainError


logger = logging.getLogger(__name__)

SUPERSCRIPTS = str.maketrans('0123456789', '⁰¹²³⁴⁵⁶⁷⁸⁹')
MINUS = '−'


def as_rational(x, name='λ'):
    '''as_rational converts ints, Fractions, decimal or "p/q" strings, floats and mpf values exactly'''
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise DomainError(f'{name} must be a number, got {x!r}')
    if isinstance(x, (int, float)):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip().replace(MINUS, '-'))
        except (ValueError, ZeroDivisionError):
            raise DomainError(f'{name} is not a rational number: {x!r}')
    if hasattr(x, 'man') and hasattr(x, 'exp'):
        if not mpmath.isfinite(x):
            raise DomainError(f'{name} must be finite, got {x!r}')
        man, exp = int(x.man), int(x.exp)
        return Fraction(man * 2 ** exp) if exp >= 0 else Fraction(man, 2 ** -exp)
    raise DomainError(f'{name} must be rational, got {type(x).__name__}')


def positive_rational(x, name='λ'):
    value = as_rational(x, name)
    if value <= 0:
        raise DomainError(f'{name} must be positive, got {value}')
    return value


class LambdaPolynomial:
    '''Exact polynomial in one indeterminate with Fraction coefficients, lowest degree first.'''

    __slots__ = ('coeffs',)

    def __init__(self, coeffs=()):
        coeffs = [Fraction(c) for c in coeffs]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.coeffs = tuple(coeffs)

    @classmethod
    def constant(cls, c):
        return cls([c])

    @classmethod
    def variable(cls):
        return cls([0, 1])

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_constant(self):
        return len(self.coeffs) <= 1

    def constant_term(self):
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def is_integral(self):
        return all(c.denominator == 1 for c in self.coeffs)

    def __call__(self, x):
        result = Fraction(0) if isinstance(x, (int, Fraction)) else 0
        for c in reversed(self.coeffs):
            result = result * x + c
        return result

    def _coerce(self, other):
        if isinstance(other, LambdaPolynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return LambdaPolynomial.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return LambdaPolynomial(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return LambdaPolynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return LambdaPolynomial(c * other for c in self.coeffs)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.coeffs or not other.coeffs:
            return LambdaPolynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x == 0:
                continue
            for j, y in enumerate(other.coeffs):
                out[i + j] += x * y
        return LambdaPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        result = LambdaPolynomial.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f'LambdaPolynomial({[str(c) for c in self.coeffs]})'

    def pretty(self, symbol='λ'):
        terms = []
        for power in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[power]
            if c == 0:
                continue
            magnitude = abs(c)
            if power == 0:
                body = str(magnitude)
            else:
                body = '' if magnitude == 1 else str(magnitude)
                body += symbol + (str(power).translate(SUPERSCRIPTS) if power > 1 else '')
            sign = MINUS if c < 0 else '+'
            if not terms:
                terms.append(body if c > 0 else MINUS + body)
            else:
                terms.append(f'{sign} {body}')
        return ' '.join(terms) if terms else '0'

    __str__ = pretty


R = TypeVar('R', Fraction, LambdaPolynomial)
Coefficient = Union[Fraction, LambdaPolynomial]


def _invert_unit(c):
    if isinstance(c, LambdaPolynomial):
        if not c.is_constant() or c.constant_term() == 0:
            raise DomainError('series constant term must be a nonzero constant')
        return LambdaPolynomial.constant(1 / c.constant_term())
    if c == 0:
        raise DomainError('series constant term must be nonzero')
    return 1 / Fraction(c)


class RationalSeries(Generic[R]):
    '''Truncated power series sum c_j t^j, known exactly through t^order.

    Coefficients are Fractions or LambdaPolynomials; arithmetic never rounds.
    '''

    __slots__ = ('coefficients', 'order')

    def __init__(self, coefficients: Sequence[R], order: int):
        if order < 0:
            raise DomainError(f'series order must be non-negative, got {order}')
        coeffs = list(coefficients[:order + 1])
        zero = _zero_like(coeffs[0]) if coeffs else Fraction(0)
        coeffs += [zero] * (order + 1 - len(coeffs))
        self.coefficients = tuple(coeffs)
        self.order = order

    def __getitem__(self, j):
        return self.coefficients[j]

    def __len__(self):
        return self.order + 1

    def truncate(self, order):
        return RationalSeries(self.coefficients, min(order, self.order))

    def __add__(self, other: RationalSeries[R]) -> RationalSeries[R]:
        order = min(self.order, other.order)
        return RationalSeries([self[j] + other[j] for j in range(order + 1)], order)

    def __neg__(self):
        return RationalSeries([-c for c in self.coefficients], self.order)

    def __sub__(self, other: RationalSeries[R]) -> RationalSeries[R]:
        return self + (-other)

    def scale(self, factor) -> RationalSeries[R]:
        return RationalSeries([c * factor for c in self.coefficients], self.order)

    def __mul__(self, other: RationalSeries[R]) -> RationalSeries[R]:
        order = min(self.order, other.order)
        zero = _zero_like(self[0])
        out = [zero] * (order + 1)
        for i in range(order + 1):
            x = self[i]
            if x == 0:
                continue
            for j in range(order + 1 - i):
                y = other[j]
                if y != 0:
                    out[i + j] = out[i + j] + x * y
        return RationalSeries(out, order)

    def reciprocal(self) -> RationalSeries[R]:
        '''Newton iteration g <- g(2 - f g), doubling the known order each step.'''
        inverse = RationalSeries([_invert_unit(self[0])], 0)
        known = 0
        while known < self.order:
            known = min(2 * known + 1, self.order)
            f = self.truncate(known)
            g = inverse.truncate(known) if inverse.order >= known else RationalSeries(inverse.coefficients, known)
            correction = f * g
            two = RationalSeries([_one_like(self[0]) * 2], known)
            inverse = g * (two - correction)
        return inverse

    def power(self, k: int) -> RationalSeries[R]:
        if k < 0:
            return self.reciprocal().power(-k)
        result = RationalSeries([_one_like(self[0])], self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def exp(self) -> RationalSeries[R]:
        '''exp of a series without constant term: E_n = (1/n) sum_j j c_j E_{n-j}.'''
        if self[0] != 0:
            raise DomainError('exp needs a series with zero constant term')
        out = [_one_like(self[0]) if isinstance(self[0], LambdaPolynomial) else Fraction(1)]
        for n in range(1, self.order + 1):
            acc = _zero_like(self[0])
            for j in range(1, n + 1):
                if self[j] != 0:
                    acc = acc + self[j] * out[n - j] * j
            out.append(acc * Fraction(1, n))
        return RationalSeries(out, self.order)

    def __repr__(self):
        return f'RationalSeries({[str(c) for c in self.coefficients]}, order={self.order})'


def _zero_like(c):
    return LambdaPolynomial() if isinstance(c, LambdaPolynomial) else Fraction(0)


def _one_like(c):
    return LambdaPolynomial.constant(1) if isinstance(c, LambdaPolynomial) else Fraction(1)


def _shifted_exp_tail(order):
    # (e^t - 1 - t)/t = sum_{j>=1} t^j/(j+1)!
    return [Fraction(0)] + [Fraction(1, math.factorial(j + 1)) for j in range(1, order + 1)]


def series_exp_kernel(lam, order):
    '''Taylor data of g(t) = (λ+1)t/(λe^t + t - λ) through t^order.

    Writing λe^t + t - λ = (λ+1)t + λ(e^t - 1 - t) gives g = 1/(1 + κE(t))
    with κ = λ/(λ+1) and E(t) = (e^t - 1 - t)/t, so g(0) = 1.
    '''
    lam = positive_rational(lam)
    if order < 0:
        raise DomainError(f'series order must be non-negative, got {order}')
    kappa = lam / (lam + 1)
    denominator = RationalSeries(_shifted_exp_tail(order), order).scale(kappa)
    denominator = RationalSeries([Fraction(1)] + list(denominator.coefficients[1:]), order)
    return denominator.reciprocal()


def b_coeff(n, lam):
    '''b_coeff returns b_n(-λ) = (λ+1)^n n! [t^n] g(t)^(n+1) exactly'''
    if not isinstance(n, int) or n < 0:
        raise DomainError(f'n must be a non-negative integer, got {n!r}')
    lam = positive_rational(lam)
    if n == 0:
        return Fraction(1)
    powered = series_exp_kernel(lam, n).power(n + 1)
    return (lam + 1) ** n * math.factorial(n) * powered[n]


@dataclass(frozen=True)
class CoeffPolynomial:
    n: int
    poly: LambdaPolynomial

    @property
    def coeffs(self):
        return self.poly.coeffs

    @property
    def degree(self):
        return self.poly.degree

    def evaluate(self, lam):
        return self.poly(as_rational(lam))

    def to_dict(self):
        return {'n': self.n, 'coeffs': [f'{c.numerator}/{c.denominator}' for c in self.poly.coeffs]}

    def __str__(self):
        return self.poly.pretty()


def b_coeff_polynomial(n):
    '''b_n(-λ) as a polynomial in λ.

    The series engine runs over Q[κ] with κ = λ/(λ+1): [t^n] (1 + κE)^-(n+1)
    is a polynomial P(κ) of degree <= n, and b_n(-λ) = n! sum_j p_j λ^j (λ+1)^(n-j).
    '''
    if not isinstance(n, int) or n < 0:
        raise DomainError(f'n must be a non-negative integer, got {n!r}')
    if n == 0:
        return CoeffPolynomial(0, LambdaPolynomial.constant(1))
    kappa = LambdaPolynomial.variable()
    tail = _shifted_exp_tail(n)
    kernel = RationalSeries([LambdaPolynomial.constant(1)] + [kappa * c for c in tail[1:]], n)
    p_kappa = kernel.reciprocal().power(n + 1)[n]

    lam = LambdaPolynomial.variable()
    lam_plus_one = LambdaPolynomial([1, 1])
    result = LambdaPolynomial()
    for j, p in enumerate(p_kappa.coeffs):
        if p != 0:
            result = result + (lam ** j) * (lam_plus_one ** (n - j)) * p
    return CoeffPolynomial(n, result * math.factorial(n))


@dataclass(frozen=True)
class CoeffTable:
    '''b_0(-λ) ... b_n(-λ) stored as integers B_m = q^m b_m(-λ) for λ = p/q.'''
    lam: Fraction
    numerators: tuple

    @property
    def size(self):
        return len(self.numerators)

    def value(self, m):
        return Fraction(self.numerators[m], self.lam.denominator ** m)

    def mp_value(self, ctx, m):
        return ctx.mpf(self.numerators[m]) / ctx.mpf(self.lam.denominator) ** m


_table_cache = {}
_table_lock = threading.Lock()


def b_coeff_table(n_max, lam):
    '''Coefficients b_0 .. b_{n_max} from the integer recurrence of the inverse map.

    With τ = λe^t + t - λ, dt/dτ = 1/(τ - t + λ + 1), which gives
    b_m = -mλ b_{m-1} + sum_{k=0}^{m-2} C(m,k) b_k b_{m-1-k}.
    '''
    lam = positive_rational(lam)
    if n_max < 0:
        raise DomainError(f'n_max must be non-negative, got {n_max}')
    p, q = lam.numerator, lam.denominator
    with _table_lock:
        scaled = _table_cache.setdefault(lam, [1])
        if len(scaled) <= n_max:
            logger.debug(f'extending coefficient table for λ={lam} from {len(scaled)} to {n_max + 1}')
        for m in range(len(scaled), n_max + 1):
            acc = 0
            for k in range(m - 1):
                acc += math.comb(m, k) * scaled[k] * scaled[m - 1 - k]
            scaled.append(-m * p * scaled[m - 1] + q * acc)
        numerators = tuple(scaled[:n_max + 1])
    return CoeffTable(lam, numerators)


@dataclass(frozen=True)
class StirlingCoeff:
    k: int
    value: Fraction


_stirling_cache = [Fraction(1)]
_stirling_lock = threading.Lock()


def stirling_table(k_max):
    '''γ_0 .. γ_{k_max} with Γ*(z) ~ sum (-1)^k γ_k z^-k.

    log Γ*(z) ~ sum_m B_{2m}/(2m(2m-1)) z^(1-2m); the exponential of that
    series gives the classical coefficients g_k, and γ_k = (-1)^k g_k.
    '''
    if k_max < 0:
        raise DomainError(f'k must be non-negative, got {k_max}')
    with _stirling_lock:
        if len(_stirling_cache) <= k_max:
            order = max(k_max, 2 * len(_stirling_cache))
            log_series = [Fraction(0)] * (order + 1)
            for m in range(1, (order + 1) // 2 + 1):
                if 2 * m - 1 <= order:
                    p, q = mpmath.bernfrac(2 * m)
                    log_series[2 * m - 1] = Fraction(int(p), int(q) * 2 * m * (2 * m - 1))
            g = RationalSeries(log_series, order).exp()
            _stirling_cache[:] = [(-1) ** k * g[k] for k in range(order + 1)]
            logger.debug(f'stirling coefficients computed through k={order}')
        return tuple(_stirling_cache[:k_max + 1])


def stirling_gamma(k):
    if not isinstance(k, int) or k < 0:
        raise DomainError(f'k must be a non-negative integer, got {k!r}')
    return StirlingCoeff(k, stirling_table(k)[k])

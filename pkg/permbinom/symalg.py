#!/usr/bin/env python

"""
Exact symbolic algebra: dense polynomials over the rationals and the
integers (gmpy2 mpq / mpz coefficients), the bracket polynomial B_alpha(v)
and the integer polynomials g_alpha extracted from it, resultants by the
subresultant remainder sequence, trial-division factoring and gcds of the
mod-p reductions.
"""

import logging
import numbers
from functools import reduce

import gmpy2
from gmpy2 import mpz, mpq

from .cache import ComputedCache
from .ffield import FpPoly, fp_gcd, format_poly, format_terms, is_prime
from .errors import BadAlpha, NotDivisible, FractionalResidue, AllZero, \
        FixtureMismatch, PreconditionViolated, NonPrimeP


# Trial division stops at this divisor.
FACTOR_BOUND = 10**6

# The g-polynomials as printed, descending coefficients.
PRINTED_G = {
    2: [2, 3, -23, -8, -9, 44],
    5: [-14, -8, 22, -469, -1093, 8852, 6801, 10527, -61068, -18619,
        -25033, 120197, 13516, 16822, -71162],
    8: [130, 57, -187, 4082, 3585, -7667, 156234, 453573, -3916551,
        -4144622, -7594467, 48939959, 25221008, 39342423, -213366911,
        -61811112, -88032825, 422650317, 66303028, 88882095, -389019163,
        -25886212, -33211905, 135094180],
    11: [-3952, -1522, 5474, -139802, -89324, 229126, -3943602, -4392909,
        8336511, -180820302, -605825169, 5521784781, 7111655988,
        14607372831, -101269369227, -69095625624, -119477261853,
        705650100129, 303870716124, 475920749355, -2503382174319,
        -706243777836, -1034492806725, 4972469163636, 898579001889,
        1253008322595, -5598768742164, -591556509206, -794043854630,
        3339003167188, 157572058982, 205140400010, -819352075360],
    14: [41800, 14895, -56695, 1691000, 905631, -2596631, 47250150,
        37894401, -85144551, 1395800990, 1826164521, -3221965511,
        75566097190, 281332431561, -2683745985685, -3976231919076,
        -8901790877799, 65232090577890, 53701334712609, 100487514543597,
        -632854611825486, -347885978019711, -586551837541203,
        3307822221633594, 1283881108529889, 2015859062567817,
        -10419893389315746, -2892546806289271, -4307726185011783,
        20728564105915330, 4054215382726378, 5793391583605092,
        -26245535590106350, -3451745974770042, -4770402189292728,
        20520594631893930, 1634454816505198, 2197118421394272,
        -9034762128135730, -330180086243950, -433563200685120,
        1713531735146800],
}

# Power of 3 cleared from each printed bracket.
PRINTED_D = {2: 2, 5: 6, 8: 10, 11: 15, 14: 19}

_log = logging.getLogger(__name__)


def to_mpz(c):
    if isinstance(c, numbers.Integral):
        return mpz(int(c))
    if isinstance(c, str):
        c = mpq(c)
    elif isinstance(c, numbers.Rational):
        c = mpq(int(c.numerator), int(c.denominator))
    if c.denominator != 1:
        raise FractionalResidue('%s is not an integer' % c)
    return mpz(c.numerator)


def to_mpq(c):
    if isinstance(c, numbers.Integral):
        return mpq(int(c))
    if isinstance(c, numbers.Rational):
        return mpq(int(c.numerator), int(c.denominator))
    return mpq(c)


class _DensePoly(object):
    """
    Dense univariate polynomial with little-endian coefficients and no
    trailing zeros.  Subclasses fix the coefficient ring.
    """

    __slots__ = ('coeffs', 'var')

    _coerce = None

    def __init__(self, coeffs=(), var='y'):
        coerce = self.__class__._coerce
        coeffs = [coerce(c) for c in coeffs]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.coeffs = tuple(coeffs)
        self.var = var

    @classmethod
    def from_descending(cls, coeffs, var='y'):
        return cls(list(reversed(coeffs)), var=var)

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def lc(self):
        if not self.coeffs:
            return self.__class__._coerce(0)
        return self.coeffs[-1]

    def descending(self):
        return list(reversed(self.coeffs))

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, numbers.Rational):
            other = ZPoly((other,)) if isinstance(other, numbers.Integral) \
                    else QPoly((other,))
        if not isinstance(other, _DensePoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash(tuple(to_mpq(c) for c in self.coeffs))

    def _peer(self, other):
        """
        Return (result class, other coefficients).
        """
        if isinstance(other, _DensePoly):
            coeffs = other.coeffs
        elif isinstance(other, numbers.Rational):
            coeffs = (other,)
        else:
            return (None, None)
        if isinstance(self, QPoly) or isinstance(other, QPoly) \
                or not isinstance(other, (_DensePoly, numbers.Integral)):
            return (QPoly, coeffs)
        return (ZPoly, coeffs)

    def __add__(self, other):
        (cls, coeffs) = self._peer(other)
        if cls is None:
            return NotImplemented
        size = max(len(self.coeffs), len(coeffs))
        a = list(self.coeffs) + [0] * (size - len(self.coeffs))
        b = list(coeffs) + [0] * (size - len(coeffs))
        return cls([x + y for (x, y) in zip(a, b)], var=self.var)

    __radd__ = __add__

    def __neg__(self):
        return self.__class__([-c for c in self.coeffs], var=self.var)

    def __sub__(self, other):
        (cls, coeffs) = self._peer(other)
        if cls is None:
            return NotImplemented
        return self + cls([-c for c in coeffs])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        (cls, coeffs) = self._peer(other)
        if cls is None:
            return NotImplemented
        if not self.coeffs or not coeffs:
            return cls((), var=self.var)
        product = [0] * (len(self.coeffs) + len(coeffs) - 1)
        for (i, a) in enumerate(self.coeffs):
            if a == 0:
                continue
            for (j, b) in enumerate(coeffs):
                product[i + j] += a * b
        return cls(product, var=self.var)

    __rmul__ = __mul__

    def __pow__(self, k):
        result = self.__class__((1,), var=self.var)
        for _ in range(k):
            result = result * self
        return result

    def scale(self, c):
        return self * c

    def shift(self, k):
        """
        Multiply by var^k.
        """
        if not self.coeffs:
            return self
        return self.__class__((0,) * k + self.coeffs, var=self.var)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def reverse(self, n=None):
        """
        var^n * self(1/var); n defaults to the degree.
        """
        if n is None:
            n = self.degree
        if n < self.degree:
            raise PreconditionViolated('cannot reverse degree %d at %d' \
                    % (self.degree, n))
        padded = self.coeffs + (0,) * (n + 1 - len(self.coeffs))
        return self.__class__(reversed(padded), var=self.var)

    def with_var(self, var):
        return self.__class__(self.coeffs, var=var)

    def _divide_coeff(self, a, b):
        raise NotImplementedError()

    def __divmod__(self, other):
        (cls, coeffs) = self._peer(other)
        if cls is None:
            return NotImplemented
        divisor = cls(coeffs)
        if not divisor:
            raise ZeroDivisionError('polynomial division by zero')
        rem = list(cls(self.coeffs).coeffs)
        shift = len(rem) - len(divisor.coeffs)
        quot = [0] * max(shift + 1, 0)
        while shift >= 0:
            c = divisor._divide_coeff(rem[-1], divisor.lc)
            quot[shift] = c
            if c:
                for (k, b) in enumerate(divisor.coeffs):
                    rem[k + shift] -= c * b
            rem.pop()
            shift -= 1
        return (cls(quot, var=self.var), cls(rem, var=self.var))

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other):
        """
        Quotient of an exact division; a nonzero remainder raises
        NotDivisible.
        """
        (quot, rem) = divmod(self, other)
        if rem:
            raise NotDivisible('%s does not divide %s (remainder %s)' \
                    % (other, self, rem))
        return quot

    def mod_p(self, p):
        """
        Reduction mod p as an FpPoly.  Rational coefficients need
        denominators prime to p.
        """
        result = []
        for c in self.coeffs:
            c = to_mpq(c)
            result.append(int(c.numerator * gmpy2.invert(c.denominator, p)))
        return FpPoly(p, result)

    def __str__(self):
        return format_poly(self.coeffs, self.var)

    def __repr__(self):
        return '%s(%r, var=%r)' % (self.__class__.__name__,
                [str(c) for c in self.coeffs], self.var)

    def terms(self):
        return format_terms(self.coeffs, self.var)

    def to_json(self):
        return [str(c) for c in self.coeffs]


class ZPoly(_DensePoly):
    """
    Polynomial with arbitrary-precision integer coefficients.
    """

    __slots__ = ()

    _coerce = staticmethod(to_mpz)

    def _divide_coeff(self, a, b):
        (quot, rem) = divmod(a, b)
        if rem:
            raise NotDivisible('%s is not divisible by %s' % (a, b))
        return quot

    def content(self):
        if not self.coeffs:
            return mpz(0)
        return reduce(gmpy2.gcd, self.coeffs, mpz(0))

    def primitive_part(self):
        c = self.content()
        if c == 0:
            return self
        return ZPoly([a // c for a in self.coeffs], var=self.var)

    def div_scalar(self, c):
        """
        Divide every coefficient by the integer c, which must divide them.
        """
        return ZPoly([self._divide_coeff(a, c) for a in self.coeffs],
                var=self.var)

    def pseudo_rem(self, other):
        """
        Pseudo-remainder: lc(other)^(deg self - deg other + 1) * self
        reduced mod other, computed without fractions.
        """
        d = other.degree
        lcb = other.lc
        rem = list(self.coeffs)
        e = self.degree - d + 1
        while rem and len(rem) - 1 >= d:
            shift = len(rem) - 1 - d
            lead = rem[-1]
            rem = [c * lcb for c in rem]
            for (k, b) in enumerate(other.coeffs):
                rem[k + shift] -= lead * b
            while rem and rem[-1] == 0:
                rem.pop()
            e -= 1
        scale = lcb ** max(e, 0)
        return ZPoly([c * scale for c in rem], var=self.var)

    def to_qpoly(self):
        return QPoly(self.coeffs, var=self.var)


class QPoly(_DensePoly):
    """
    Polynomial with exact rational coefficients in lowest terms.
    """

    __slots__ = ()

    _coerce = staticmethod(to_mpq)

    def _divide_coeff(self, a, b):
        return a / b

    def denominator(self):
        """
        Least common multiple of the coefficient denominators.
        """
        return reduce(gmpy2.lcm,
                (c.denominator for c in self.coeffs), mpz(1))

    def to_zpoly(self):
        return ZPoly(self.coeffs, var=self.var)


def _as_zpoly(f):
    if isinstance(f, ZPoly):
        return f
    return ZPoly(f.coeffs if isinstance(f, _DensePoly) else f)


def gen_binom(x, n):
    """
    Generalised binomial x(x-1)...(x-n+1)/n! over the rationals.
    """
    x = to_mpq(x)
    result = mpq(1)
    for k in range(n):
        result *= x - k
    return result / gmpy2.fac(n)


def check_alpha(alpha):
    if isinstance(alpha, bool) or not isinstance(alpha, numbers.Integral) \
            or alpha < 2 or alpha % 3 != 2:
        raise BadAlpha(alpha)
    return int(alpha)


def bracket_poly(alpha):
    """
    B_alpha(v) = sum_i (-1)^i C(alpha, i) sum_{l=0..2}
        C(i + (2 alpha - 1 + l)/3, alpha) v^(3i + l)
    """
    alpha = check_alpha(alpha)
    coeffs = [mpq(0)] * (3 * alpha + 3)
    for i in range(alpha + 1):
        outer = (-1) ** i * gmpy2.comb(alpha, i)
        for l in range(3):
            coeffs[3 * i + l] += outer * gen_binom(
                    i + mpq(2 * alpha - 1 + l, 3), alpha)
    return QPoly(coeffs, var='v')


# v^3 + v^2 + v = v(v^2 + v + 1)
_CUBE_FACTOR = ZPoly((0, 1, 1, 1), var='v')


class GPolyRecord(object):
    """
    The elimination polynomial of a given alpha.

    ``bracket`` is B_alpha(v); ``d_alpha`` the power of 3 clearing its
    denominators; ``g_v`` the quotient 3^d B_alpha(v) / (v(v^2+v+1)) and
    ``g`` its reversal at degree 3 alpha - 1, in y.  The polynomials are
    meaningful for q >= ``q_bound``.
    """

    def __init__(self, alpha, d_alpha, bracket, g_v, g):
        self.alpha = alpha
        self.d_alpha = d_alpha
        self.bracket = bracket
        self.g_v = g_v
        self.g = g
        self.q_bound = 2 * alpha + 4

    def reconstruct(self):
        """
        (v^2+v+1) * v * rev(g)(v), which must equal 3^d B_alpha(v).
        """
        return _CUBE_FACTOR * self.g.reverse(3 * self.alpha - 1).with_var('v')

    def reconstruction_holds(self):
        scaled = self.bracket * mpz(3) ** self.d_alpha
        return scaled == self.reconstruct().to_qpoly()

    def check_printed(self):
        """
        Compare against the printed coefficient list, where there is one.
        """
        printed = PRINTED_G.get(self.alpha)
        if printed is None:
            return
        actual = [int(c) for c in self.g.descending()]
        if actual != printed:
            raise FixtureMismatch('g_%d' % self.alpha, printed, actual)
        expected_d = PRINTED_D[self.alpha]
        if self.d_alpha != expected_d:
            raise FixtureMismatch('d_%d' % self.alpha, expected_d,
                    self.d_alpha)

    @property
    def meta(self):
        return {
                'alpha': self.alpha,
                'd_alpha': self.d_alpha,
                'q_bound': self.q_bound,
                'degree': self.g.degree,
                'g': self.g.to_json(),
                'g_v': self.g_v.to_json(),
                'text': str(self.g),
        }


def _build_g_poly(alpha, log):
    bracket = bracket_poly(alpha)
    (rest, d_alpha) = gmpy2.remove(bracket.denominator(), 3)
    if rest != 1:
        raise FractionalResidue(
                'B_%d has denominators outside powers of 3 (cofactor %s)' \
                % (alpha, rest))
    d_alpha = int(d_alpha)
    scaled = (bracket * mpz(3) ** d_alpha).to_zpoly()
    g_v = scaled.exact_div(_CUBE_FACTOR)
    g = g_v.reverse(3 * alpha - 1).with_var('y')
    if g.degree != 3 * alpha - 1:
        raise NotDivisible('g_%d has degree %d, expected %d' \
                % (alpha, g.degree, 3 * alpha - 1))
    log.debug('g_%d: degree %d, d=%d', alpha, g.degree, d_alpha)
    return GPolyRecord(alpha, d_alpha, bracket, g_v, g)


_GPOLYS = ComputedCache(lambda alpha: _build_g_poly(alpha, _log),
        name='g_poly')


def g_poly(alpha, check=False):
    """
    The GPolyRecord for alpha; with ``check`` it is also compared against
    the printed fixtures (FixtureMismatch on deviation).
    """
    record = _GPOLYS[check_alpha(alpha)]
    if check:
        record.check_printed()
    return record


def sylvester_matrix(f, g):
    """
    Sylvester matrix of f and g: deg g shifted rows of f, then deg f
    shifted rows of g, coefficients descending.
    """
    f = _as_zpoly(f)
    g = _as_zpoly(g)
    m = f.degree
    n = g.degree
    size = m + n
    fd = f.descending()
    gd = g.descending()
    rows = []
    for i in range(n):
        rows.append([mpz(0)] * i + fd + [mpz(0)] * (size - m - 1 - i))
    for i in range(m):
        rows.append([mpz(0)] * i + gd + [mpz(0)] * (size - n - 1 - i))
    return rows


def bareiss_det(matrix):
    """
    Determinant of an integer matrix by fraction-free elimination.
    """
    rows = [[mpz(x) for x in row] for row in matrix]
    n = len(rows)
    if n == 0:
        return mpz(1)
    sign = 1
    prev = mpz(1)
    for k in range(n - 1):
        if rows[k][k] == 0:
            for i in range(k + 1, n):
                if rows[i][k] != 0:
                    (rows[k], rows[i]) = (rows[i], rows[k])
                    sign = -sign
                    break
            else:
                return mpz(0)
        pivot = rows[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                rows[i][j] = (rows[i][j] * pivot - rows[i][k] * rows[k][j]) \
                        // prev
            rows[i][k] = mpz(0)
        prev = pivot
    return sign * rows[n - 1][n - 1]


def resultant_z(f, g):
    """
    Res(f, g) over the integers, with the Sylvester-determinant sign
    convention, by the subresultant polynomial remainder sequence.
    """
    a_poly = _as_zpoly(f)
    b_poly = _as_zpoly(g)
    if not a_poly or not b_poly:
        raise PreconditionViolated('resultant of a zero polynomial')

    m = a_poly.degree
    n = b_poly.degree
    if m == 0:
        return a_poly.lc ** n
    if n == 0:
        return b_poly.lc ** m

    a_cont = a_poly.content()
    b_cont = b_poly.content()
    a_poly = a_poly.div_scalar(a_cont)
    b_poly = b_poly.div_scalar(b_cont)
    t = a_cont ** n * b_cont ** m
    s = 1
    if m < n:
        (a_poly, b_poly) = (b_poly, a_poly)
        if m % 2 and n % 2:
            s = -s

    g_val = mpz(1)
    h_val = mpz(1)
    while True:
        delta = a_poly.degree - b_poly.degree
        if a_poly.degree % 2 and b_poly.degree % 2:
            s = -s
        rem = a_poly.pseudo_rem(b_poly)
        if not rem:
            return mpz(0)
        a_poly = b_poly
        b_poly = rem.div_scalar(g_val * h_val ** delta)
        g_val = a_poly.lc
        if delta:
            h_val = g_val ** delta // h_val ** (delta - 1)
        if b_poly.degree == 0:
            break

    d = a_poly.degree
    h_val = b_poly.lc ** d // h_val ** (d - 1)
    return s * t * h_val


class Factorization(object):
    """
    Result of trial division: n = sign * prod(p^k) * cofactor, where the
    cofactor is 1 when ``complete``.
    """

    def __init__(self, n, sign, factors, cofactor, complete):
        self.n = n
        self.sign = sign
        self.factors = factors
        self.cofactor = cofactor
        self.complete = complete

    def __str__(self):
        parts = [('%d^%d' % (p, k)) if k > 1 else str(p)
                for (p, k) in self.factors.items()]
        if self.cofactor != 1:
            parts.append('(%s)' % self.cofactor)
        text = ' * '.join(parts) or '1'
        if self.sign < 0:
            text = '-' + text
        return text

    @property
    def meta(self):
        return {
                'n': str(self.n),
                'sign': self.sign,
                'factors': [[int(p), k] for (p, k) in self.factors.items()],
                'cofactor': str(self.cofactor),
                'complete': self.complete,
        }


def factor_trial(n, bound=FACTOR_BOUND):
    n = mpz(n)
    if n == 0:
        raise PreconditionViolated('cannot factor 0')
    sign = -1 if n < 0 else 1
    rest = abs(n)
    factors = {}
    d = mpz(2)
    while (d <= bound) and (d * d <= rest):
        if rest % d == 0:
            (rest, k) = gmpy2.remove(rest, d)
            factors[int(d)] = int(k)
        d += 1 if d == 2 else 2

    complete = True
    if rest > 1:
        if (rest < d * d) or (rest < (bound + 1) ** 2):
            factors[int(rest)] = 1
            rest = mpz(1)
        else:
            complete = False
            _log.info('Trial division to %d left cofactor %s', bound, rest)
    return Factorization(n, sign, factors, rest, complete)


def gcd_mod_p(polys, p):
    """
    Monic gcd over F_p of the reductions of integer polynomials.
    """
    if not is_prime(p):
        raise NonPrimeP(p)
    reductions = [_as_zpoly(f).mod_p(p) for f in polys]
    nonzero = [r for r in reductions if r]
    if not nonzero:
        raise AllZero(p)
    result = reduce(fp_gcd, nonzero[1:], nonzero[0].monic())
    _log.debug('gcd mod %d of %d polynomials: %s', p, len(polys), result)
    return result


def eval_mod_p(f, x, p):
    acc = 0
    for c in reversed(_as_zpoly(f).coeffs):
        acc = (acc * x + c) % p
    return int(acc)


def gcd_chain(p, alphas=(2, 5, 8), variable='v'):
    """
    gcd mod p of the g-polynomials for the given alphas, in v (the
    reciprocal form) or in y.
    """
    if variable == 'v':
        polys = [g_poly(a).g_v for a in alphas]
    elif variable == 'y':
        polys = [g_poly(a).g for a in alphas]
    else:
        raise PreconditionViolated('variable must be v or y, not %r' \
                % (variable,))
    return gcd_mod_p(polys, p)

#!/usr/bin/env python

"""
Finite field arithmetic: the prime field F_p, polynomials over F_p and the
extension F_{q^2} = F_p[x]/(m(x)) with deg m = 2e, q = p^e.

Elements of F_{q^2} are handled internally as integers: the coefficient
vector c_0 + c_1 x + ... + c_{n-1} x^{n-1} is stored as the base-p number
sum(c_k * p**k).  That number is also the element's text form.
`FieldElem` wraps such an integer for callers who prefer operators.
"""

import logging

import gmpy2
import numpy as np

from .cache import ComputedCache
from .errors import NonPrimeP, SizeExceeded, ZeroInverse, \
        PreconditionViolated


# Largest field (in elements) make_field will construct.
DEFAULT_SIZE_BOUND = 2**24

# Fields up to this size get discrete log / antilog tables.
TABLE_BOUND = 2**20


def is_prime(n):
    """
    Trial-division primality test; inputs here are desk-scale.
    """
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n):
    """
    Return the distinct prime factors of n in ascending order.
    """
    factors = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            factors.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        factors.append(n)
    return factors


def split_prime_power(q):
    """
    Return (p, e) with q = p^e, or None if q is not a prime power.
    """
    if q < 2:
        return None
    factors = prime_factors(q)
    if len(factors) != 1:
        return None
    p = factors[0]
    e = 0
    while q > 1:
        q //= p
        e += 1
    return (p, e)


def base_digits(value, p, n):
    """
    Little-endian base-p digits of value, padded to n places.
    """
    digits = []
    for _ in range(n):
        value, d = divmod(value, p)
        digits.append(d)
    return digits


def format_poly(coeffs, var='x'):
    """
    Compact descending text form of a little-endian coefficient vector,
    e.g. ``2y^5+3y^4-23y^3-8y^2-9y+44``.
    """
    parts = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        negative = c < 0
        text = str(-c if negative else c)
        if k == 0:
            body = text
        else:
            mono = var if k == 1 else '%s^%d' % (var, k)
            if text == '1':
                body = mono
            elif '/' in text:
                body = '(%s)%s' % (text, mono)
            else:
                body = text + mono
        if negative:
            parts.append('-' + body)
        elif parts:
            parts.append('+' + body)
        else:
            parts.append(body)
    return ''.join(parts) or '0'


def format_terms(coeffs, var='x'):
    """
    Space-separated ``coeff*var^k`` terms, descending, zero terms omitted.
    """
    terms = ['%s*%s^%d' % (coeffs[k], var, k)
            for k in range(len(coeffs) - 1, -1, -1)
            if coeffs[k] != 0]
    return ' '.join(terms) or '0'


class FpPoly(object):
    """
    A dense polynomial over F_p.  Coefficients are little-endian residues in
    [0, p) with no trailing zeros; the zero polynomial has no coefficients.
    """

    __slots__ = ('p', 'coeffs')

    def __init__(self, p, coeffs=()):
        coeffs = [int(c) % p for c in coeffs]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.p = p
        self.coeffs = tuple(coeffs)

    @classmethod
    def x(cls, p):
        return cls(p, (0, 1))

    @classmethod
    def one(cls, p):
        return cls(p, (1,))

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def lc(self):
        if not self.coeffs:
            return 0
        return self.coeffs[-1]

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, FpPoly):
            return NotImplemented
        return (self.p == other.p) and (self.coeffs == other.coeffs)

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash((self.p, self.coeffs))

    def _check(self, other):
        if isinstance(other, int):
            return FpPoly(self.p, (other,))
        if other.p != self.p:
            raise ValueError('mixing polynomials over F_%d and F_%d' \
                    % (self.p, other.p))
        return other

    def __add__(self, other):
        other = self._check(other)
        size = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (size - len(self.coeffs))
        b = other.coeffs + (0,) * (size - len(other.coeffs))
        return FpPoly(self.p, [x + y for (x, y) in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return FpPoly(self.p, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        if not self.coeffs or not other.coeffs:
            return FpPoly(self.p)
        product = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for (i, a) in enumerate(self.coeffs):
            if a == 0:
                continue
            for (j, b) in enumerate(other.coeffs):
                product[i + j] += a * b
        return FpPoly(self.p, product)

    __rmul__ = __mul__

    def scale(self, c):
        return FpPoly(self.p, [c * a for a in self.coeffs])

    def __divmod__(self, other):
        other = self._check(other)
        if not other:
            raise ZeroInverse('polynomial division by zero')
        p = self.p
        inv_lc = int(gmpy2.invert(other.lc, p))
        rem = list(self.coeffs)
        shift = len(rem) - len(other.coeffs)
        quot = [0] * max(shift + 1, 0)
        while shift >= 0:
            c = (rem[-1] * inv_lc) % p
            quot[shift] = c
            if c:
                for (k, b) in enumerate(other.coeffs):
                    rem[k + shift] = (rem[k + shift] - c * b) % p
            rem.pop()
            shift -= 1
        return (FpPoly(p, quot), FpPoly(p, rem))

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self):
        if not self.coeffs:
            return self
        return self.scale(int(gmpy2.invert(self.lc, self.p)))

    def powmod(self, k, modulus):
        """
        self^k mod modulus by square-and-multiply.
        """
        result = FpPoly.one(self.p) % modulus
        base = self % modulus
        while k:
            if k & 1:
                result = (result * base) % modulus
            base = (base * base) % modulus
            k >>= 1
        return result

    def __call__(self, x):
        """
        Horner evaluation at an integer x, reduced mod p.
        """
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % self.p
        return acc

    def roots(self):
        """
        The roots of this polynomial lying in F_p, by scanning F_p.
        """
        return [r for r in range(self.p) if self(r) == 0]

    def is_irreducible(self):
        """
        Rabin's test: m of degree n is irreducible over F_p iff m divides
        x^(p^n) - x and gcd(x^(p^(n/r)) - x, m) = 1 for each prime r | n.
        """
        n = self.degree
        if n < 1:
            return False
        x = FpPoly.x(self.p)
        for r in prime_factors(n):
            h = x.powmod(self.p ** (n // r), self) - x
            if fp_gcd(h, self).degree > 0:
                return False
        return not (x.powmod(self.p ** n, self) - x) % self

    def __str__(self):
        return format_poly(self.coeffs, 'x')

    def __repr__(self):
        return '%s(%d, %r)' % (self.__class__.__name__, self.p, self.coeffs)

    def terms(self, var='x'):
        return format_terms(self.coeffs, var)

    def to_json(self):
        return [str(c) for c in self.coeffs]


def fp_gcd(f, g):
    """
    Monic gcd of two polynomials over F_p by Euclid's algorithm.
    """
    while g:
        (f, g) = (g, f % g)
    return f.monic()


def canonical_modulus(p, n, log=None):
    """
    The first irreducible monic polynomial of degree n over F_p, walking
    candidates in ascending order of the base-p integer formed by their
    coefficient vectors.
    """
    if log is None:
        log = logging.getLogger(__name__)

    for t in range(p ** n):
        candidate = FpPoly(p, base_digits(t, p, n) + [1])
        if candidate.is_irreducible():
            log.debug('Modulus for degree %d over F_%d: %s', n, p, candidate)
            return candidate
    raise ArithmeticError('no irreducible polynomial of degree %d mod %d' \
            % (n, p))


class FieldCtx(object):
    """
    An explicit construction of F_{q^2}, q = p^e.  Immutable once built;
    safe to share between threads.  Construct through `make_field`.
    """

    def __init__(self, p, e, log=None):
        if log is None:
            log = logging.getLogger(self.__class__.__module__)

        self._log = log
        self.p = p
        self.e = e
        self.n = 2 * e
        self.q = p ** e
        self.q2 = self.q ** 2
        self.order = self.q2 - 1
        self.modulus = canonical_modulus(p, self.n, log=log)
        # x^n = -(m_0 + m_1 x + ... + m_{n-1} x^{n-1})
        self._reduction = [(-c) % p for c in self.modulus.coeffs[:self.n]]
        self._weights = [p ** k for k in range(self.n)]

        self.log_table = None
        self.exp_table = None
        self.generator = self._find_generator()
        log.debug('Generator of F_%d^*: %d', self.q2, self.generator)
        if self.q2 <= TABLE_BOUND:
            self._build_tables()

    def __eq__(self, other):
        if not isinstance(other, FieldCtx):
            return NotImplemented
        return (self.p, self.e) == (other.p, other.e)

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash((self.p, self.e))

    def __repr__(self):
        return 'FieldCtx(p=%d, e=%d, modulus=%s)' % (
                self.p, self.e, self.modulus)

    @property
    def descriptor(self):
        return '%d^%d' % (self.p, self.e)

    @property
    def has_tables(self):
        return self.exp_table is not None

    @property
    def meta(self):
        return {
                'p': self.p,
                'e': self.e,
                'q': self.q,
                'q2': self.q2,
                'modulus': str(self.modulus),
                'generator': self.generator,
        }

    # Encoding

    def digits(self, value):
        return base_digits(value, self.p, self.n)

    def from_digits(self, digits):
        return sum((d % self.p) * w for (d, w) in zip(digits, self._weights))

    def value_of(self, a):
        """
        Return the encoded integer of a FieldElem or an encoded integer.
        """
        if isinstance(a, FieldElem):
            if a.ctx != self:
                raise ValueError('element of %r used in %r' % (a.ctx, self))
            return a.value
        a = int(a)
        if not (0 <= a < self.q2):
            raise ValueError('%d does not encode an element of F_%d' \
                    % (a, self.q2))
        return a

    def elem(self, value):
        return FieldElem(self, value)

    def scalar(self, c):
        """
        Encoding of the prime-field element c mod p.
        """
        return int(c) % self.p

    # Scalar arithmetic on encoded integers

    def add(self, a, b):
        if self.p == 2:
            return a ^ b
        p = self.p
        result = 0
        for w in self._weights:
            result += (((a // w) + (b // w)) % p) * w
        return result

    def neg(self, a):
        if self.p == 2:
            return a
        return self.from_digits([-d for d in self.digits(a)])

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def scale(self, c, a):
        """
        Multiply the element a by the prime-field scalar c.
        """
        c %= self.p
        if c == 0:
            return 0
        if c == 1:
            return a
        return self.from_digits([c * d for d in self.digits(a)])

    def mul(self, a, b):
        if (a == 0) or (b == 0):
            return 0
        if self.exp_table is not None:
            return int(self.exp_table[
                (self.log_table[a] + self.log_table[b]) % self.order])
        return self._mul_poly(a, b)

    def pow(self, a, k):
        """
        a^k; negative k resolves through k mod (q^2 - 1).  0^0 = 1.
        """
        if a == 0:
            if k < 0:
                raise ZeroInverse()
            return 1 if k == 0 else 0
        k %= self.order
        if self.exp_table is not None:
            return int(self.exp_table[(int(self.log_table[a]) * k) \
                    % self.order])
        return self._pow_poly(a, k)

    def inv(self, a):
        if a == 0:
            raise ZeroInverse()
        return self.pow(a, self.q2 - 2)

    def _mul_poly(self, a, b):
        p = self.p
        n = self.n
        da = self.digits(a)
        db = self.digits(b)
        product = [0] * (2 * n - 1)
        for (i, x) in enumerate(da):
            if x == 0:
                continue
            for (j, y) in enumerate(db):
                product[i + j] += x * y
        for k in range(2 * n - 2, n - 1, -1):
            c = product[k] % p
            if c:
                for (j, r) in enumerate(self._reduction):
                    product[k - n + j] += c * r
        return self.from_digits(product[:n])

    def _pow_poly(self, a, k):
        result = 1
        while k:
            if k & 1:
                result = self._mul_poly(result, a)
            a = self._mul_poly(a, a)
            k >>= 1
        return result

    def _find_generator(self):
        cofactors = [self.order // r for r in prime_factors(self.order)]
        for candidate in range(2, self.q2):
            if all(self._pow_poly(candidate, c) != 1 for c in cofactors):
                return candidate
        # F_2 would end up here, but q^2 >= 4 always
        return 1

    def _build_tables(self):
        exp_table = np.empty(self.order, dtype=np.int64)
        log_table = np.full(self.q2, -1, dtype=np.int64)
        value = 1
        for k in range(self.order):
            exp_table[k] = value
            log_table[value] = k
            value = self._mul_poly(value, self.generator)
        self.exp_table = exp_table
        self.log_table = log_table
        self._log.debug('Built log tables for F_%d', self.q2)

    # Whole-field, vectorised arithmetic.  Arrays hold encoded integers.

    def elements_array(self):
        return np.arange(self.q2, dtype=np.int64)

    def pow_array(self, xs, k):
        xs = np.asarray(xs, dtype=np.int64)
        if not self.has_tables:
            return np.array([self.pow(int(x), k) for x in xs],
                    dtype=np.int64)
        if k == 0:
            return np.ones_like(xs)
        zero = (xs == 0)
        if (k < 0) and zero.any():
            raise ZeroInverse()
        out = self.exp_table[(self.log_table[xs] * (k % self.order)) \
                % self.order]
        out[zero] = 0
        return out

    def mul_array(self, c, xs):
        """
        Multiply every element of xs by the single element c.
        """
        xs = np.asarray(xs, dtype=np.int64)
        if c == 0:
            return np.zeros_like(xs)
        if not self.has_tables:
            return np.array([self.mul(c, int(x)) for x in xs],
                    dtype=np.int64)
        out = self.exp_table[(self.log_table[xs] + self.log_table[c]) \
                % self.order]
        out[xs == 0] = 0
        return out

    def add_arrays(self, xs, ys):
        xs = np.asarray(xs, dtype=np.int64)
        ys = np.asarray(ys, dtype=np.int64)
        if self.p == 2:
            return np.bitwise_xor(xs, ys)
        p = self.p
        out = np.zeros_like(xs)
        for w in self._weights:
            out += (((xs // w) + (ys // w)) % p) * w
        return out

    def sum_elements(self, xs):
        """
        Field sum of all elements in xs, as an encoded integer.
        """
        xs = np.asarray(xs, dtype=np.int64)
        if self.p == 2:
            return int(np.bitwise_xor.reduce(xs)) if xs.size else 0
        p = self.p
        return sum(int(((xs // w) % p).sum() % p) * w
                for w in self._weights)


class FieldElem(object):
    """
    An element of F_{q^2}.

    The constructor (like ``fe_mul`` and ``fe_pow``) takes an encoded
    integer, so ``FieldElem(ctx, 2)`` is x when p = 2.  Plain integers
    mixed into arithmetic or comparisons are prime-field scalars instead:
    ``y == 1`` and ``2 * a`` behave as expected, and ``y == 2`` means
    y = 2 mod p.  Compare ``.value`` to test an encoding.
    """

    __slots__ = ('ctx', 'value')

    def __init__(self, ctx, value):
        self.ctx = ctx
        self.value = ctx.value_of(value)

    @property
    def coeffs(self):
        return tuple(self.ctx.digits(self.value))

    def _other(self, other):
        if isinstance(other, FieldElem):
            return self.ctx.value_of(other)
        if isinstance(other, int):
            return self.ctx.scalar(other)
        return None

    def __add__(self, other):
        b = self._other(other)
        if b is None:
            return NotImplemented
        return FieldElem(self.ctx, self.ctx.add(self.value, b))

    __radd__ = __add__

    def __neg__(self):
        return FieldElem(self.ctx, self.ctx.neg(self.value))

    def __sub__(self, other):
        b = self._other(other)
        if b is None:
            return NotImplemented
        return FieldElem(self.ctx, self.ctx.sub(self.value, b))

    def __rsub__(self, other):
        b = self._other(other)
        if b is None:
            return NotImplemented
        return FieldElem(self.ctx, self.ctx.sub(b, self.value))

    def __mul__(self, other):
        b = self._other(other)
        if b is None:
            return NotImplemented
        return FieldElem(self.ctx, self.ctx.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        if b is None:
            return NotImplemented
        return FieldElem(self.ctx,
                self.ctx.mul(self.value, self.ctx.inv(b)))

    def __pow__(self, k):
        return FieldElem(self.ctx, self.ctx.pow(self.value, k))

    def inverse(self):
        return FieldElem(self.ctx, self.ctx.inv(self.value))

    def __eq__(self, other):
        b = self._other(other)
        if b is None:
            return NotImplemented
        return self.value == b

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash((self.ctx.p, self.ctx.e, self.value))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __str__(self):
        return str(self.value)

    def __repr__(self):
        return 'FieldElem(%s, %d)' % (self.ctx.descriptor, self.value)


def _build_field(key):
    (p, e) = key
    return FieldCtx(p, e,
            log=logging.getLogger(__name__).getChild('%d^%d' % key))


# Building the modulus and the log tables dominates small sweeps.
_FIELDS = ComputedCache(_build_field, name='fields')


def field_cache_stats():
    return _FIELDS.meta


def make_field(p, e, size_bound=DEFAULT_SIZE_BOUND):
    """
    Return the canonical context for F_{p^(2e)}.
    """
    if not is_prime(p):
        raise NonPrimeP(p)
    if e < 1:
        raise PreconditionViolated('extension exponent e=%d must be >= 1' % e)
    size = p ** (2 * e)
    if size > size_bound:
        raise SizeExceeded('field size p^(2e)', size, size_bound)
    return _FIELDS[(p, e)]


def fe_mul(ctx, a, b):
    return FieldElem(ctx, ctx.mul(ctx.value_of(a), ctx.value_of(b)))


def fe_pow(ctx, a, k):
    """
    a^k by table lookup or square-and-multiply; raises ZeroInverse for
    0^k with k < 0.
    """
    return FieldElem(ctx, ctx.pow(ctx.value_of(a), k))


def is_primitive_cube_root(ctx, y):
    y = ctx.value_of(y)
    return ctx.add(ctx.add(ctx.mul(y, y), y), 1) == 0


def lucas_binom(p, m, k):
    """
    C(m, k) mod p as the product of digit binomials (Lucas).  Out-of-range
    k gives 0.
    """
    if (k < 0) or (k > m):
        return 0
    result = 1
    while m or k:
        (m, mi) = divmod(m, p)
        (k, ki) = divmod(k, p)
        if ki > mi:
            return 0
        result = (result * int(gmpy2.comb(mi, ki))) % p
    return result


def subfield_q_members(ctx):
    """
    The subfield F_q = {z : z^q = z}: zero and the powers of g^(q+1).
    """
    step = ctx.q + 1
    members = {FieldElem(ctx, 0)}
    for t in range(ctx.q - 1):
        members.add(FieldElem(ctx, ctx.pow(ctx.generator, step * t)))
    return members

#!/usr/bin/env python

"""
Power sums of the binomial f = a*x + x^(3q-2) over F_{q^2} and the
permutation tests built on them.

Hermite's criterion says f permutes F_{q^2} iff 0 is its only root and
sum_x f(x)^s = 0 for 1 <= s <= q^2 - 2.  Writing s = alpha + beta*q, the
sum can only be nonzero when alpha + beta = q - 1, so the reduced test
looks at s = alpha + (q-1-alpha)*q alone, through the coefficient sums
S_q(alpha, a) computed by `s_q`.
"""

import logging

import numpy as np

from .ffield import FieldElem, lucas_binom, is_primitive_cube_root
from .errors import PreconditionViolated, SizeExceeded


# Largest q for which the all-exponents Hermite check may be requested.
FULL_HERMITE_Q_CAP = 8

_log = logging.getLogger(__name__)


class BinomialMap(object):
    """
    The map x -> a*x + x^(3q-2) on F_{q^2}.  Evaluation is literal: the
    exponent is never reduced symbolically.
    """

    def __init__(self, ctx, a):
        a = ctx.value_of(a)
        if a == 0:
            raise PreconditionViolated('a must be a nonzero element')
        self.ctx = ctx
        self.a = a
        self.exponent = 3 * ctx.q - 2
        self._images = None

    def __call__(self, x):
        ctx = self.ctx
        return ctx.add(ctx.mul(self.a, x), ctx.pow(x, self.exponent))

    def evaluate(self, x):
        return FieldElem(self.ctx, self(self.ctx.value_of(x)))

    def images(self):
        """
        Array of f(x) for every x in ascending encoded order.
        """
        if self._images is None:
            ctx = self.ctx
            if ctx.has_tables:
                xs = ctx.elements_array()
                self._images = ctx.add_arrays(
                        ctx.mul_array(self.a, xs),
                        ctx.pow_array(xs, self.exponent))
            else:
                self._images = np.fromiter(
                        (self(x) for x in range(ctx.q2)),
                        dtype=np.int64, count=ctx.q2)
        return self._images


class IntervalCensus(object):
    """
    Multiples l*(q+1) inside the exponent-shift interval of alpha.

    The working interval is [2*alpha + 2 - 3q, 2*alpha - 1], which is the
    full range of -alpha - 1 + 3(i - j).  The narrower upper end alpha - 1
    that appears in one printed form of the interval is kept as
    ``stated_hi`` with its own multiples for comparison.
    """

    def __init__(self, q, alpha):
        self.q = q
        self.alpha = alpha
        self.lo = 2 * alpha + 2 - 3 * q
        self.hi = 2 * alpha - 1
        self.stated_hi = alpha - 1
        self.multiples = self._multiples(self.lo, self.hi)
        self.stated_multiples = self._multiples(self.lo, self.stated_hi)

    def _multiples(self, lo, hi):
        step = self.q + 1
        first = -((-lo) // step)
        last = hi // step
        return list(range(first, last + 1))

    @property
    def count(self):
        return len(self.multiples)

    @property
    def meta(self):
        return {
                'q': self.q,
                'alpha': self.alpha,
                'lo': self.lo,
                'hi': self.hi,
                'stated_hi': self.stated_hi,
                'multiples': self.multiples,
                'stated_multiples': self.stated_multiples,
        }


def interval_census(q, alpha):
    if not (0 <= alpha <= q - 1):
        raise PreconditionViolated('alpha=%d outside [0, %d]' % (alpha, q - 1))
    return IntervalCensus(q, alpha)


def _power_sum_of(ctx, images, s):
    if ctx.has_tables:
        return ctx.sum_elements(ctx.pow_array(images, s))
    total = 0
    for y in images:
        total = ctx.add(total, ctx.pow(int(y), s))
    return total


def power_sum(ctx, a, s):
    """
    sum over all x in F_{q^2} of f(x)^s, computed directly.
    """
    if not (1 <= s <= ctx.q2 - 1):
        raise PreconditionViolated('s=%d outside [1, %d]' % (s, ctx.q2 - 1))
    f = BinomialMap(ctx, a)
    return FieldElem(ctx, _power_sum_of(ctx, f.images(), s))


def _s_q(ctx, a, alpha):
    q = ctx.q
    p = ctx.p
    beta = q - 1 - alpha
    total = 0
    for l in interval_census(q, alpha).multiples:
        shift = alpha + 1 + l * (q + 1)
        if shift % 3:
            continue
        d = shift // 3
        for i in range(max(0, d), min(alpha, d + beta) + 1):
            j = i - d
            c = (lucas_binom(p, alpha, i) * lucas_binom(p, beta, j)) % p
            if c:
                total = ctx.add(total,
                        ctx.scale(c, ctx.pow(a, -i - j * q)))
    return total


def s_q(ctx, a, alpha):
    """
    The coefficient sum S_q(alpha, a), without the leading minus sign that
    links it to the power sum (see `power_sum_identity`).  Only the shifts
    d = i - j with -alpha - 1 + 3d a multiple of q + 1 contribute.
    """
    a = ctx.value_of(a)
    if a == 0:
        raise PreconditionViolated('a must be a nonzero element')
    if not (0 <= alpha <= ctx.q - 1):
        raise PreconditionViolated('alpha=%d outside [0, %d]' \
                % (alpha, ctx.q - 1))
    return FieldElem(ctx, _s_q(ctx, a, alpha))


def power_sum_identity(ctx, a, alpha):
    """
    Return both sides of
    sum f(x)^(alpha + (q-1-alpha)q) = -a^((alpha+1)(1-q)) * S_q(alpha, a).
    """
    q = ctx.q
    lhs = power_sum(ctx, a, alpha + (q - 1 - alpha) * q)
    a = ctx.value_of(a)
    rhs = ctx.neg(ctx.mul(ctx.pow(a, (alpha + 1) * (1 - q)),
        _s_q(ctx, a, alpha)))
    return (lhs, FieldElem(ctx, rhs))


def nonzero_roots(ctx, a):
    """
    The nonzero roots of f, by scanning the whole field.
    """
    images = BinomialMap(ctx, a).images()
    return [FieldElem(ctx, int(x)) for x in np.flatnonzero(images == 0)
            if x != 0]


def brute_pp_test(ctx, a, vectorised=None):
    """
    True iff f hits every element of F_{q^2}.  The vectorised path marks a
    numpy bitset from the image array; the scalar path fills a bytearray
    and stops at the first collision.
    """
    f = BinomialMap(ctx, a)
    if vectorised is None:
        vectorised = ctx.has_tables

    if vectorised:
        seen = np.zeros(ctx.q2, dtype=bool)
        seen[f.images()] = True
        return bool(seen.all())

    seen = bytearray(ctx.q2)
    for x in range(ctx.q2):
        y = f(x)
        if seen[y]:
            return False
        seen[y] = 1
    return True


def hermite_pp_test(ctx, a, full=False):
    """
    Hermite's criterion for f.

    The reduced form checks the single-root condition and the vanishing of
    S_q(alpha, a) for every alpha.  When 3 | q+1 the root condition is
    a^((q+1)/3) != 1; otherwise the roots are found by scanning.

    With ``full=True`` every power sum for 1 <= s <= q^2 - 2 is computed
    instead; this is only allowed for q <= FULL_HERMITE_Q_CAP.
    """
    f = BinomialMap(ctx, a)
    q = ctx.q

    if full:
        if q > FULL_HERMITE_Q_CAP:
            raise SizeExceeded('full Hermite check q', q, FULL_HERMITE_Q_CAP)
        if nonzero_roots(ctx, f.a):
            return False
        images = f.images()
        return all(_power_sum_of(ctx, images, s) == 0
                for s in range(1, ctx.q2 - 1))

    if (q + 1) % 3 == 0:
        if ctx.pow(f.a, (q + 1) // 3) == 1:
            return False
    elif nonzero_roots(ctx, f.a):
        return False

    return all(_s_q(ctx, f.a, alpha) == 0 for alpha in range(q))


class PowerSumProfile(object):
    """
    The power sums of f at the reduced exponents s = alpha + (q-1-alpha)q.
    ``expected`` and ``holds`` are filled in by `cube_root_profile`.
    """

    def __init__(self, ctx, a, entries):
        self.ctx = ctx
        self.a = FieldElem(ctx, a)
        self.entries = entries
        self.expected = None
        self.holds = None

    @property
    def nonzero(self):
        return dict((s, v) for (s, v) in self.entries.items() if v)

    @property
    def meta(self):
        meta = {
                'q': self.ctx.q,
                'p': self.ctx.p,
                'e': self.ctx.e,
                'a': self.a.value,
                'entries': dict((str(s), v.value)
                    for (s, v) in self.entries.items()),
        }
        if self.expected is not None:
            meta['expected'] = dict((str(s), v.value)
                    for (s, v) in self.expected.items())
            meta['holds'] = self.holds
        return meta


def power_sum_profile(ctx, a):
    f = BinomialMap(ctx, a)
    images = f.images()
    q = ctx.q
    entries = {}
    for alpha in range(q):
        s = alpha + (q - 1 - alpha) * q
        entries[s] = FieldElem(ctx, _power_sum_of(ctx, images, s))
    return PowerSumProfile(ctx, f.a, entries)


def cube_root_profile(ctx, a):
    """
    Power-sum profile for a with y = a^((q+1)/3) a primitive cube root of
    unity.  Every reduced power sum vanishes, except for odd q where the
    sum at s = (q^2-1)/2 is a^(-(q+1)(3q-2)/6) * (1 + y).
    """
    q = ctx.q
    a = ctx.value_of(a)
    if (q + 1) % 3:
        raise PreconditionViolated('3 does not divide q+1 = %d' % (q + 1))
    if a == 0:
        raise PreconditionViolated('a must be a nonzero element')
    y = ctx.pow(a, (q + 1) // 3)
    if not is_primitive_cube_root(ctx, y):
        raise PreconditionViolated(
                'a^((q+1)/3) = %d is not a primitive cube root of unity' % y)

    profile = power_sum_profile(ctx, a)
    expected = dict((s, FieldElem(ctx, 0)) for s in profile.entries)
    if q % 2:
        half = (q * q - 1) // 2
        expected[half] = FieldElem(ctx, ctx.mul(
            ctx.pow(a, -((q + 1) * (3 * q - 2)) // 6),
            ctx.add(1, y)))
    profile.expected = expected
    profile.holds = (profile.entries == expected)
    _log.debug('Cube-root profile for a=%d in F_%d: %s', a, ctx.q2,
            'holds' if profile.holds else 'FAILS')
    return profile

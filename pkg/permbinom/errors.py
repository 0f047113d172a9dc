#!/usr/bin/env python

"""
Exceptions raised by the permbinom modules.
"""


class PermBinomError(Exception):
    """
    Base class of every error raised by permbinom.
    """
    pass


class NonPrimeP(PermBinomError, ValueError):
    def __init__(self, p):
        super(NonPrimeP, self).__init__('characteristic %d is not prime' % p)
        self.p = p


class SizeExceeded(PermBinomError, ValueError):
    def __init__(self, what, size, bound):
        super(SizeExceeded, self).__init__(
                '%s: %d exceeds the configured bound %d' % (what, size, bound))
        self.size = size
        self.bound = bound


class ZeroInverse(PermBinomError, ZeroDivisionError):
    def __init__(self, msg='zero has no multiplicative inverse'):
        super(ZeroInverse, self).__init__(msg)


class PreconditionViolated(PermBinomError, ValueError):
    pass


class BadAlpha(PermBinomError, ValueError):
    def __init__(self, alpha):
        super(BadAlpha, self).__init__(
                'alpha=%r: need an integer alpha >= 2 with alpha = 2 mod 3'
                % (alpha,))
        self.alpha = alpha


class NotDivisible(PermBinomError, ArithmeticError):
    pass


class FractionalResidue(PermBinomError, ArithmeticError):
    pass


class AllZero(PermBinomError, ValueError):
    def __init__(self, p):
        super(AllZero, self).__init__(
                'every polynomial reduces to zero mod %d' % p)
        self.p = p


class FixtureMismatch(PermBinomError, AssertionError):
    def __init__(self, step, expected, actual):
        super(FixtureMismatch, self).__init__(
                '%s: expected %s, computed %s' % (step, expected, actual))
        self.step = step
        self.expected = expected
        self.actual = actual


class UnsupportedQ(PermBinomError, ValueError):
    def __init__(self, q, supported=None):
        msg = 'q=%r is not supported' % (q,)
        if supported is not None:
            msg += ' (choose one of %s)' % ', '.join(
                    str(s) for s in supported)
        super(UnsupportedQ, self).__init__(msg)
        self.q = q


class UsageError(PermBinomError, ValueError):
    pass

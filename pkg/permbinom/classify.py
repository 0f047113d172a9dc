#!/usr/bin/env python

"""
The classification layer: which a make a*x + x^(3q-2) a permutation of
F_{q^2}, the elimination argument that bounds q, and exhaustive sweeps
comparing the prediction with brute force and with Hermite's criterion.
"""

import logging
import random
from enum import Enum

from gmpy2 import mpz

from .ffield import make_field, split_prime_power, is_primitive_cube_root, \
        FieldElem, format_poly, field_cache_stats
from .hermite import brute_pp_test, hermite_pp_test, power_sum_identity
from .symalg import ZPoly, g_poly, resultant_z, factor_trial, \
        gcd_chain, eval_mod_p
from .pool import run_tasks
from .errors import UnsupportedQ, SizeExceeded, FixtureMismatch, \
        PreconditionViolated


DEFAULT_MAX_Q = 32
BRUTE_Q_CAP = 128
HERMITE_Q_CAP = 64

# Fields for which sporadic_census is meaningful.
CENSUS_TARGETS = (2, 5, 8, 11, 17, 23, 29, 32)
LARGE_CENSUS_TARGETS = (128,)

# Recorded intermediates of the elimination argument.
RECORDED_RESULTANT = mpz(2**5 * 3**35 * 17**2 * 23 * 29 * 103 * 16069)
RECORDED_FACTORS = {2: 5, 3: 35, 17: 2, 23: 1, 29: 1, 103: 1, 16069: 1}
RECORDED_SURVIVORS = [2, 17, 23, 29]
# gcd(g_2, g_5, g_8) mod p, as little-endian coefficients in v.
RECORDED_GCDS = {2: (0, 1), 17: (1,), 23: (1, 1), 29: (10, 1)}
# Printed values of g_alpha at a common root: (p, alpha, root) -> value.
RECORDED_EVALUATIONS = {
        (23, 11, -1): 12,
        (29, 11, -10): 0,
        (29, 14, -10): 2,
}
CHAIN_ALPHAS = (2, 5, 8)
FOLLOWUP_ALPHAS = (11, 14)
# Below this q the cases are settled by direct search.
SEARCH_BELOW = 14


class Method(Enum):
    BRUTE = 'brute'
    HERMITE = 'hermite'
    BOTH = 'both'

    @property
    def runs_brute(self):
        return self in (Method.BRUTE, Method.BOTH)

    @property
    def runs_hermite(self):
        return self in (Method.HERMITE, Method.BOTH)

    @property
    def q_cap(self):
        if self.runs_hermite:
            return HERMITE_Q_CAP
        return BRUTE_Q_CAP


class SporadicSpec(object):
    """
    One sporadic row: f is a permutation when a^k is a root of one of
    ``factors`` (integer polynomials read in F_{q^2}) or lies in
    ``residues`` (prime-field values).
    """

    def __init__(self, q, k, factors=None, residues=None):
        self.q = q
        self.k = k
        self.factors = [ZPoly(f, var='x') for f in (factors or [])]
        self.residues = list(residues or [])

    @property
    def condition(self):
        if self.factors:
            return 'a^%d is a root of %s' % (self.k,
                    ''.join('(%s)' % f for f in self.factors))
        return 'a^%d in {%s}' % (self.k,
                ', '.join(str(r) for r in self.residues))

    def matches(self, ctx, a):
        if ctx.q != self.q:
            return False
        z = ctx.pow(ctx.value_of(a), self.k)
        if self.residues:
            return z in set(ctx.scalar(r) for r in self.residues)
        return any(_eval_in_field(ctx, f, z) == 0 for f in self.factors)


def _eval_in_field(ctx, poly, z):
    acc = 0
    for c in reversed(poly.coeffs):
        acc = ctx.add(ctx.mul(acc, z), ctx.scalar(c))
    return acc


SPORADIC = (
    SporadicSpec(5, 2,
        factors=[(1, 1), (2, 1), (-2, 1), (1, -1, 1)]),
    # a^3 a root of x^3+x^2+1, equivalently a^-3 a root of x^3+x+1
    SporadicSpec(8, 3, factors=[(1, 0, 1, 1)]),
    SporadicSpec(11, 4,
        factors=[(-5, 1), (2, 1), (1, -1, 1)]),
    SporadicSpec(17, 6, residues=[4, 5]),
    SporadicSpec(23, 8, residues=[-1]),
    SporadicSpec(29, 10, residues=[-3]),
)


def classified_pp(ctx, a):
    """
    True iff the classification says f permutes F_{q^2}: q an odd power
    of 2 with a^((q+1)/3) a primitive cube root of unity, or (q, a) in one
    of the sporadic rows.
    """
    a = ctx.value_of(a)
    if a == 0:
        raise PreconditionViolated('a must be a nonzero element')
    q = ctx.q
    if (ctx.p == 2) and (ctx.e % 2 == 1):
        if is_primitive_cube_root(ctx, ctx.pow(a, (q + 1) // 3)):
            return True
    return any(spec.matches(ctx, a) for spec in SPORADIC if spec.q == q)


def field_for_q(q):
    split = split_prime_power(q)
    if split is None:
        raise UnsupportedQ(q)
    return make_field(*split)


def prime_powers(limit):
    """
    (q, p, e) for every prime power 2 <= q <= limit, ascending in q.
    """
    result = []
    for q in range(2, limit + 1):
        split = split_prime_power(q)
        if split is not None:
            result.append((q,) + split)
    return result


class Census(object):
    def __init__(self, ctx, elements):
        self.ctx = ctx
        self.elements = elements

    @property
    def q(self):
        return self.ctx.q

    @property
    def count(self):
        return len(self.elements)

    @property
    def meta(self):
        return {
                'q': self.ctx.q,
                'p': self.ctx.p,
                'e': self.ctx.e,
                'count': self.count,
                'elements': self.elements,
        }


def sporadic_census(q, allow_large=False):
    """
    Every nonzero a in F_{q^2} for which the classification predicts a
    permutation.
    """
    targets = CENSUS_TARGETS
    if allow_large:
        targets = targets + LARGE_CENSUS_TARGETS
    if q not in targets:
        raise UnsupportedQ(q, targets)
    ctx = field_for_q(q)
    elements = [a for a in range(1, ctx.q2) if classified_pp(ctx, a)]
    return Census(ctx, elements)


class CosetClass(object):
    """
    The elements a sharing one value y = a^((q+1)/3).
    """

    def __init__(self, key, members):
        self.key = key
        self.members = members

    @property
    def representative(self):
        return self.members[0]

    @property
    def size(self):
        return len(self.members)


def coset_classes(ctx):
    """
    Partition F_{q^2}^* by a -> a^((q+1)/3), ordered by smallest member.
    """
    q = ctx.q
    if (q + 1) % 3:
        raise PreconditionViolated('3 does not divide q+1 = %d' % (q + 1))
    k = (q + 1) // 3
    classes = {}
    for a in range(1, ctx.q2):
        classes.setdefault(ctx.pow(a, k), []).append(a)
    return sorted((CosetClass(y, members) for (y, members) in classes.items()),
            key=lambda c: c.representative)


class PPVerdict(object):
    """
    The outcome of the requested tests for one (q, a).  A test that was not
    run is None and does not take part in ``agree``.
    """

    def __init__(self, q, p, e, a, brute, hermite, predicted):
        self.q = q
        self.p = p
        self.e = e
        self.a = a
        self.brute = brute
        self.hermite = hermite
        self.predicted = predicted

    @property
    def agree(self):
        results = [r for r in (self.brute, self.hermite, self.predicted)
                if r is not None]
        return all(r == results[0] for r in results)

    @property
    def is_pp(self):
        """
        The reference outcome: brute force if it ran, else Hermite.
        """
        if self.brute is not None:
            return self.brute
        return self.hermite

    @property
    def meta(self):
        return {
                'q': self.q,
                'p': self.p,
                'e': self.e,
                'a': self.a,
                'brute': self.brute,
                'hermite': self.hermite,
                'predicted': self.predicted,
                'agree': self.agree,
        }


def check_element(ctx, a, method=Method.BOTH):
    method = Method(method)
    a = ctx.value_of(a)
    return PPVerdict(ctx.q, ctx.p, ctx.e, a,
            brute_pp_test(ctx, a) if method.runs_brute else None,
            hermite_pp_test(ctx, a) if method.runs_hermite else None,
            classified_pp(ctx, a))


def _sweep_chunk(p, e, method, lo, hi):
    """
    Worker entry point: (a, brute, hermite, predicted) for lo <= a < hi.
    Module level so that a process pool can pickle it.
    """
    ctx = make_field(p, e)
    method = Method(method)
    rows = []
    for a in range(lo, hi):
        verdict = check_element(ctx, a, method)
        rows.append((a, verdict.brute, verdict.hermite, verdict.predicted))
    return rows


def _chunks(q2, jobs):
    size = max(1, -(-(q2 - 1) // (4 * jobs)))
    return [(lo, min(lo + size, q2)) for lo in range(1, q2, size)]


class SweepReport(object):
    def __init__(self, verdicts, summary):
        self.verdicts = verdicts
        self.summary = summary

    @property
    def disagreements(self):
        return [v for v in self.verdicts if not v.agree]

    @property
    def passed(self):
        return not (self.summary['disagreements']
                or self.summary['identity_failures']
                or self.summary.get('class_violations'))


def sweep(q_max, method=Method.BOTH, jobs=1, compress=False, samples=0,
        seed=0, log=None):
    """
    Test every nonzero a in F_{q^2} for every prime power q <= q_max.

    ``samples`` additionally checks the power-sum identity on that many
    seeded random (a, alpha) pairs per field; ``compress`` summarises each
    field with 3 | q+1 by coset class.  Results do not depend on ``jobs``.
    """
    if log is None:
        log = logging.getLogger(__name__)
    method = Method(method)
    if q_max > method.q_cap:
        raise SizeExceeded('sweep q_max', q_max, method.q_cap)

    fields = prime_powers(q_max)
    tasks = []
    for (q, p, e) in fields:
        q2 = q * q
        if jobs > 1:
            tasks.extend((p, e, method.value, lo, hi)
                    for (lo, hi) in _chunks(q2, jobs))
        else:
            tasks.append((p, e, method.value, 1, q2))

    if jobs > 1:
        results = run_tasks(_sweep_chunk, tasks, jobs,
                log=log.getChild('pool'))
    else:
        results = [_sweep_chunk(*task) for task in tasks]

    verdicts = []
    for (task, rows) in zip(tasks, results):
        (p, e) = task[:2]
        q = p ** e
        verdicts.extend(PPVerdict(q, p, e, a, brute, herm, predicted)
                for (a, brute, herm, predicted) in rows)
    verdicts.sort(key=lambda v: (v.q, v.a))

    summary = {
            'method': method.value,
            'q_max': q_max,
            'fields': [],
            'pp_counts': {},
            'disagreements': [v.meta for v in verdicts if not v.agree],
            'identity_samples': samples,
            'identity_failures': [],
    }
    by_q = {}
    for v in verdicts:
        by_q.setdefault(v.q, []).append(v)

    if compress:
        summary['classes'] = {}
        summary['class_violations'] = []

    for (q, p, e) in fields:
        field_log = log.getChild('q=%d' % q)
        rows = by_q.get(q, [])
        count = sum(1 for v in rows if v.is_pp)
        summary['pp_counts'][str(q)] = count
        summary['fields'].append({'q': q, 'p': p, 'e': e,
            'checked': len(rows), 'pp_count': count})
        field_log.info('%d of %d values of a give permutations',
                count, len(rows))

        if samples:
            summary['identity_failures'].extend(
                    _sample_identity(p, e, samples, seed, field_log))

        if compress and ((q + 1) % 3 == 0):
            status = dict((v.a, v.is_pp) for v in rows)
            classes = []
            for cls in coset_classes(make_field(p, e)):
                outcomes = set(status[a] for a in cls.members)
                if len(outcomes) != 1:
                    field_log.warning('PP status varies within class of %d',
                            cls.representative)
                    summary['class_violations'].append(
                            {'q': q, 'representative': cls.representative})
                classes.append({'representative': cls.representative,
                    'size': cls.size, 'pp': status[cls.representative]})
            summary['classes'][str(q)] = classes

    if summary['disagreements']:
        log.warning('%d disagreements', len(summary['disagreements']))
    log.debug('Field cache: %s', field_cache_stats())
    return SweepReport(verdicts, summary)


def _sample_identity(p, e, samples, seed, log):
    ctx = make_field(p, e)
    rng = random.Random(seed * 1000003 + ctx.q)
    failures = []
    for _ in range(samples):
        a = rng.randrange(1, ctx.q2)
        alpha = rng.randrange(ctx.q)
        (lhs, rhs) = power_sum_identity(ctx, a, alpha)
        if lhs != rhs:
            log.warning('Power-sum identity fails at a=%d alpha=%d', a, alpha)
            failures.append({'q': ctx.q, 'a': a, 'alpha': alpha,
                'power_sum': lhs.value, 'predicted': rhs.value})
    return failures


def gpoly_prediction(ctx, a, alpha):
    """
    S_q(alpha, a) predicted from g_alpha:
    (-a)^((alpha+1)q/3) * Phi(y)^q with
    Phi(y) = y^(-3 alpha - 2) (y^2 + y + 1) 3^(-d) g_alpha(y),
    y = a^((q+1)/3).  Needs 3 | q+1 and q >= 2 alpha + 4.
    """
    (prefix, phi) = _gpoly_literal(ctx, a, g_poly(alpha))
    return FieldElem(ctx, ctx.mul(prefix, ctx.pow(phi, ctx.q)))


def gpoly_prediction_literal(ctx, a, alpha):
    """
    The same product without the Frobenius power on Phi(y).  It agrees
    with `gpoly_prediction` when a is a cube.
    """
    (prefix, phi) = _gpoly_literal(ctx, a, g_poly(alpha))
    return FieldElem(ctx, ctx.mul(prefix, phi))


def _gpoly_literal(ctx, a, record):
    q = ctx.q
    if (q + 1) % 3:
        raise PreconditionViolated('3 does not divide q+1 = %d' % (q + 1))
    a = ctx.value_of(a)
    y = ctx.pow(a, (q + 1) // 3)
    alpha = record.alpha
    cube = ctx.add(ctx.add(ctx.mul(y, y), y), 1)
    unscale = ctx.inv(ctx.scalar(3 ** record.d_alpha))
    phi = ctx.mul(ctx.mul(ctx.pow(y, -3 * alpha - 2), cube),
            ctx.mul(unscale, _eval_in_field(ctx, record.g, y)))
    prefix = ctx.pow(ctx.neg(a), (alpha + 1) * q // 3)
    return (prefix, phi)


def bracket_prediction(ctx, a, alpha):
    """
    S_q(alpha, a) from the bracket directly: (-a)^((alpha+1)q/3) *
    B_alpha(v^q) with v = a^(-(q+1)/3).  Valid for q >= 2 alpha + 4.
    """
    q = ctx.q
    if (q + 1) % 3:
        raise PreconditionViolated('3 does not divide q+1 = %d' % (q + 1))
    record = g_poly(alpha)
    a = ctx.value_of(a)
    v = ctx.pow(ctx.pow(a, -((q + 1) // 3)), q)
    bracket = record.bracket.mod_p(ctx.p)
    value = 0
    for c in reversed(bracket.coeffs):
        value = ctx.add(ctx.mul(value, v), ctx.scalar(c))
    prefix = ctx.pow(ctx.neg(a), (alpha + 1) * q // 3)
    return FieldElem(ctx, ctx.mul(prefix, value))


class EliminationReport(object):
    """
    Trace of the elimination argument: resultant of g_2 and g_5, its
    factorisation, the primes that can be the characteristic, and for each
    of them the gcd chain and the evaluations that cap q.
    """

    def __init__(self):
        self.resultant = None
        self.factorization = None
        self.surviving_primes = []
        self.chains = {}
        self.evaluations = []
        self.candidates = []
        self.small_q = []
        self.search = {}

    @property
    def meta(self):
        return {
                'resultant': str(self.resultant),
                'resultant_abs_matches': abs(self.resultant)
                    == RECORDED_RESULTANT,
                'factorization': self.factorization.meta,
                'factorization_text': str(self.factorization),
                'surviving_primes': self.surviving_primes,
                'chains': dict((str(p), c) for (p, c) in self.chains.items()),
                'evaluations': self.evaluations,
                'candidates': self.candidates,
                'small_q': self.small_q,
                'search': dict((str(q), n) for (q, n) in self.search.items()),
        }


def _expect(step, expected, actual, log):
    if expected != actual:
        log.warning('%s: expected %s, computed %s', step, expected, actual)
        raise FixtureMismatch(step, expected, actual)
    log.debug('%s: %s', step, actual)


def _admits_q_2_mod_3(p):
    # q = p^e = 2 mod 3 needs p = 2 mod 3 (and e odd)
    return (p != 3) and (p % 3 == 2)


def _symmetric(r, p):
    return r - p if r > p // 2 else r


def elimination_pipeline(log=None):
    """
    Re-run the elimination argument and check each recorded intermediate.
    Gcd chains and evaluations are taken in v = 1/y, where the recorded
    gcds live.  Printed evaluation values are compared by zero pattern.
    """
    if log is None:
        log = logging.getLogger(__name__)
    report = EliminationReport()

    g2 = g_poly(2, check=True)
    g5 = g_poly(5, check=True)
    report.resultant = resultant_z(g2.g, g5.g)
    _expect('|Res(g_2, g_5)|', RECORDED_RESULTANT, abs(report.resultant), log)
    report.factorization = factor_trial(report.resultant)
    _expect('factorisation', RECORDED_FACTORS,
            report.factorization.factors if report.factorization.complete
            else None, log)

    report.surviving_primes = [p for p in report.factorization.factors
            if _admits_q_2_mod_3(p)]
    _expect('surviving primes', RECORDED_SURVIVORS,
            report.surviving_primes, log)

    candidates = set()
    chain_bound = 2 * max(CHAIN_ALPHAS) + 4
    for p in report.surviving_primes:
        gcd = gcd_chain(p, CHAIN_ALPHAS, variable='v')
        _expect('gcd(g_2, g_5, g_8) mod %d' % p, RECORDED_GCDS[p],
                gcd.coeffs, log)
        all_roots = gcd.roots()
        # v = a^(-(q+1)/3) cannot be 0
        roots = [r for r in all_roots if r != 0]
        resolved = (gcd.degree == len(all_roots))
        limit = chain_bound
        for alpha in FOLLOWUP_ALPHAS:
            if not roots:
                break
            limit = 2 * alpha + 4
            record = g_poly(alpha, check=True)
            kept = []
            for r in roots:
                value = eval_mod_p(record.g_v, r, p)
                point = _symmetric(r, p)
                printed = RECORDED_EVALUATIONS.get((p, alpha, point))
                if (printed is not None) and ((printed == 0) != (value == 0)):
                    raise FixtureMismatch('g_%d(%d) mod %d' % (alpha, point, p),
                            printed, value)
                report.evaluations.append({'p': p, 'alpha': alpha,
                    'point': point, 'variable': 'v',
                    'computed': value, 'printed': printed})
                if value == 0:
                    kept.append(r)
            roots = kept
        if roots:
            resolved = False
        if resolved:
            q_values = []
            q = p
            while q < limit:
                if q >= SEARCH_BELOW:
                    q_values.append(q)
                q *= p * p
        else:
            log.warning('Chain mod %d does not bound q', p)
            q_values = None
        report.chains[p] = {
                'gcd': format_poly(gcd.coeffs, 'v'),
                'gcd_coeffs': list(gcd.coeffs),
                'roots': [_symmetric(r, p) for r in all_roots],
                'zero_root_excluded': 0 in all_roots,
                'q_limit': limit if resolved else None,
                'q_candidates': q_values,
        }
        if q_values:
            candidates.update(q_values)
        log.debug('p=%d: gcd %s, q candidates %s', p,
                report.chains[p]['gcd'], q_values)

    report.candidates = sorted(candidates)
    report.small_q = [q for (q, _, _) in prime_powers(SEARCH_BELOW - 1)
            if (q + 1) % 3 == 0]
    for q in report.small_q + report.candidates:
        ctx = field_for_q(q)
        found = [a for a in range(1, ctx.q2) if brute_pp_test(ctx, a)]
        predicted = sporadic_census(q).elements
        _expect('permutations for q=%d' % q, predicted, found, log)
        report.search[q] = len(found)
    log.info('Elimination leaves q in %s besides odd powers of 2',
            report.small_q + report.candidates)
    return report

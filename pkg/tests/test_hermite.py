import random

import pytest
import hypothesis.strategies as st
from hypothesis import given, settings

from permbinom.ffield import make_field, FieldElem, is_primitive_cube_root, \
        split_prime_power
from permbinom.hermite import BinomialMap, interval_census, power_sum, \
        s_q, power_sum_identity, nonzero_roots, brute_pp_test, \
        hermite_pp_test, power_sum_profile, cube_root_profile
from permbinom.errors import PreconditionViolated, SizeExceeded


FIELDS = [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (11, 1),
        (13, 1)]

PP_COUNTS = {2: 2, 3: 0, 4: 0, 5: 10, 7: 0, 8: 15, 9: 0, 11: 16, 13: 0}


def test_binomial_map_is_literal(f25):
    f = BinomialMap(f25, 7)
    for x in range(f25.q2):
        expected = f25.add(f25.mul(7, x), f25.pow(x, 13))
        assert f(x) == expected
        assert f.images()[x] == expected
    assert f.evaluate(0) == 0


def test_binomial_map_rejects_zero(f25):
    with pytest.raises(PreconditionViolated):
        BinomialMap(f25, 0)


@pytest.mark.parametrize('p, e', FIELDS)
def test_brute_force_counts(p, e):
    ctx = make_field(p, e)
    count = sum(1 for a in range(1, ctx.q2) if brute_pp_test(ctx, a))
    assert count == PP_COUNTS[ctx.q]


@pytest.mark.parametrize('p, e', FIELDS)
def test_hermite_agrees_with_brute_force(p, e):
    ctx = make_field(p, e)
    for a in range(1, ctx.q2):
        assert hermite_pp_test(ctx, a) == brute_pp_test(ctx, a), a


@pytest.mark.parametrize('p, e', [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1),
    (2, 3)])
def test_full_hermite(p, e):
    ctx = make_field(p, e)
    for a in range(1, ctx.q2):
        assert hermite_pp_test(ctx, a, full=True) == brute_pp_test(ctx, a)


def test_full_hermite_is_capped():
    with pytest.raises(SizeExceeded):
        hermite_pp_test(make_field(3, 2), 1, full=True)


def test_scalar_and_vectorised_paths_agree(f64):
    for a in range(1, f64.q2):
        assert brute_pp_test(f64, a, vectorised=True) \
                == brute_pp_test(f64, a, vectorised=False)


@pytest.mark.parametrize('q, alpha, lo, hi, multiples, stated', [
    (5, 2, -9, 3, [-1, 0], [-1, 0]),
    (5, 4, -5, 7, [0, 1], [0]),
    (11, 0, -31, -1, [-2, -1], [-2, -1]),
    (2, 1, -2, 1, [0], [0]),
])
def test_interval_census(q, alpha, lo, hi, multiples, stated):
    census = interval_census(q, alpha)
    assert (census.lo, census.hi) == (lo, hi)
    assert census.multiples == multiples
    assert census.stated_multiples == stated
    assert census.count == len(multiples)
    assert census.meta['stated_hi'] == alpha - 1


def test_interval_census_range():
    with pytest.raises(PreconditionViolated):
        interval_census(5, 5)
    with pytest.raises(PreconditionViolated):
        interval_census(5, -1)


def test_power_sum_range(f25):
    with pytest.raises(PreconditionViolated):
        power_sum(f25, 1, 0)
    with pytest.raises(PreconditionViolated):
        power_sum(f25, 1, 25)
    assert isinstance(power_sum(f25, 1, 24), FieldElem)


@pytest.mark.parametrize('p, e', [(5, 1), (2, 3), (11, 1)])
def test_power_sum_identity_exhaustive(p, e):
    ctx = make_field(p, e)
    for a in range(1, ctx.q2):
        for alpha in range(ctx.q):
            (lhs, rhs) = power_sum_identity(ctx, a, alpha)
            assert lhs == rhs, (a, alpha)


@settings(max_examples=50, deadline=None)
@given(st.data())
def test_power_sum_identity_sampled(data):
    (p, e) = data.draw(st.sampled_from([(3, 2), (7, 1), (13, 1), (2, 4)]))
    ctx = make_field(p, e)
    a = data.draw(st.integers(1, ctx.q2 - 1))
    alpha = data.draw(st.integers(0, ctx.q - 1))
    (lhs, rhs) = power_sum_identity(ctx, a, alpha)
    assert lhs == rhs


def test_s_q_never_vanishes_at_alpha_zero_for_q3():
    ctx = make_field(3, 1)
    for a in range(1, ctx.q2):
        assert s_q(ctx, a, 0) != 0


def test_s_q_vanishes_for_sporadic_q5(f25):
    for a in (2, 3):
        assert all(s_q(f25, a, alpha) == 0 for alpha in range(5))
        assert brute_pp_test(f25, a)


def test_s_q_preconditions(f25):
    with pytest.raises(PreconditionViolated):
        s_q(f25, 0, 1)
    with pytest.raises(PreconditionViolated):
        s_q(f25, 1, 5)


def test_nonzero_roots():
    ctx = make_field(3, 1)
    # f(1) = -1 + 1 = 0 for a = -1
    assert FieldElem(ctx, 1) in nonzero_roots(ctx, 2)
    for root in nonzero_roots(ctx, 2):
        assert BinomialMap(ctx, 2).evaluate(root) == 0
    assert not brute_pp_test(ctx, 2)


@pytest.mark.parametrize('p, e, qualifying', [
    (2, 1, 2), (5, 1, 4), (2, 3, 6), (11, 1, 8),
    (17, 1, 12), (23, 1, 16), (29, 1, 20), (2, 5, 22),
])
def test_cube_root_profile(p, e, qualifying):
    ctx = make_field(p, e)
    k = (ctx.q + 1) // 3
    found = 0
    for a in range(1, ctx.q2):
        if not is_primitive_cube_root(ctx, ctx.pow(a, k)):
            with pytest.raises(PreconditionViolated):
                cube_root_profile(ctx, a)
            continue
        found += 1
        profile = cube_root_profile(ctx, a)
        assert profile.holds
        assert set(profile.expected) == set(profile.entries)
        if ctx.q % 2 == 0:
            assert not profile.nonzero
        else:
            assert set(profile.nonzero) <= {(ctx.q2 - 1) // 2}
    assert found == qualifying


def test_cube_root_profile_needs_q_2_mod_3():
    with pytest.raises(PreconditionViolated):
        cube_root_profile(make_field(7, 1), 1)


def test_power_sum_profile_meta(f25):
    profile = power_sum_profile(f25, 7)
    assert sorted(profile.entries) == sorted(
            alpha + (4 - alpha) * 5 for alpha in range(5))
    meta = profile.meta
    assert meta['q'] == 5
    assert meta['a'] == 7
    assert 'holds' not in meta


def test_power_sum_vanishes_off_the_reduced_exponents(f25):
    q = 5
    reduced = set(alpha + (q - 1 - alpha) * q for alpha in range(q))
    for a in (1, 7, 13):
        for alpha in range(q):
            for beta in range(q):
                s = alpha + beta * q
                if 0 < s < f25.q2 - 1 and s not in reduced:
                    assert power_sum(f25, a, s) == 0, (a, s)


def test_power_sum_f4_cube_root():
    ctx = make_field(2, 1)
    for a in (2, 3):
        assert power_sum(ctx, a, 1) == 0
        assert power_sum(ctx, a, 2) == 0


def test_power_sum_of_permutation_at_top(f25):
    for a in range(1, f25.q2):
        if brute_pp_test(f25, a):
            assert power_sum(f25, a, f25.q2 - 1) == -1


def test_cube_root_profile_odd_q(f25):
    for a in range(1, f25.q2):
        y = f25.pow(a, 2)
        if is_primitive_cube_root(f25, y):
            profile = cube_root_profile(f25, a)
            assert profile.holds
            assert list(profile.nonzero) == [12]
            assert not brute_pp_test(f25, a)


def test_interval_dichotomy():
    for q in range(2, 65):
        split = split_prime_power(q)
        if split is None or (q + 1) % 3:
            continue
        for alpha in range(2, q, 3):
            expected = 2 if (q % 2 and alpha == (q - 1) // 2) else 3
            assert interval_census(q, alpha).count == expected, (q, alpha)


@pytest.mark.parametrize('p, e', [(2, 1), (5, 1), (2, 3), (11, 1)])
def test_coset_invariance(p, e):
    ctx = make_field(p, e)
    k = (ctx.q + 1) // 3
    kernel = [eps for eps in range(1, ctx.q2) if ctx.pow(eps, k) == 1]
    assert len(kernel) == k
    for a in range(1, ctx.q2):
        status = brute_pp_test(ctx, a)
        for eps in kernel:
            assert brute_pp_test(ctx, ctx.mul(eps, a)) == status


@pytest.mark.parametrize('p, e', [(2, 1), (5, 1), (2, 3), (11, 1)])
def test_root_criterion(p, e):
    ctx = make_field(p, e)
    k = (ctx.q + 1) // 3
    for a in range(1, ctx.q2):
        assert bool(nonzero_roots(ctx, a)) == (ctx.pow(a, k) == 1), a


@pytest.mark.parametrize('p, e', [(17, 1), (23, 1), (29, 1), (2, 5)])
def test_power_sum_identity_seeded(p, e):
    ctx = make_field(p, e)
    rng = random.Random(ctx.q)
    for _ in range(50):
        a = rng.randrange(1, ctx.q2)
        alpha = rng.randrange(ctx.q)
        (lhs, rhs) = power_sum_identity(ctx, a, alpha)
        assert lhs == rhs, (a, alpha)

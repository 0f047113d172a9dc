from math import comb

import pytest
import hypothesis.strategies as st
from hypothesis import given

from permbinom import ffield
from permbinom.ffield import make_field, FieldCtx, FieldElem, FpPoly, \
        fp_gcd, canonical_modulus, split_prime_power, lucas_binom, \
        fe_mul, fe_pow, is_primitive_cube_root, subfield_q_members, \
        format_poly
from permbinom.errors import NonPrimeP, SizeExceeded, ZeroInverse, \
        PreconditionViolated


@pytest.mark.parametrize('p, e, modulus', [
    (2, 1, (1, 1, 1)),
    (5, 1, (2, 0, 1)),
    (11, 1, (1, 0, 1)),
    (17, 1, (3, 0, 1)),
    (2, 3, (1, 1, 0, 0, 0, 0, 1)),
])
def test_canonical_modulus(p, e, modulus):
    ctx = make_field(p, e)
    assert ctx.modulus.coeffs == modulus
    assert ctx.modulus.is_irreducible()


def test_modulus_is_first_irreducible():
    # x^2, x^2+1 split mod 5; x^2+2 does not
    assert canonical_modulus(5, 2) == FpPoly(5, (2, 0, 1))
    assert not FpPoly(5, (1, 0, 1)).is_irreducible()


def test_make_field_is_cached():
    assert make_field(3, 2) is make_field(3, 2)


def test_make_field_rejects():
    with pytest.raises(NonPrimeP):
        make_field(4, 1)
    with pytest.raises(PreconditionViolated):
        make_field(2, 0)
    with pytest.raises(SizeExceeded):
        make_field(7, 2, size_bound=1000)


@pytest.mark.parametrize('q, split', [
    (2, (2, 1)), (8, (2, 3)), (9, (3, 2)), (29, (29, 1)),
    (1, None), (6, None), (12, None),
])
def test_split_prime_power(q, split):
    assert split_prime_power(q) == split


def test_generator_has_full_order(f25, f64):
    for ctx in (f25, f64):
        powers = set(ctx.pow(ctx.generator, k) for k in range(ctx.order))
        assert len(powers) == ctx.order


def test_tables_match_polynomial_arithmetic(f25):
    for a in range(f25.q2):
        for b in range(0, f25.q2, 3):
            assert f25.mul(a, b) == (f25._mul_poly(a, b) if a and b else 0)


def test_without_tables(monkeypatch):
    tabled = make_field(3, 1)
    monkeypatch.setattr(ffield, 'TABLE_BOUND', 0)
    plain = FieldCtx(3, 1)
    assert not plain.has_tables
    assert tabled.has_tables
    for a in range(9):
        for k in (-3, 0, 1, 4, 7):
            if a or k >= 0:
                assert plain.pow(a, k) == tabled.pow(a, k)
    xs = plain.elements_array()
    assert list(plain.pow_array(xs, 4)) == list(tabled.pow_array(xs, 4))
    assert list(plain.mul_array(5, xs)) == list(tabled.mul_array(5, xs))


elements = st.integers(min_value=0, max_value=24)


@given(elements, elements, elements)
def test_field_axioms(a, b, c):
    ctx = make_field(5, 1)
    assert ctx.add(a, b) == ctx.add(b, a)
    assert ctx.mul(a, b) == ctx.mul(b, a)
    assert ctx.mul(a, ctx.add(b, c)) \
            == ctx.add(ctx.mul(a, b), ctx.mul(a, c))
    assert ctx.mul(ctx.mul(a, b), c) == ctx.mul(a, ctx.mul(b, c))
    assert ctx.add(a, ctx.neg(a)) == 0
    if a:
        assert ctx.mul(a, ctx.inv(a)) == 1


@given(st.integers(min_value=1, max_value=63), st.integers(-200, 200),
        st.integers(-200, 200))
def test_pow_laws(a, j, k):
    ctx = make_field(2, 3)
    assert ctx.pow(a, j + k) == ctx.mul(ctx.pow(a, j), ctx.pow(a, k))
    assert ctx.pow(a, ctx.order) == 1


def test_zero_powers(f25):
    assert f25.pow(0, 0) == 1
    assert f25.pow(0, 3) == 0
    with pytest.raises(ZeroInverse):
        f25.pow(0, -1)
    with pytest.raises(ZeroInverse):
        f25.inv(0)
    with pytest.raises(ZeroInverse):
        fe_pow(f25, 0, -2)


def test_add_is_xor_in_characteristic_two(f64):
    for a in range(64):
        assert f64.add(a, 45) == a ^ 45
        assert f64.neg(a) == a


def test_sum_elements(f25, f64):
    assert f25.sum_elements(f25.elements_array()) == 0
    assert f64.sum_elements(f64.elements_array()) == 0
    assert f25.sum_elements([7, 8]) == f25.add(7, 8)


def test_field_elem_operators(f25):
    a = FieldElem(f25, 7)
    b = f25.elem(13)
    assert (a + b).value == f25.add(7, 13)
    assert (a * b) == fe_mul(f25, 7, 13)
    assert (a ** 24) == 1
    assert (a / a) == 1
    assert (2 * a).value == f25.scale(2, 7)
    assert (a - a) == 0
    assert not (a - a)
    assert a.coeffs == (2, 1)
    assert str(a) == '7'
    assert int(a) == 7
    with pytest.raises(ValueError):
        FieldElem(f25, 25)
    with pytest.raises(ValueError):
        a + make_field(2, 3).elem(1)


def test_subfield(f25, f64):
    for ctx in (f25, f64):
        members = subfield_q_members(ctx)
        assert len(members) == ctx.q
        for z in members:
            assert z ** ctx.q == z


def test_primitive_cube_roots(f25):
    roots = [y for y in range(f25.q2) if is_primitive_cube_root(f25, y)]
    assert len(roots) == 2
    for y in roots:
        assert f25.pow(y, 3) == 1
        assert y != 1


@given(st.sampled_from([2, 3, 5, 7, 11]), st.integers(0, 300),
        st.integers(-2, 300))
def test_lucas_binom(p, m, k):
    expected = comb(m, k) % p if 0 <= k <= m else 0
    assert lucas_binom(p, m, k) == expected


@given(st.lists(st.integers(0, 6), max_size=8),
        st.lists(st.integers(0, 6), min_size=1, max_size=5))
def test_fppoly_divmod(a, b):
    f = FpPoly(7, a)
    g = FpPoly(7, b)
    if not g:
        with pytest.raises(ZeroInverse):
            divmod(f, g)
        return
    (quot, rem) = divmod(f, g)
    assert quot * g + rem == f
    assert rem.degree < g.degree


def test_fppoly_basics():
    f = FpPoly(2, (1, 1, 1))
    assert f.is_irreducible()
    assert not FpPoly(2, (1, 0, 1)).is_irreducible()
    assert FpPoly(5, (1, 0, 1)).roots() == [2, 3]
    assert fp_gcd(FpPoly(5, (1, 0, 1)), FpPoly(5, (3, 1))) == FpPoly(5, (3, 1))
    assert str(FpPoly(29, (3, 1))) == 'x+3'
    assert FpPoly(3, (2, 0, 1)).terms() == '1*x^2 2*x^0'
    assert FpPoly(3, ()).degree == -1


def test_format_poly():
    assert format_poly([44, -9, -8, -23, 3, 2], 'y') \
            == '2y^5+3y^4-23y^3-8y^2-9y+44'
    assert format_poly([0, 1], 'v') == 'v'
    assert format_poly([-1, 0, -1]) == '-x^2-1'
    assert format_poly([]) == '0'


def test_x_squared_in_f4():
    ctx = make_field(2, 1)
    # x is encoded as 2, x + 1 as 3
    assert ctx.mul(2, 2) == 3
    assert fe_mul(ctx, 2, 1).value == 2


def test_integers_compare_as_scalars():
    f4 = make_field(2, 1)
    x = FieldElem(f4, 2)
    # 2 = 0 mod 2
    assert x != 2
    assert FieldElem(f4, 0) == 2
    assert x.value == 2
    f25 = make_field(5, 1)
    assert FieldElem(f25, 4) == -1
    assert FieldElem(f25, 4) == 9
    assert FieldElem(f25, 5) != 5


def test_repeated_multiplication_is_frobenius_identity(f25):
    for a in range(f25.q2):
        acc = FieldElem(f25, 1)
        for _ in range(25):
            acc = fe_mul(f25, acc, a)
        assert acc == FieldElem(f25, a)


@pytest.mark.parametrize('p, e', [(5, 1), (2, 3), (3, 1)])
def test_frobenius_is_a_field_map(p, e):
    ctx = make_field(p, e)
    for a in range(ctx.q2):
        for b in range(ctx.q2):
            assert ctx.pow(ctx.add(a, b), p) \
                    == ctx.add(ctx.pow(a, p), ctx.pow(b, p))
            assert ctx.pow(ctx.mul(a, b), p) \
                    == ctx.mul(ctx.pow(a, p), ctx.pow(b, p))


@given(st.integers(1, 120))
def test_negative_powers_invert(a):
    ctx = make_field(11, 1)
    assert fe_mul(ctx, fe_pow(ctx, a, -3), fe_pow(ctx, a, 3)) == 1
    assert fe_pow(ctx, a, 0) == 1


def test_cube_roots_counts():
    f4 = make_field(2, 1)
    assert [y for y in range(4) if is_primitive_cube_root(f4, y)] == [2, 3]
    assert not is_primitive_cube_root(f4, 1)
    f289 = make_field(17, 1)
    assert sum(1 for y in range(f289.q2)
            if is_primitive_cube_root(f289, y)) == 2


@pytest.mark.parametrize('p, m, k, value', [
    (2, 7, 3, 1), (5, 6, 2, 0), (3, 4, -1, 0), (7, 5, 6, 0),
])
def test_lucas_examples(p, m, k, value):
    assert lucas_binom(p, m, k) == value


@pytest.mark.parametrize('p', [2, 5, 11, 17, 23, 29])
def test_lucas_small_range(p):
    for m in range(31):
        for k in range(-1, m + 2):
            expected = comb(m, k) % p if 0 <= k <= m else 0
            assert lucas_binom(p, m, k) == expected


def test_subfield_of_f4():
    ctx = make_field(2, 1)
    assert subfield_q_members(ctx) == {FieldElem(ctx, 0), FieldElem(ctx, 1)}


def test_canonical_modulus_is_reproducible():
    assert canonical_modulus(3, 4) == canonical_modulus(3, 4)
    assert FieldCtx(7, 1).modulus == make_field(7, 1).modulus

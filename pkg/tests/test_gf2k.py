import random

import pytest
from hypothesis import given, strategies as st
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_irreducible_p, gf_mul, gf_pow_mod, gf_rem, gf_add
from sympy import factorint

from dp1char2.gf2k import (
    SUPPORTED_DEGREES,
    FieldCtx,
    FieldElement,
    FieldError,
    conway_modulus,
    cube_roots,
    embed,
    embed_raw,
    field_table,
    inv,
    solve_artin_schreier,
    sqrt,
    trace,
)

F4 = FieldCtx(2)
G = FieldElement(F4, 2)  # the class of x modulo x^2 + x + 1


def _bits_to_gf(a):
    """int bit vector -> sympy dense GF(2) list, highest degree first."""
    if not a:
        return []
    return [int(c) for c in bin(a)[2:]]


def _gf_to_bits(p):
    out = 0
    for c in p:
        out = (out << 1) | (int(c) % 2)
    return out


def sympy_mul(k, a, b):
    m = _bits_to_gf(conway_modulus(k))
    return _gf_to_bits(gf_rem(gf_mul(_bits_to_gf(a), _bits_to_gf(b), 2, ZZ), m, 2, ZZ))


# -- small worked values ---------------------------------------------------------------


def test_gf4_products():
    assert G * G == G + 1
    assert inv(G) == G + 1
    assert sqrt(G) == G + 1
    assert trace(G) == FieldElement(F4, 1)


def test_artin_schreier_small():
    assert solve_artin_schreier(FieldElement(FieldCtx(1), 1)) == set()
    assert solve_artin_schreier(FieldElement(F4, 1)) == {G, G + 1}


def test_cube_roots_gf4():
    one = FieldElement(F4, 1)
    assert cube_roots(one) == {one, G, G + 1}
    assert cube_roots(G) == set()


def test_embedding_of_gf4_generator():
    F16 = FieldCtx(4)
    h = embed(G, F16)
    assert h * h + h == FieldElement(F16, 1)


def test_context_mismatch_raises():
    with pytest.raises(FieldError):
        G + FieldElement(FieldCtx(4), 1)
    with pytest.raises(FieldError):
        FieldElement(F4, 4)
    with pytest.raises(FieldError):
        FieldCtx(25)


def test_field_table_lists_every_degree():
    tab = field_table()
    assert sorted(tab) == sorted(SUPPORTED_DEGREES)
    assert tab[2] == "7"


# -- the modulus table against an independent polynomial library -------------------------------


@pytest.mark.parametrize("k", SUPPORTED_DEGREES)
def test_modulus_irreducible_and_primitive(k):
    m = _bits_to_gf(conway_modulus(k))
    assert len(m) == k + 1
    assert gf_irreducible_p(m, 2, ZZ)
    n = 2**k - 1
    x = [1, 0]
    for p in factorint(n):
        assert gf_pow_mod(x, n // p, m, 2, ZZ) != [1]
    assert gf_pow_mod(x, n, m, 2, ZZ) == [1]


@pytest.mark.parametrize("k", [k for k in SUPPORTED_DEGREES if k > 1])
def test_subfield_compatibility(k):
    # the image of the generator of each subfield is a power of the generator
    mk = _bits_to_gf(conway_modulus(k))
    for d in SUPPORTED_DEGREES:
        if d >= k or k % d:
            continue
        y = gf_pow_mod([1, 0], (2**k - 1) // (2**d - 1), mk, 2, ZZ)
        acc = []
        for c in _bits_to_gf(conway_modulus(d)):
            acc = gf_rem(gf_add(gf_mul(acc, y, 2, ZZ), [c], 2, ZZ), mk, 2, ZZ)
        assert acc == []
        assert embed_raw(2 if d > 1 else 1, d, k) == _gf_to_bits(y)


@pytest.mark.parametrize("k", SUPPORTED_DEGREES)
def test_mul_agrees_with_sympy(k):
    ctx = FieldCtx(k)
    rng = random.Random(k)
    for _ in range(200):
        a, b = ctx.random(rng), ctx.random(rng)
        assert ctx.mul(a, b) == sympy_mul(k, a, b)


# -- properties -------------------------------------------------------------------------


degrees = st.sampled_from(SUPPORTED_DEGREES)


@st.composite
def field_and_elements(draw, n=3):
    k = draw(degrees)
    ctx = FieldCtx(k)
    return ctx, [draw(st.integers(0, ctx.mask)) for _ in range(n)]


@given(field_and_elements())
def test_ring_axioms(data):
    ctx, (a, b, c) = data
    mul = ctx.mul
    assert mul(a, b) == mul(b, a)
    assert mul(mul(a, b), c) == mul(a, mul(b, c))
    assert mul(a, b ^ c) == mul(a, b) ^ mul(a, c)
    assert mul(a, 1) == a


@given(field_and_elements())
def test_inverse_and_frobenius(data):
    ctx, (a, b, _) = data
    if a:
        assert ctx.mul(a, ctx.inv(a)) == 1
        assert ctx.div(ctx.mul(a, b), a) == b
    assert ctx.sqr(a ^ b) == ctx.sqr(a) ^ ctx.sqr(b)
    assert ctx.sqr(ctx.sqrt(a)) == a
    assert ctx.pow(a, ctx.q) == a


@given(field_and_elements())
def test_artin_schreier_iff_trace_zero(data):
    ctx, (c, _, _) = data
    sols = ctx.artin_schreier(c)
    if ctx.trace(c):
        assert sols == []
    else:
        assert len(sols) == 2
        for x in sols:
            assert ctx.sqr(x) ^ x == c


@given(field_and_elements())
def test_cube_root_counts(data):
    ctx, (a, _, _) = data
    from math import gcd

    assert len(ctx.roots_of_unity(3)) == gcd(3, ctx.q - 1)
    c = ctx.mul(ctx.sqr(a), a)
    if a:
        roots = ctx.cube_roots(c)
        assert a in roots
        assert len(roots) == gcd(3, ctx.q - 1)
        for r in roots:
            assert ctx.mul(ctx.sqr(r), r) == c


@given(st.sampled_from([(d, k) for k in SUPPORTED_DEGREES for d in SUPPORTED_DEGREES if k % d == 0]),
       st.integers(0, 2**48 - 1), st.integers(0, 2**48 - 1))
def test_embedding_is_a_ring_map(dk, x, y):
    d, k = dk
    small, big = FieldCtx(d), FieldCtx(k)
    a, b = x & small.mask, y & small.mask
    e = lambda z: embed_raw(z, d, k)
    assert e(small.mul(a, b)) == big.mul(e(a), e(b))
    assert e(a ^ b) == e(a) ^ e(b)


def test_hex_round_trip():
    ctx = FieldCtx(48)
    rng = random.Random(5)
    for _ in range(50):
        a = ctx.random(rng)
        assert ctx.from_hex(ctx.to_hex(a)) == a

import random

import pytest
from hypothesis import given, settings, strategies as st

from dp1char2 import binform as bf
from dp1char2.binform import BinaryForm, FormError, LinearMap2, P1Point
from dp1char2.gf2k import FieldCtx

F2, F4, F16 = FieldCtx(1), FieldCtx(2), FieldCtx(4)
G = 2


def form(ctx, *coeffs):
    return BinaryForm(ctx, coeffs)


def scan_roots(f: BinaryForm, ctx: FieldCtx):
    """Oracle: every point of P^1(ctx) where f vanishes, by evaluation."""
    g = bf.embed_form(f, ctx)
    pts = [P1Point(ctx, 0, 1)] + [P1Point(ctx, 1, t) for t in range(ctx.q)]
    return [p for p in pts if bf.eval_form(g, p) == 0]


def test_evaluation_at_a_point():
    f = form(F4, 0, 1, 1, 0)  # u^2 v + u v^2
    assert bf.eval_form(f, P1Point.make(F4, 1, G)) == 1


def test_substitution_in_char_2():
    f = form(F2, 0, 1, 0, 0)  # u^2 v
    s = LinearMap2(F2, 1, 0, 1, 1)  # v -> u + v
    assert bf.substitute(f, s) == form(F2, 1, 1, 0, 0)


def test_square_has_zero_derivative():
    f = form(F4, 0, 0, 3, 0, 1, 0, 2, 0, 1)  # v^8 + d v^6 + c v^4 + b v^2
    assert bf.derivative_v(f).is_zero()
    assert not bf.is_squarefree(f)


def test_roots_of_three_lines():
    f = bf.pow_form(form(F2, 0, 1, 1, 0), 4)  # (uv(u+v))^4
    roots = {(p.u0, p.v0): m for p, m in bf.roots_p1(f)}
    assert roots == {(1, 0): 4, (0, 1): 4, (1, 1): 4}


def test_roots_of_u12():
    f = BinaryForm.monomial(F2, 12, 0)  # u^12
    assert [(p.u0, p.v0, m) for p, m in bf.roots_p1(f)] == [(0, 1, 12)]


def test_irreducible_quadratic_splits_over_gf4():
    f = form(F2, 1, 1, 1)
    assert bf.roots_p1(f) == []
    roots = bf.roots_p1(f, F4)
    assert len(roots) == 2 and all(m == 1 for _, m in roots)
    assert bf.splitting_degree(f) == 2


def test_case_1e_discriminant_roots_by_scan():
    # v^12 + u^3 v^9 + u^6 v^6 + u^12
    f = BinaryForm.from_dict(F2, 12, {(0, 12): 1, (3, 9): 1, (6, 6): 1, (12, 0): 1})
    K = bf.splitting_degree(f)
    ctx = FieldCtx(K)
    found = sorted((p.u0, p.v0) for p, _ in bf.roots_p1(f, ctx))
    assert sum(m for _, m in bf.roots_p1(f, ctx)) == 12
    F12 = FieldCtx(12)
    if K <= 12 and 12 % K == 0:
        assert len(scan_roots(f, F12)) == len(found)


def test_odd_part_multiplicity():
    t9 = [0] * 9 + [1]
    assert bf.odd_part_multiplicity(F4, t9, 0) == 9
    cusp = [0, 0, 3, 1]  # t^3 + a t^2
    assert bf.odd_part_multiplicity(F4, cusp, 0) == 3


def test_zero_form_errors():
    with pytest.raises(FormError):
        bf.roots_p1(BinaryForm.zero(F4, 3))
    with pytest.raises(FormError):
        LinearMap2(F4, 1, 1, 1, 1)


def test_resultant_detects_common_root():
    # f = y - x, g = y^2 + y + x^2 + x + 1 share a root iff x^2+x = x^2 + x + 1 ... never
    f = [[0, 1], [1]]
    g = [[1, 1, 1], [1], [1]]
    assert bf.resultant_y(F4, f, g) == [1]
    # g = y^2 + x: common root with y = x iff x^2 + x = 0
    g2 = [[0, 1], [], [1]]
    r = bf.resultant_y(F4, f, g2)
    assert sorted(bf.upoly_roots(F4, r)) == [0, 1]


# -- properties (1000 samples each) -------------------------------------------------


ctxs = st.sampled_from([F2, F4, F16, FieldCtx(5), FieldCtx(12)])


@st.composite
def map_pair_form(draw):
    ctx = draw(ctxs)
    rng = random.Random(draw(st.integers(0, 2**32)))
    d = draw(st.integers(0, 12))
    return ctx, bf.random_form(ctx, d, rng), bf.random_map(ctx, rng), bf.random_map(ctx, rng), rng


@settings(max_examples=1000)
@given(map_pair_form())
def test_action_composes(data):
    ctx, f, s, t, _ = data
    assert bf.substitute(bf.substitute(f, s), t) == bf.substitute(f, bf.compose(s, t))
    assert bf.substitute(bf.substitute(f, s), bf.inverse_map(s)) == f


@settings(max_examples=1000)
@given(map_pair_form())
def test_substitution_matches_pointwise_evaluation(data):
    ctx, f, s, _, rng = data
    p = P1Point.make(ctx, ctx.random_nonzero(rng), ctx.random(rng))
    q = p.image(s)
    lhs = bf.eval_form(bf.substitute(f, s), p)
    # image() normalises the point, so compare up to the scalar lambda^d
    a, b, c, d_ = s.m
    u = ctx.mul(a, p.u0) ^ ctx.mul(b, p.v0)
    v = ctx.mul(c, p.u0) ^ ctx.mul(d_, p.v0)
    assert lhs == bf.eval_raw(ctx, f.coeffs, u, v)
    assert (lhs == 0) == (bf.eval_form(f, q) == 0)


@settings(max_examples=1000)
@given(map_pair_form())
def test_product_and_substitution_commute(data):
    ctx, f, s, _, rng = data
    g = bf.random_form(ctx, 3, rng)
    assert bf.substitute(f * g, s) == bf.substitute(f, s) * bf.substitute(g, s)


@given(st.integers(0, 2**32), st.sampled_from([F2, F4, F16]))
def test_roots_agree_with_scan(seed, ctx):
    rng = random.Random(seed)
    f = bf.random_form(ctx, rng.randint(1, 8), rng)
    if f.is_zero():
        return
    target = FieldCtx(4) if ctx.k <= 4 else ctx
    got = sorted((p.u0, p.v0) for p, _ in bf.roots_p1(f, target))
    assert got == sorted((p.u0, p.v0) for p in scan_roots(f, target))


@given(st.integers(0, 2**32), st.sampled_from([F2, F4, F16]))
def test_squarefree_matches_multiplicities(seed, ctx):
    rng = random.Random(seed)
    f = bf.random_form(ctx, rng.randint(1, 8), rng)
    if f.is_zero():
        return
    K = bf.splitting_degree(f)
    if K is None:
        return
    mults = [m for _, m in bf.roots_p1(f, FieldCtx(K))]
    assert bf.is_squarefree(f) == all(m == 1 for m in mults)
    assert bf.squarefree_radical(f).degree == len(mults)


def test_json_round_trip():
    rng = random.Random(1)
    for _ in range(20):
        f = bf.random_form(F16, 6, rng)
        assert BinaryForm.from_json(F16, f.to_json()) == f
        s = bf.random_map(F16, rng)
        assert LinearMap2.from_json(F16, s.to_json()).m == s.m

import random

import pytest
from hypothesis import given, settings, strategies as st

from dp1char2 import binform as bf
from dp1char2 import normalform as nf
from dp1char2.autgroup import AutTuple, inverse, is_automorphism, lemma_conditions
from dp1char2.binform import BinaryForm, LinearMap2
from dp1char2.gf2k import FieldCtx
from dp1char2.surface import (
    BranchType,
    Substitution,
    SurfaceEq,
    SurfaceError,
    apply_substitution,
    bertini,
    branch_type,
    discriminant,
    is_smooth_bruteforce,
)

F2, F4 = FieldCtx(1), FieldCtx(2)


def equation_value(S, u, v, x, y):
    """Oracle: the defining polynomial evaluated at a point of the ambient space."""
    ctx = S.ctx
    ev = lambda f: bf.eval_raw(ctx, f, u, v)
    a1, a2, a3, a4, a6 = (ev(f) for f in S.raw())
    mu, sq = ctx.mul, ctx.sqr
    return (sq(y) ^ mu(y, mu(a1, x) ^ a3) ^ mu(sq(x), x) ^ mu(a2, sq(x)) ^ mu(a4, x) ^ a6)


def random_surface(ctx, rng):
    while True:
        forms = [tuple(ctx.random(rng) for _ in range(d + 1)) for d in (1, 2, 3, 4, 6)]
        if any(forms[0]) or any(forms[2]):
            return SurfaceEq(ctx, *forms)


def test_discriminants_of_the_branch_types():
    S3 = nf.build("3", dict(a=0, b=0, c=0, d=1, e=3, f=1), F4)
    assert discriminant(S3) == bf.pow_form(BinaryForm(F4, (0, 1, 1, 0)), 4)
    S4 = nf.build("4", dict(a=0, b=0, c=0, d=1, e=0), F4)
    assert discriminant(S4) == BinaryForm.from_dict(F4, 12, {(8, 4): 1})


def test_case_1a_discriminant_formula():
    ctx = FieldCtx(4)
    rng = random.Random(3)
    for _ in range(20):
        p = {n: ctx.random(rng) for n in nf.PARAMS["1a"]}
        S = SurfaceEq(ctx, *nf.coefficient_forms("1a", p))
        a, b, c, d, e, f, g, h = (p[n] for n in "abcdefgh")
        sq = ctx.sqr
        expect = [sq(b) ^ e, 0, f, b, sq(c) ^ g, c, h, d, sq(d) ^ a, 1, 0, 0, 1]
        assert list(bf.dehomogenize(discriminant(S))) == bf._trim(expect)


def test_branch_types():
    def bt(a1, a3):
        return branch_type(SurfaceEq(F2, a1, (0, 0, 0), a3, (0,) * 5, (0,) * 7))

    assert bt((0, 0), (1, 1, 0, 0)) is BranchType.DOUBLE_LINE_LINE  # u^2 (u + v)
    assert bt((0, 0), (1, 0, 1, 0)) is BranchType.DOUBLE_LINE_LINE  # u (u + v)^2
    assert bt((0, 0), (0, 1, 1, 0)) is BranchType.THREE_LINES
    assert bt((0, 0), (1, 0, 0, 0)) is BranchType.TRIPLE_LINE
    assert bt((1, 0), (0, 0, 0, 1)) is BranchType.TWISTED_CUBIC
    assert bt((1, 0), (0, 0, 0, 0)) is BranchType.LINE_CONIC
    with pytest.raises(SurfaceError):
        SurfaceEq(F2, (0, 0), (0, 0, 0), (0, 0, 0, 0), (0,) * 5, (0,) * 7)


def test_b3_translation_on_case_5():
    S = nf.build("5", dict(a=0, b=0, c=0, d=0), F2)
    T = apply_substitution(S, Substitution.make(LinearMap2.identity(F2), b3=(0, 0, 0, 1)))
    # a3 b3 + b3^2 = u^3 v^3 + v^6
    assert T.a6 == tuple(x ^ y for x, y in zip(S.a6, (0, 0, 0, 1, 0, 0, 1)))


@settings(max_examples=300)
@given(st.integers(0, 2**32), st.sampled_from([1, 2, 4, 12]))
def test_substitution_matches_evaluation(seed, k):
    ctx = FieldCtx(k)
    rng = random.Random(seed)
    S = random_surface(ctx, rng)
    s = bf.random_map(ctx, rng)
    b1, b2, b3 = ([ctx.random(rng) for _ in range(d + 1)] for d in (1, 2, 3))
    T = apply_substitution(S, Substitution.make(s, b1, b2, b3))
    u, v, x, y = (ctx.random(rng) for _ in range(4))
    ev = lambda f: bf.eval_raw(ctx, f, u, v)
    a, b, c, d = s.m
    su, sv = ctx.mul(a, u) ^ ctx.mul(b, v), ctx.mul(c, u) ^ ctx.mul(d, v)
    x2 = x ^ ev(b2)
    y2 = y ^ ctx.mul(ev(b1), x) ^ ev(b3)
    assert equation_value(T, u, v, x, y) == equation_value(S, su, sv, x2, y2)
    # and back
    t = AutTuple(ctx, b1, b2, b3, s.m)
    ti = inverse(t)
    back = apply_substitution(T, Substitution.make(LinearMap2(ctx, *ti.m), ti.b1, ti.b2, ti.b3))
    assert back == S


@pytest.mark.parametrize("case", nf.CASES)
def test_bertini_is_an_automorphism(case):
    S = nf.build(case, nf.sample_params(case, FieldCtx(4), random.Random(7)), FieldCtx(4))
    beta = bertini(S)
    assert is_automorphism(S, beta)
    assert all(lemma_conditions(S, beta))


def test_bertini_of_case_3():
    S = nf.build("3", dict(a=0, b=0, c=0, d=1, e=3, f=1), F4)
    assert bertini(S).b3 == (0, 1, 1, 0)


def test_singular_examples():
    # case (5) shape with a6 = v^6 only: [0:1] carries a singular point
    S = SurfaceEq(F2, (0, 0), (0, 0, 0), (1, 0, 0, 0), (0,) * 5, (0, 0, 0, 0, 0, 0, 1))
    assert not is_smooth_bruteforce(S)
    # case (1)(a) with a repeated root of the discriminant
    ctx = F4
    rng = random.Random(0)
    found = False
    for _ in range(500):
        p = {n: ctx.random(rng) for n in nf.PARAMS["1a"]}
        if not bf.is_squarefree(discriminant(SurfaceEq(ctx, *nf.coefficient_forms("1a", p)))):
            S = SurfaceEq(ctx, *nf.coefficient_forms("1a", p))
            assert not is_smooth_bruteforce(S)
            found = True
            break
    assert found


@settings(max_examples=60)
@given(st.integers(0, 2**32), st.sampled_from([1, 2]))
def test_root_search_agrees_with_exhaustive_search(seed, k):
    ctx = FieldCtx(k)
    S = random_surface(ctx, random.Random(seed))
    for K in (6, 12):
        assert is_smooth_bruteforce(S, K) == is_smooth_bruteforce(S, K, exhaustive=True)


def test_json_round_trip():
    rng = random.Random(2)
    for k in (1, 4, 30):
        S = random_surface(FieldCtx(k), rng)
        assert SurfaceEq.from_json(S.to_json()) == S

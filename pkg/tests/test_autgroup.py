import random

import pytest
from hypothesis import given, settings, strategies as st

from dp1char2 import autgroup as ag
from dp1char2 import groupid as gid
from dp1char2 import normalform as nf
from dp1char2.autgroup import AutTuple, compose, inverse
from dp1char2.gf2k import FieldCtx
from dp1char2.surface import BranchType, bertini

F2, F4, F16 = FieldCtx(1), FieldCtx(2), FieldCtx(4)


def random_tuple(ctx, rng):
    while True:
        m = tuple(ctx.random(rng) for _ in range(4))
        if ctx.mul(m[0], m[3]) != ctx.mul(m[1], m[2]):
            break
    f = lambda d: tuple(ctx.random(rng) for _ in range(d + 1))
    return AutTuple(ctx, f(1), f(2), f(3), m)


def surface(case, ctx, seed=0, **fixed):
    return nf.build(case, nf.sample_params(case, ctx, random.Random(seed), fixed=fixed), ctx)


# -- composition ---------------------------------------------------------------------


@settings(max_examples=1000)
@given(st.integers(0, 2**32), st.sampled_from([F2, F4, F16]))
def test_composition_is_associative(seed, ctx):
    rng = random.Random(seed)
    a, b, c = (random_tuple(ctx, rng) for _ in range(3))
    assert compose(compose(a, b), c) == compose(a, compose(b, c))


@settings(max_examples=300)
@given(st.integers(0, 2**32), st.sampled_from([F2, F4, F16]))
def test_identity_and_inverse(seed, ctx):
    t = random_tuple(ctx, random.Random(seed))
    e = AutTuple.identity(ctx)
    assert compose(e, t) == t == compose(t, e)
    assert compose(t, inverse(t)) == e == compose(inverse(t), t)
    assert inverse(inverse(t)) == t


@settings(max_examples=300)
@given(st.integers(0, 2**32), st.sampled_from(nf.CASES))
def test_two_membership_tests_agree(seed, case):
    rng = random.Random(seed)
    S = surface(case, F4, seed)
    for t in (random_tuple(F4, rng), bertini(S)):
        assert ag.is_automorphism(S, t) == all(ag.lemma_conditions(S, t))


def test_bertini_is_an_involution():
    S = surface("3", F4)
    b = bertini(S)
    assert compose(b, b) == AutTuple.identity(F4)


def test_scalar_automorphism_of_case_3iii():
    S = nf.build("3", dict(a=0, b=0, c=0, d=1, e=2, f=1), F16)
    for al in F16.roots_of_unity(3):
        t = AutTuple(F16, (0, 0), (0, 0, 0), (0, 0, 0, 0), (al, 0, 0, al))
        assert ag.is_automorphism(S, t)


def test_tuple_json_round_trip():
    rng = random.Random(4)
    for _ in range(20):
        t = random_tuple(F16, rng)
        assert AutTuple.from_json(F16, t.to_json()) == t


# -- the stabilizer H ----------------------------------------------------------------


@pytest.mark.parametrize("bt, ctx, n", [
    (BranchType.LINE_CONIC, F4, 12),
    (BranchType.TWISTED_CUBIC, F4, 12),
    (BranchType.DOUBLE_LINE_LINE, F2, 8),
])
def test_stabilizer_sizes(bt, ctx, n):
    H = list(ag.stabilizer_H(bt, ctx))
    assert len(H) == n
    assert all(ag.h_element_preserves(bt, ctx, h) for h in H)


# -- enumeration against the exhaustive oracle ---------------------------------------------


# cases (3), (4), (5) over GF(4) are part of the acceptance suite
@pytest.mark.parametrize("case, k", [("1a", 1), ("2a", 1), ("4", 1), ("5", 1),
                                     ("1a", 2), ("2a", 2), ("2e", 2)])
def test_solver_matches_oracle(case, k):
    ctx = FieldCtx(k)
    S = nf.build(case, nf.sample_params(case, ctx, random.Random(11)), ctx)
    res = ag.enumerate_aut(S)
    assert sorted(res.elements) == ag.oracle_aut(S)


def test_oracle_limited_to_small_fields():
    with pytest.raises(ag.AutError):
        ag.oracle_aut(surface("5", F16))


# -- group results -------------------------------------------------------------------------


def _axioms(res, rng, n=200):
    G = res.group
    els = res.elements
    for _ in range(n):
        i, j = rng.randrange(G.n), rng.randrange(G.n)
        assert els[G.mul(i, j)] == compose(els[i], els[j])
    b = res.bertini_index
    assert G.mul(b, b) == 0
    assert all(G.mul(b, i) == G.mul(i, b) for i in range(G.n))
    assert sorted(ag.kernel_to_H(res)) == [0, b]


def test_case_2f_i_is_cyclic_of_order_10():
    S = nf.build("2f", dict(a=0, b=1, d=0, f=0, h=0), F4)
    res = ag.saturate(S)
    assert res.saturated and res.order == 10
    assert gid.identify(res.group) == "Z/10"
    _axioms(res, random.Random(0))


def test_case_5iii_has_order_1920():
    S = nf.build("5", dict(a=0, b=0, c=0, d=0), F2)
    res = ag.saturate(S)
    assert res.saturated and res.order == 1920
    Kg, Ig = ag.project_r(res)
    assert res.order == Kg.n * Ig.n
    _axioms(res, random.Random(1), 500)
    assert all(c.ok for c in ag.check_constraints("5", res))


def test_generic_1a_is_bertini_only():
    res = ag.saturate(surface("1a", F16, 3))
    assert res.order == 2
    assert res.to_json()["structure"] == "Z/2"


def test_saturation_chain():
    assert ag.saturation_chain(12) == [12, 24, 48]
    assert ag.saturation_chain(8) == [8, 16, 48]
    assert ag.saturation_chain(5) == [5, 10, 20]
    assert ag.saturation_chain(14) == [14]
    assert ag.saturation_chain(25) == []


def test_default_start_contains_the_sigma_part():
    S = nf.build("3", dict(a=0, b=0, c=0, d=1, e=2, f=1), F4)
    T = ag.default_start(S)
    assert T % ag.definition_degree(S) == 0
    assert len(ag.saturation_chain(T)) == 3


def test_non_normal_form_is_rejected():
    from dp1char2.surface import SurfaceEq

    S = SurfaceEq(F4, (1, 1), (0, 0, 0), (0, 0, 0, 1), (0,) * 5, (1,) * 7)
    with pytest.raises(ValueError):
        ag.enumerate_aut(S)


# -- case (5) scheme -------------------------------------------------------------------------


@pytest.mark.parametrize("a, b, d, gammas", [
    (12, 12, 1, 64),  # a != 0, b^3 != a^6
    (4, 3, 7, 32),  # a != 0, b = a^2
    (0, 6, 9, 64),  # a = 0, b != 0
    (0, 0, 1, 16),  # a = b = 0
])
def test_case5_scheme_counts(a, b, d, gammas):
    count, gimg, K, sat = ag.count_case5_scheme(a, b, d, F16)
    assert (count, gimg) == (128, gammas)
    assert sat


def test_case5_scheme_on_the_cube_root_locus():
    # b = zeta a^2 with zeta a primitive cube root: a^12 + b^6 = 0, and the
    # gamma-image drops to 32 as for b = a^2
    count, gimg, K, sat = ag.count_case5_scheme(1, 2, 1, F4)
    assert (count, gimg, sat) == (128, 32, True)


def test_case5_scheme_out_of_table():
    with pytest.raises(ag.FieldRangeError):
        ag.count_case5_scheme(0, 1, 1, F2)

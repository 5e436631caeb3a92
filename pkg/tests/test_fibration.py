import random

import pytest
from hypothesis import given, settings, strategies as st

from dp1char2 import binform as bf
from dp1char2 import fibration as fb
from dp1char2 import normalform as nf
from dp1char2.binform import P1Point
from dp1char2.fibration import FiberClass
from dp1char2.gf2k import FieldCtx
from dp1char2.surface import discriminant

F4, F16 = FieldCtx(2), FieldCtx(4)


def test_cuspidal_fibers():
    S3 = nf.build("3", dict(a=0, b=0, c=0, d=1, e=2, f=1), F4)
    assert fb.classify_fiber(S3, P1Point(F4, 1, 1)) is FiberClass.CUSPIDAL
    S2 = nf.build("2a", nf.sample_params("2a", F4, random.Random(0)), F4)
    assert fb.classify_fiber(S2, P1Point(F4, 0, 1)) is FiberClass.CUSPIDAL


def test_supersingular_fiber():
    S = nf.build("5", dict(a=0, b=0, c=0, d=0), F4)
    # a1 = 0 everywhere and a3 = u^3 is nonzero at [1:0]
    assert fb.classify_fiber(S, P1Point(F4, 1, 0)) is FiberClass.SMOOTH_SUPERSINGULAR


def test_case_4_survey():
    S = nf.build("4", dict(a=0, b=0, c=0, d=1, e=0), F4)
    rep = fb.fiber_survey(S)
    assert (rep.nodal, rep.cuspidal) == (0, 2)
    assert sorted((p.point.u0, p.point.v0) for p in rep.points) == [(0, 1), (1, 0)]
    assert rep.to_json()["points"][0]["class"] == "cuspidal"


def test_case_2e_depends_on_h():
    rng = random.Random(1)
    seen = set()
    for i in range(10):
        p = nf.sample_params("2e", F16, rng, fixed={"h": 0} if i % 2 else None)
        rep = fb.fiber_survey(nf.build("2e", p, F16))
        assert rep.cuspidal == 1
        assert rep.nodal == (6 if p["h"] else 5)
        seen.add(bool(p["h"]))
    assert seen == {True, False}


def test_case_1a_twelve_nodal():
    p = nf.sample_params("1a", F16, random.Random(2))
    rep = fb.fiber_survey(nf.build("1a", p, F16))
    assert (rep.nodal, rep.cuspidal) == (12, 0)


@settings(max_examples=60)
@given(st.integers(0, 2**32), st.sampled_from(nf.CASES))
def test_counts_agree_with_pointwise_classification(seed, case):
    """Radical-degree counts against classifying each root over a splitting field."""
    S = nf.build(case, nf.sample_params(case, F4, random.Random(seed)), F4)
    rep = fb.fiber_survey(S)
    K = bf.splitting_degree(discriminant(S))
    if K is None:
        return
    assert rep.split and rep.field_k == K
    classes = [fb.classify_fiber(S, p) for p, _ in bf.roots_p1(discriminant(S), FieldCtx(K))]
    assert rep.nodal == classes.count(FiberClass.NODAL)
    assert rep.cuspidal == classes.count(FiberClass.CUSPIDAL)
    assert FiberClass.SMOOTH_ORDINARY not in classes


def test_field_mismatch():
    S = nf.build("4", dict(a=0, b=0, c=0, d=1, e=0), F4)
    with pytest.raises(ValueError):
        fb.fiber_survey(S, K=3)

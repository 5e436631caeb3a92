import itertools

import numpy as np
import pytest
from sympy.combinatorics.named_groups import (
    AbelianGroup,
    AlternatingGroup,
    CyclicGroup,
    DihedralGroup,
    SymmetricGroup,
)
from sympy.combinatorics.group_constructs import DirectProduct

from dp1char2 import groupid as gid


def from_sympy(P):
    """Catalog-independent construction: a sympy permutation group as a FiniteGroup."""
    gens = [tuple(g.array_form) for g in P.generators]
    G = gid.perm_group(gens)
    assert G.n == P.order()
    return G


def matrix_group_mod(gens, p):
    """Group generated by 2x2 integer matrices mod p (built here, not by the catalog)."""
    gens = [tuple(map(tuple, np.array(g) % p)) for g in gens]

    def mul(a, b):
        return tuple(map(tuple, (np.array(a) @ np.array(b)) % p))

    ident = ((1, 0), (0, 1))
    return gid.group_from_generators(gens, mul, ident)[0]


@pytest.mark.parametrize(
    "label, P",
    [
        ("Z/4", CyclicGroup(4)),
        ("Z/6", CyclicGroup(6)),
        ("Z/10", CyclicGroup(10)),
        ("(Z/2)^2", AbelianGroup(2, 2)),
        ("(Z/2)^3", AbelianGroup(2, 2, 2)),
        ("(Z/2)^4", AbelianGroup(2, 2, 2, 2)),
        ("Z/2 x Z/6", AbelianGroup(2, 6)),
        ("S3", SymmetricGroup(3)),
        ("D8", DihedralGroup(4)),
        ("A4", AlternatingGroup(4)),
        ("Z/2 x S3", DirectProduct(CyclicGroup(2), SymmetricGroup(3))),
        ("Z/3 x S3", DirectProduct(CyclicGroup(3), SymmetricGroup(3))),
        ("Z/6 x S3", DirectProduct(CyclicGroup(6), SymmetricGroup(3))),
    ],
)
def test_identify_against_sympy(label, P):
    G = from_sympy(P)
    assert gid.identify(G) == label
    assert G.is_abelian() == P.is_abelian


def test_identify_matrix_groups():
    i = [[0, 2], [1, 0]]
    j = [[1, 1], [1, 2]]
    Q8 = matrix_group_mod([i, j], 3)
    assert gid.identify(Q8) == "Q8"
    SL = matrix_group_mod([[[1, 1], [0, 1]], [[0, 2], [1, 0]]], 3)
    assert SL.n == 24
    assert gid.identify(SL) == "SL2(F3)"


def test_z10_histogram():
    G = gid.catalog_group("Z/10")
    assert gid.order_histogram(G) == {1: 1, 2: 1, 5: 4, 10: 4}
    assert G.is_abelian()


def test_q8_fingerprint():
    G = gid.catalog_group("Q8")
    h = gid.order_histogram(G)
    assert G.n == 8 and h[2] == 1 and h[4] == 6 and len(G.center()) == 2


def test_sl2f3():
    G = gid.catalog_group("SL2(F3)")
    assert G.n == 24 and gid.order_histogram(G)[2] == 1 and len(G.center()) == 2


def test_extraspecial_plus():
    G = gid.catalog_group("2_+^{1+6}")
    assert G.n == 128
    assert len(G.center()) == 2
    assert gid.order_histogram(G)[2] == 2 * (2**5 + 2**2) - 1
    assert G.exponent() == 4
    assert gid.extraspecial_type(G) == "+"


def test_large_catalog_entries():
    for label, n in [("2_+^{1+6} : Z/3", 384), ("2_+^{1+6} : Z/15", 1920),
                     ("(Z/2)^6 : Z/3", 192), ("(Z/2)^6 : Z/15", 960)]:
        G = gid.catalog_group(label)
        assert G.n == n
        assert gid.identify(G) == label
        P = gid.normal_sylow2(G)
        assert P is not None and len(P) == n // (3 if label.endswith("Z/3") else 15)


def test_embeddings():
    A4 = gid.catalog_group("A4")
    assert not gid.is_subgroup_embeddable(gid.catalog_group("Z/4"), A4)
    assert gid.is_subgroup_embeddable(gid.catalog_group("(Z/2)^2"), A4)
    assert gid.is_subgroup_embeddable(gid.catalog_group("Q8"), gid.catalog_group("SL2(F3)"))


def test_unrecognized():
    assert gid.identify(from_sympy(SymmetricGroup(4))) == gid.UNRECOGNIZED


def test_every_catalog_group_identifies_as_itself():
    for label in gid.CATALOG:
        G = gid.catalog_group(label)
        assert G.n == gid.CATALOG_ORDERS[label]
        assert gid.identify(G) == label


def test_audit_rejects_non_groups():
    bad = np.array([[0, 1, 2], [1, 0, 2], [2, 2, 0]])
    with pytest.raises(gid.GroupError):
        gid.FiniteGroup(bad)


def test_quotient_by_center():
    G = gid.catalog_group("2_+^{1+6}")
    Q = gid.quotient(G, G.center())
    assert gid.identify(Q) == "(Z/2)^6"

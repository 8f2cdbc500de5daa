"""Sections of groups and of direct products, and their invariants."""

import pytest

from sbw import sections
from sbw.catalog import catalog_group as cg
from sbw.errors import ConditionViolated, NotNormal, NotSubgroup
from sbw.groups import direct_product, generated_subgroup

SECTION_COUNTS = {
    "C1": 1, "C2": 3, "C3": 3, "C4": 6, "C2xC2": 12, "C5": 3, "C6": 9,
    "S3": 8, "C7": 3, "C8": 10, "C4xC2": 26, "C2xC2xC2": 66, "D8": 24,
    "Q8": 18,
}


@pytest.mark.parametrize("gid", sorted(SECTION_COUNTS))
def test_frozen_section_class_counts(gid):
    G = cg(gid)
    classes = sections.enumerate_sections(G)
    assert len(classes) == SECTION_COUNTS[gid]
    total = sum(cls.orbit_size for cls in classes)
    pairs = 0
    from sbw.groups import subgroup_lattice
    for T in subgroup_lattice(G).all:
        for S in subgroup_lattice(G).all:
            if set(S.elems) <= set(T.elems) and _normal_in(G, S, T):
                pairs += 1
    # orbit sizes sum to the raw count of pairs S normal in T
    assert total == pairs


def _normal_in(G, S, T):
    s = set(S.elems)
    return all(G.mul(G.mul(t, x), G.inv(t)) in s
               for t in T.elems for x in S.elems)


def test_canonical_section_is_conjugation_invariant():
    X = direct_product(cg("S3"), cg("C2"))
    for cls in sections.enumerate_sections(X):
        for g in range(0, X.order, 3):
            T = tuple(sorted(X.mul(X.mul(g, t), X.inv(g)) for t in cls.T))
            S = tuple(sorted(X.mul(X.mul(g, s), X.inv(g)) for s in cls.S))
            assert sections.canonical_section(X, T, S).key == cls.key


def test_section_constructor_rejects_bad_pairs():
    S3 = cg("S3")
    full = S3.full_subgroup()
    with pytest.raises(NotNormal):
        sections.Section(S3, full, S3.subgroup((0, 1)))
    with pytest.raises(NotSubgroup):
        sections.Section(S3, S3.subgroup((0, 1)), full)
    with pytest.raises(NotSubgroup):
        S3.subgroup((0, 1, 2))


def test_class_keys_separate_equal_tables_with_different_splits():
    # C1 x C2 and C2 x C1 share the same multiplication table, so the key
    # has to remember the factor split to keep compose caches apart.
    C1, C2 = cg("C1"), cg("C2")
    a = sections.enumerate_sections(direct_product(C1, C2))[0]
    b = sections.enumerate_sections(direct_product(C2, C1))[0]
    assert a.ambient.digest == b.ambient.digest
    assert a.key != b.key


def test_goursat_round_trip_on_every_subgroup():
    X = direct_product(cg("C4"), cg("C2xC2"))
    from sbw.groups import subgroup_lattice
    for U in subgroup_lattice(X).all:
        q = sections.goursat(X, U)
        back = sections.subgroup_from_goursat(X, q)
        assert set(back.elems) == set(U.elems)


def test_goursat_quintuple_of_the_diagonal():
    C2 = cg("C2")
    X = direct_product(C2, C2)
    diag = X.subgroup((0, 3))
    q = sections.goursat(X, diag)
    assert q.P.order == 2 and q.Q.order == 2
    assert q.K.order == 1 and q.L.order == 1


def test_section_quintuples_satisfy_containments():
    X = direct_product(cg("S3"), cg("S3"))
    for cls in sections.enumerate_sections(X)[:40]:
        T, S = cls.subgroups()
        qT, qS = sections.section_quintuples(sections.Section(X, T, S))
        assert set(qS.P.elems) <= set(qT.P.elems)
        assert set(qS.K.elems) <= set(qT.K.elems)
        rebuilt = sections.section_from_goursat_pair(qT, qS)
        assert rebuilt.classify().key == cls.key


def test_mismatched_quintuple_pairs_report_condition_tags():
    X = direct_product(cg("C4"), cg("C2"))
    classes = sections.enumerate_sections(X)
    quints = []
    for c in classes:
        T, S = c.subgroups()
        quints.append(sections.section_quintuples(sections.Section(X, T, S)))
    tags = set()
    for qT, _ in quints[:12]:
        for _, qS in quints[:12]:
            try:
                sec = sections.section_from_goursat_pair(qT, qS)
            except ConditionViolated as exc:
                tags.add(exc.tag)
            else:
                assert set(sec.S.elems) <= set(sec.T.elems)
    assert tags
    assert tags <= {"S3", "S4", "S5", "S6", "S7"}


def test_opposite_class_is_an_involution_and_swaps_sides():
    X = direct_product(cg("S3"), cg("C2"))
    for cls in sections.enumerate_sections(X):
        op = sections.opposite_class(cls)
        assert sections.opposite_class(op).key == cls.key
        assert sections.middle_left(cls) == sections.middle_right(op)
        assert sections.middle_right(cls) == sections.middle_left(op)


def test_left_and_right_invariants_of_the_q8_d8_section():
    Q8, D8 = cg("Q8"), cg("D8")
    X = direct_product(Q8, D8)
    x, y, a, b = 1, 4, 1, 4
    T = generated_subgroup(X, [X.pair(x, a), X.pair(y, b)])
    S = generated_subgroup(X, [X.pair(x, a)])
    cls = sections.canonical_section(X, T.elems, S.elems)
    p1t, k1t, p1s, k1s = sections.left_invariant(cls)
    q2t, l2t, q2s, l2s = sections.right_invariant(cls)
    assert p1t.order == 8
    assert k1t.elems == generated_subgroup(Q8, [Q8.mul(x, x)]).elems
    assert p1s.elems == generated_subgroup(Q8, [x]).elems
    assert k1s.order == 1
    assert q2t.order == 8
    assert l2t.elems == generated_subgroup(D8, [D8.mul(a, a)]).elems
    assert q2s.elems == generated_subgroup(D8, [a]).elems
    assert l2s.order == 1


def test_covering_classes_have_full_projections_and_trivial_kernels():
    X = direct_product(cg("C4"), cg("C4"))
    n = 0
    for cls in sections.enumerate_sections(X):
        if not sections.is_covering(cls):
            continue
        n += 1
        pT, kT, pS, kS = sections.left_invariant(cls)
        qT, lT, qS, lS = sections.right_invariant(cls)
        assert pT.order == 4 and qT.order == 4
        assert kS.order == 1 and lS.order == 1
    assert n == 14


def test_constrained_sections_find_the_q8_d8_bimodule():
    Q8, D8 = cg("Q8"), cg("D8")
    K = Q8.subgroup((0, 2))
    P = Q8.subgroup((0, 1, 2, 3))
    L = D8.subgroup((0, 2))
    Q = D8.subgroup((0, 1, 2, 3))
    found = sections.constrained_sections(Q8, D8, K, P, L, Q)
    assert found
    for cls in found:
        mk, mp = sections.middle_left(cls)
        assert (mk.elems, mp.elems) == (K.elems, P.elems)
        ml, mq = sections.middle_right(cls)
        assert (ml.elems, mq.elems) == (L.elems, Q.elems)


def test_star_product_size_of_diagonals():
    C2 = cg("C2")
    X = direct_product(C2, C2)
    diag = X.subgroup((0, 3))
    starred = sections.star(diag, diag)
    assert set(starred.elems) == {0, 3}

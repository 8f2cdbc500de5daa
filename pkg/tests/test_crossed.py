"""Conjugation crossed modules, their automorphisms, and linkage witnesses."""

import pytest

from sbw import catalog, crossed, gamma, groups, sections
from sbw.errors import AxiomFailed, NotInPoset

CAT = catalog.default_catalog()


def cg(gid):
    return CAT.by_id(gid).group


def cyclic4_subgroup(G):
    lat = groups.subgroup_lattice(G)
    return next(H for H in lat.all
                if H.order == 4
                and max(G.element_order(x) for x in H.elems) == 4)


def test_from_pair_shapes():
    G = cg("C4")
    K = G.subgroup((0, 2))
    P = G.full_subgroup()
    cm = crossed.from_pair(G, K, P)
    assert cm.a.order == P.order
    assert cm.b.order == G.order // K.order
    # boundary sends p to its K-coset; the kernel is K itself here
    kernel = [x for x in range(cm.a.order) if cm.boundary.images[x] == 0]
    assert len(kernel) == K.order


def test_from_pair_is_cached():
    G = cg("C4")
    K = G.subgroup((0, 2))
    P = G.full_subgroup()
    assert crossed.from_pair(G, K, P) is crossed.from_pair(G, K, P)


def test_from_pair_rejects_noncommuting_pair():
    G = cg("S3")
    A3 = G.subgroup((0, 3, 4))
    with pytest.raises(NotInPoset):
        crossed.from_pair(G, A3, G.full_subgroup())


def test_axioms_reject_nontrivial_identity_action():
    C2 = cg("C2")
    boundary = groups.Hom(C2, C2, (0, 0), check=False)
    flip = (1, 0)
    with pytest.raises(AxiomFailed):
        crossed.CrossedModule(C2, C2, boundary, (flip, flip))


def test_axioms_reject_broken_peiffer_identity():
    # boundary = identity forces the action to be conjugation; the
    # trivial action on a nonabelian A violates the Peiffer identity.
    S3 = cg("S3")
    ident = tuple(range(6))
    boundary = groups.Hom(S3, S3, ident, check=False)
    with pytest.raises(AxiomFailed):
        crossed.CrossedModule(S3, S3, boundary, tuple(ident for _ in range(6)))


def test_fingerprint_fields():
    G = cg("D8")
    cm = crossed.from_pair(G, groups.center(G), cyclic4_subgroup(G))
    assert cm.fingerprint() == (4, 4, (1, 2, 4, 4), (1, 2, 2, 2), 2, (1, 1, 2))


def test_d8_q8_central_pairs_share_a_fingerprint():
    D8, Q8 = cg("D8"), cg("Q8")
    cm_d = crossed.from_pair(D8, groups.center(D8), cyclic4_subgroup(D8))
    cm_q = crossed.from_pair(Q8, groups.center(Q8), cyclic4_subgroup(Q8))
    assert cm_d.fingerprint() == cm_q.fingerprint()


def test_d8_q8_central_pairs_are_linked():
    D8, Q8 = cg("D8"), cg("Q8")
    Zd, Pd = groups.center(D8), cyclic4_subgroup(D8)
    Zq, Pq = groups.center(Q8), cyclic4_subgroup(Q8)
    w = crossed.linked(D8, Zd, Pd, Q8, Zq, Pq)
    assert w is not None
    assert w.morphism.is_iso()
    sec = w.section
    # T is a graph over the K/L-cosets, S the graph of alpha on Q
    pt, kt, lt, qt = sections.subgroup_parts(sec.ambient, sec.T.elems)
    assert pt.elems == D8.full_subgroup().elems
    assert kt.elems == Zd.elems
    assert lt.elems == Zq.elems
    assert qt.elems == Q8.full_subgroup().elems
    ps, ks, ls, qs = sections.subgroup_parts(sec.ambient, sec.S.elems)
    assert ps.elems == Pd.elems
    assert ks.order == 1
    assert ls.order == 1
    assert qs.elems == Pq.elems
    sec.classify()


def test_unlinked_pairs_give_no_witness():
    C2 = cg("C2")
    one = C2.trivial_subgroup()
    full = C2.full_subgroup()
    assert crossed.linked(C2, one, one, C2, full, full) is None


def test_iso_search_prunes_on_fingerprint():
    C2, C3 = cg("C2"), cg("C3")
    cm2 = crossed.from_pair(C2, C2.trivial_subgroup(), C2.full_subgroup())
    cm3 = crossed.from_pair(C3, C3.trivial_subgroup(), C3.full_subgroup())
    assert crossed.iso_search(cm2, cm3) == []


def test_aut_out_on_klein_four():
    # (V4, V4, id) with trivial action: automorphisms are the diagonal
    # copies of Aut(V4) = S3, and inner automorphisms are trivial.
    V4 = cg("C2xC2")
    cm = crossed.from_pair(V4, V4.trivial_subgroup(), V4.full_subgroup())
    ao = crossed.aut_out(cm)
    assert ao.group.order == 6
    assert ao.inn.order == 1
    assert ao.out_group.order == 6
    assert len(ao.out_reps) == 6
    assert len(ao.theta_images) == V4.order


def test_aut_out_is_cached():
    V4 = cg("C2xC2")
    cm = crossed.from_pair(V4, V4.trivial_subgroup(), V4.full_subgroup())
    assert crossed.aut_out(cm) is crossed.aut_out(cm)


def test_theta_images_form_the_inner_subgroup():
    Q8 = cg("Q8")
    cm = crossed.from_pair(Q8, groups.center(Q8), cyclic4_subgroup(Q8))
    ao = crossed.aut_out(cm)
    assert set(ao.theta_images) == set(ao.inn.elems)
    assert ao.group.order % ao.inn.order == 0
    assert ao.out_group.order == ao.group.order // ao.inn.order


def test_theta_realizes_automorphisms_as_sections():
    G = cg("C4")
    one, full = G.trivial_subgroup(), G.full_subgroup()
    cm = crossed.from_pair(G, one, full)
    ao = crossed.aut_out(cm)
    assert ao.group.order == 2
    seen = set()
    for m in ao.auts:
        cls = crossed.theta(G, one, full, m).classify()
        seen.add(cls.key)
        if m.alpha.images == tuple(range(G.order)):
            ident_cls, = gamma.identity_element(G).coeffs
            assert cls == ident_cls
    # distinct automorphisms give distinct classes here
    assert len(seen) == len(ao.auts)


def test_theta_rejects_foreign_morphism():
    G = cg("C4")
    one, full = G.trivial_subgroup(), G.full_subgroup()
    V4 = cg("C2xC2")
    cm_v = crossed.from_pair(V4, V4.trivial_subgroup(), V4.full_subgroup())
    foreign = crossed.aut_out(cm_v).auts[0]
    with pytest.raises(Exception):
        crossed.theta(G, one, full, foreign)

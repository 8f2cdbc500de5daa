"""Covering bases, linkage, matrix shape, reduced pairs, and the seed table.

Every number in the frozen dictionaries below was computed twice: once by
the library and once by a throwaway script over raw subgroup enumerations.
They guard against silent regressions in the canonical-form machinery.
"""

import pytest

from sbw import catalog, classify, crossed, gamma, groups, sections
from sbw.errors import AxiomFailed, NotInPoset

CAT = catalog.default_catalog()

COVERING_DIMS = {
    "C1": 1, "C2": 4, "C3": 7, "C4": 14, "C2xC2": 118, "C5": 13,
    "C6": 28, "S3": 6, "C7": 19, "C8": 44, "C4xC2": 384,
    "C2xC2xC2": 21232, "D8": 61, "Q8": 101,
}

PAIR_COUNTS = {
    "C1": 1, "C2": 4, "C3": 4, "C4": 9, "C2xC2": 25, "C5": 4,
    "C6": 16, "S3": 6, "C7": 4, "C8": 16, "C4xC2": 64,
    "C2xC2xC2": 256, "D8": 23, "Q8": 23,
}

BLOCK_COUNTS = {
    "C1": 1, "C2": 4, "C3": 4, "C4": 9, "C2xC2": 10, "C5": 4,
    "C6": 16, "S3": 6, "C7": 4, "C8": 16, "C4xC2": 32,
    "C2xC2xC2": 20, "D8": 16, "Q8": 13,
}

MATRIX_DIMS = {
    "C2": [1, 1, 1, 1],
    "C3": [1, 2, 2, 2],
    "C4": [1, 1, 1, 1, 2, 2, 2, 2, 2],
    "C2xC2": [1, 6, 6, 6, 9, 9, 9, 18, 18, 36],
    "S3": [1, 1, 1, 1, 1, 1],
    "C6": [1, 1, 1, 1, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2],
    "D8": [1, 1, 1, 2, 2, 2, 2, 2, 2, 4, 4, 6, 6, 8, 9, 9],
    "Q8": [1, 1, 6, 6, 6, 6, 6, 6, 9, 9, 9, 18, 18],
}

# gid -> (covering_dim, essential_dim, simple_count)
ESSENTIAL = {
    "C2": (4, 3, 3),
    "C3": (7, 6, 6),
    "C4": (14, 11, 11),
    "C2xC2": (118, 63, 14),
    "S3": (6, 4, 4),
}

# gid -> (full_dim, predicted_dim, span_rank, essential_dim)
ORACLE = {
    "C2": (12, 9, 9, 3),
    "C3": (15, 9, 9, 6),
    "C4": (69, 58, 58, 11),
    "C2xC2": (513, 450, 450, 63),
    "S3": (88, 84, 84, 4),
}

REDUCED_CENSUS = {
    ("Reduced", "KleP"): 174,
    ("NotReduced", "PltK"): 113,
    ("NotReduced", "PKeqG"): 120,
    ("NotReduced", "NecessaryViolated"): 48,
}


def cg(gid):
    return CAT.by_id(gid).group


def test_covering_dims_match_frozen_census():
    for gid, dim in COVERING_DIMS.items():
        basis = classify.covering_basis(cg(gid))
        assert len(basis.classes) == dim, gid


def test_covering_classes_are_covering_and_canonically_ordered():
    basis = classify.covering_basis(cg("C4"))
    keys = [c.sort_key() for c in basis.classes]
    assert keys == sorted(keys)
    for cls in basis.classes:
        assert sections.is_covering(cls)
        K, P = basis.left_middle[cls]
        L, Q = basis.right_middle[cls]
        assert sections.middle_left(cls)[0].elems == K.elems
        assert sections.middle_left(cls)[1].elems == P.elems
        assert sections.middle_right(cls)[0].elems == L.elems
        assert sections.middle_right(cls)[1].elems == Q.elems


@pytest.mark.parametrize("gid", ["C2", "C3", "C4", "S3"])
def test_covering_products_stay_covering(gid):
    basis = classify.covering_basis(cg(gid))
    assert classify.check_covering_closure(basis) is True


def test_pair_and_block_counts_match_frozen_census():
    for gid in PAIR_COUNTS:
        part = classify.linkage_partition(cg(gid))
        assert len(part.pairs) == PAIR_COUNTS[gid], gid
        assert len(part.blocks) == BLOCK_COUNTS[gid], gid


def test_linkage_blocks_partition_the_pairs():
    part = classify.linkage_partition(cg("D8"))
    seen = []
    for bi, block in enumerate(part.blocks):
        for pair in block:
            assert part.block_of[pair] == bi
            seen.append(classify._pair_key(pair))
    assert sorted(seen) == sorted(classify._pair_key(p) for p in part.pairs)
    assert len(seen) == len(set(seen))


def test_linked_pairs_share_a_block():
    Q8 = cg("Q8")
    part = classify.linkage_partition(Q8)
    for block in part.blocks:
        K0, P0 = block[0]
        for K, P in block[1:]:
            assert crossed.linked(Q8, K0, P0, Q8, K, P) is not None


def test_matrix_decomposition_matches_frozen_dims():
    for gid, dims in MATRIX_DIMS.items():
        rep = classify.matrix_decomposition(cg(gid))
        assert rep.ok
        assert rep.covering_dim == COVERING_DIMS[gid]
        assert sorted(b.dim for b in rep.blocks) == dims, gid
        assert sum(b.dim for b in rep.blocks) == rep.covering_dim
        for b in rep.blocks:
            assert b.dim == b.n * b.n * b.gamma_order
            assert b.covering_count == b.dim


def test_gamma_group_on_klein_four():
    V4 = cg("C2xC2")
    one, full = V4.trivial_subgroup(), V4.full_subgroup()
    gg = classify.gamma_group(V4, one, full)
    assert gg.order == 6
    assert gg.scale == 1
    assert classify.irr_count(gg) == 3
    assert gg.classes[0] == gamma.e_class(V4, one, full)
    for cls in gg.classes:
        assert gg.mul(cls, gg.inverse(cls)) == gg.classes[0]
        elt = gg.element(cls)
        (c, coeff), = elt.coeffs.items()
        assert c == cls and coeff == 1


def test_gamma_group_matches_out_of_the_crossed_module():
    G = cg("D8")
    Z = groups.center(G)
    gg = classify.gamma_group(G, Z, Z)
    ao = crossed.aut_out(crossed.from_pair(G, Z, Z))
    assert gg.order == ao.out_group.order


def test_gamma_group_rejects_noncommuting_pair():
    G = cg("S3")
    A3 = G.subgroup((0, 3, 4))
    with pytest.raises(NotInPoset):
        classify.gamma_group(G, A3, G.full_subgroup())


def test_reduced_verdicts_on_c2():
    C2 = cg("C2")
    one, full = C2.trivial_subgroup(), C2.full_subgroup()
    expected = {
        ((0,), (0,)): ("Reduced", "KleP"),
        ((0,), (0, 1)): ("Reduced", "KleP"),
        ((0, 1), (0,)): ("NotReduced", "PltK"),
        ((0, 1), (0, 1)): ("Reduced", "KleP"),
    }
    for K in (one, full):
        for P in (one, full):
            st = classify.reduced_status(C2, (K, P), CAT)
            assert (st.verdict, st.rule) == expected[(K.elems, P.elems)]


def test_reduced_rule_census_over_the_catalog():
    census = {}
    for entry in CAT.entries:
        part = classify.linkage_partition(entry.group)
        for pair in part.pairs:
            st = classify.reduced_status(entry.group, pair, CAT)
            key = (st.verdict, st.rule)
            census[key] = census.get(key, 0) + 1
    assert census == REDUCED_CENSUS


def test_essential_reports_match_frozen_values():
    for gid, (cov, ess, simple) in ESSENTIAL.items():
        rep = classify.essential_report(cg(gid), CAT)
        assert rep.covering_dim == cov, gid
        assert rep.essential_dim == ess, gid
        assert rep.simple_count == simple, gid
        reduced_dim = sum(b.dim for b in rep.blocks if b.verdict == "Reduced")
        assert reduced_dim == ess
        for b in rep.blocks:
            assert b.verdict in ("Reduced", "NotReduced")


def test_ideal_span_oracle_matches_frozen_values():
    for gid, expected in ORACLE.items():
        rep = classify.ideal_span_oracle(cg(gid), CAT)
        got = (rep.full_dim, rep.predicted_dim, rep.span_rank,
               rep.essential_dim)
        assert got == expected, gid
        assert rep.support_ok and rep.rank_ok and rep.block_sum_ok


def test_ideal_span_oracle_is_gated_by_order():
    with pytest.raises(AxiomFailed):
        classify.ideal_span_oracle(cg("C8"), CAT)


def test_predicted_ideal_contains_every_noncovering_class():
    C3 = cg("C3")
    predicted = set(classify.predicted_ideal_classes(C3, CAT))
    assert len(predicted) == 9
    amb = groups.direct_product(C3, C3)
    for cls in sections.enumerate_sections(amb):
        if not sections.is_covering(cls):
            assert cls in predicted


def test_transport_between_d8_and_q8():
    D8, Q8 = cg("D8"), cg("Q8")
    Zd, Zq = groups.center(D8), groups.center(Q8)
    Pd = next(H for H in groups.subgroup_lattice(D8).all
              if H.order == 4
              and max(D8.element_order(x) for x in H.elems) == 4)
    Pq = next(H for H in groups.subgroup_lattice(Q8).all
              if H.order == 4
              and max(Q8.element_order(x) for x in H.elems) == 4)
    check = classify.transport_check((D8, Zd, Pd), (Q8, Zq, Pq))
    assert check["ok"]
    assert check["bijective"] and check["identity"]
    assert check["multiplicative"] and check["class_transport"]


def test_transport_requires_linked_triples():
    C2 = cg("C2")
    one, full = C2.trivial_subgroup(), C2.full_subgroup()
    assert classify.bimodule_set((C2, one, one), (C2, full, full)) == ()
    with pytest.raises(AxiomFailed):
        classify.transport_check((C2, one, one), (C2, full, full))


def test_seed_table_over_the_full_catalog():
    table = classify.seeds(CAT)
    assert len(table.rows) == 85
    assert table.gids == CAT.ids()
    merged = {}
    for i, row in enumerate(table.rows):
        assert row.class_id == i
        gids = tuple(sorted({e.gid for e in row.entries}))
        for e in row.entries:
            assert e.group.order == row.order
            assert e.irreducibles == row.entries[0].irreducibles
            assert e.gamma_order == row.entries[0].gamma_order
        if len(gids) > 1:
            merged[gids] = merged.get(gids, 0) + 1
            assert len(row.witnesses) == len(row.entries) - 1
        else:
            assert row.witnesses == ()
    assert merged == {
        ("C2xC2", "C4"): 1,
        ("C2xC2xC2", "C4xC2", "D8", "Q8"): 1,
        ("C2xC2xC2", "C4xC2"): 2,
        ("C4xC2", "C8"): 2,
        ("D8", "Q8"): 2,
    }


def test_seed_table_on_a_restricted_catalog():
    table = classify.seeds(CAT.restrict(2))
    assert len(table.rows) == 4
    per_gid = {}
    for row in table.rows:
        assert len({e.gid for e in row.entries}) == 1
        gid = row.entries[0].gid
        per_gid[gid] = per_gid.get(gid, 0) + 1
    assert per_gid == {"C1": 1, "C2": 3}

"""Covering bases, linkage, Gamma groups, and the seed table.

The covering classes of G x G span a subalgebra whose structure is a direct
sum of matrix rings over the group algebras of the Gamma groups; everything
in this module either builds that decomposition or checks it.  All arithmetic
is exact (integers and fractions.Fraction), and structural identities are
verified rather than assumed: a failed identity raises a typed error instead
of producing a report.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import crossed, gamma, posets, sections
from .errors import (AxiomFailed, DecompositionMismatch, IncompleteCatalog,
                     NotInPoset)
from .groups import (Group, Subgroup, conjugacy_classes, direct_product,
                     intersection, normal_subgroups, product_set)


# -- exact linear algebra over sparse rational vectors ------------------------

def rational_rank(vectors) -> int:
    """Rank over the rationals of sparse vectors given as {key: coeff} dicts.

    Keys must be orderable; coefficients may be ints or Fractions.  The
    pivot rows are kept fully inter-reduced, so one pass per vector
    suffices and pivot keys never collide.
    """
    pivots = {}
    for vec in vectors:
        v = {k: Fraction(c) for k, c in vec.items() if c}
        # pivot rows contain no other pivot keys, so a single sweep over
        # the pivot keys present in v eliminates all of them
        for key in sorted(set(v) & set(pivots)):
            c = v.pop(key, None)
            if not c:
                continue
            for k2, val in pivots[key].items():
                if k2 == key:
                    continue
                nv = v.get(k2, 0) - c * val
                if nv:
                    v[k2] = nv
                else:
                    v.pop(k2, None)
        if not v:
            continue
        key = min(v)
        inv = 1 / v[key]
        row = {k: c * inv for k, c in v.items()}
        for prow in pivots.values():
            c = prow.get(key)
            if c:
                for k2, val in row.items():
                    nv = prow.get(k2, 0) - c * val
                    if nv:
                        prow[k2] = nv
                    else:
                        prow.pop(k2, None)
        pivots[key] = row
    return len(pivots)


def in_span(vec, vectors) -> bool:
    """Whether vec lies in the rational span of the given sparse vectors."""
    basis = list(vectors)
    return rational_rank(basis) == rational_rank(basis + [dict(vec)])


# -- covering basis -----------------------------------------------------------

@dataclass
class CoveringBasis:
    """Classes [T, S] of G x G with p1(T) = p2(T) = G and k1(S) = k2(S) = 1.

    These span the subalgebra where neither side of the factorization
    through a proper quotient can shrink the group.
    """
    group: Group
    classes: tuple
    left_middle: dict     # class -> (K, P) with K = k1(T), P = p1(S)
    right_middle: dict    # class -> (L, Q) with L = k2(T), Q = p2(S)


def covering_basis(G: Group) -> CoveringBasis:
    cached = getattr(G, "_covering_basis", None)
    if cached is not None:
        return cached
    pairs = posets.normal_commuting_pairs(G)
    classes = []
    lm, rm = {}, {}
    for (K, P) in pairs:
        for (L, Q) in pairs:
            # eta_T : G/L -> G/K and S = graph of an iso Q -> P force these.
            if K.order != L.order or P.order != Q.order:
                continue
            for cls in sections.constrained_sections(G, G, K, P, L, Q):
                classes.append(cls)
                lm[cls] = (K, P)
                rm[cls] = (L, Q)
    classes.sort(key=lambda c: c.sort_key())
    basis = CoveringBasis(group=G, classes=tuple(classes),
                          left_middle=lm, right_middle=rm)
    for cls in classes:
        if not sections.is_covering(cls):
            raise AxiomFailed("constrained enumeration produced a "
                              "non-covering class")
    G._covering_basis = basis
    return basis


def check_covering_closure(basis: CoveringBasis, limit: Optional[int] = None):
    """Products of covering classes are supported on covering classes.

    With `limit`, only the first `limit` classes (in canonical order) enter
    the product grid; None means exhaustive.
    """
    classes = basis.classes if limit is None else basis.classes[:limit]
    for a in classes:
        for b in classes:
            for c in gamma.compose_classes(a, b):
                if not sections.is_covering(c):
                    raise AxiomFailed(
                        "covering product left the covering span")
    return True


# -- linkage partition of the pair poset --------------------------------------

@dataclass
class LinkagePartition:
    group: Group
    pairs: tuple          # all (K, P) in canonical order
    blocks: tuple         # tuple of tuples of pairs, each sorted
    block_of: dict        # pair -> block index
    leq: tuple            # induced order between blocks, as a boolean matrix


def _pair_key(pair) -> tuple:
    return (pair[0].elems, pair[1].elems)


def linkage_partition(G: Group) -> LinkagePartition:
    cached = getattr(G, "_linkage_partition", None)
    if cached is not None:
        return cached
    pairs = posets.normal_commuting_pairs(G)
    buckets = {}
    for p in pairs:
        fp = crossed.from_pair(G, p[0], p[1]).fingerprint()
        buckets.setdefault(fp, []).append(p)
    groups = []
    for bucket in buckets.values():
        components = []
        for p in bucket:
            for comp in components:
                rep = comp[0]
                if crossed.linked(G, rep[0], rep[1], G, p[0], p[1]):
                    comp.append(p)
                    break
            else:
                components.append([p])
        groups.extend(components)
    for comp in groups:
        comp.sort(key=_pair_key)
    groups.sort(key=lambda comp: _pair_key(comp[0]))
    blocks = tuple(tuple(comp) for comp in groups)
    block_of = {p: i for i, comp in enumerate(blocks) for p in comp}
    n = len(blocks)
    leq = [[False] * n for _ in range(n)]
    for i, bi in enumerate(blocks):
        for j, bj in enumerate(blocks):
            leq[i][j] = any(posets.pair_leq(x, y) for x in bi for y in bj)
    for i in range(n):
        for j in range(n):
            if i != j and leq[i][j] and leq[j][i]:
                raise AxiomFailed("induced order between linkage classes "
                                  "is not antisymmetric")
            if leq[i][j]:
                for k in range(n):
                    if leq[j][k] and not leq[i][k]:
                        raise AxiomFailed("induced order between linkage "
                                          "classes is not transitive")
    part = LinkagePartition(group=G, pairs=pairs, blocks=blocks,
                            block_of=block_of,
                            leq=tuple(tuple(row) for row in leq))
    G._linkage_partition = part
    return part


# -- the groups Gamma_(G,K,P) -------------------------------------------------

@dataclass
class GammaGroup:
    """Classes with both invariants (G, K, P, 1), under normalized product.

    x * y is the unique class in (1/|G:P|) [x][y]; the identity is the class
    of (Delta_K(G), Delta(P)) and sits at table index 0.
    """
    G: Group
    K: Subgroup
    P: Subgroup
    classes: tuple        # classes[0] is the identity
    index: dict           # class -> position
    group: Group          # multiplication table as a validated group
    scale: int            # |G:P|, the normalization of the product

    @property
    def order(self) -> int:
        return len(self.classes)

    def element(self, cls, coeff=1) -> gamma.GammaElement:
        """The normalized algebra element (coeff/|G:P|) [cls]."""
        return gamma.basis_element(self.G, self.G, cls,
                                   Fraction(coeff, self.scale))

    def mul(self, a, b):
        i = self.group.mul(self.index[a], self.index[b])
        return self.classes[i]

    def inverse(self, a):
        return self.classes[self.group.inv(self.index[a])]


def gamma_group(G: Group, K: Subgroup, P: Subgroup) -> GammaGroup:
    cache = getattr(G, "_gamma_cache", None)
    if cache is None:
        cache = G._gamma_cache = {}
    key = (K.elems, P.elems)
    if key in cache:
        return cache[key]
    if not crossed.in_poset(G, K, P):
        raise NotInPoset("gamma_group needs normal K, P with [K, P] = 1")
    found = sections.constrained_sections(G, G, K, P, K, P)
    e = gamma.e_class(G, K, P)
    if e not in found:
        raise AxiomFailed("identity class missing from its own Gamma set")
    classes = (e,) + tuple(c for c in found if c != e)
    index = {c: i for i, c in enumerate(classes)}
    scale = G.order // P.order
    n = len(classes)
    table = [[0] * n for _ in range(n)]
    for i, a in enumerate(classes):
        for j, b in enumerate(classes):
            prod = gamma.compose_classes(a, b)
            if len(prod) != 1:
                raise AxiomFailed("Gamma product is not a single class")
            (c, mult), = prod.items()
            if mult != scale or c not in index:
                raise AxiomFailed("Gamma product has the wrong multiplicity "
                                  "or left the class set")
            table[i][j] = index[c]
    group = Group(table, name=f"Gamma({G.name},{len(K.elems)},{len(P.elems)})")
    for i, a in enumerate(classes):
        if group.inv(i) != index[sections.opposite_class(a)]:
            raise AxiomFailed("opposite class is not the group inverse")
    out = crossed.aut_out(crossed.from_pair(G, K, P)).out_group
    if out.order != n:
        raise AxiomFailed(
            f"Gamma order {n} disagrees with Out order {out.order}")
    gg = GammaGroup(G=G, K=K, P=P, classes=classes, index=index,
                    group=group, scale=scale)
    cache[key] = gg
    return gg


def irr_count(gg: GammaGroup) -> int:
    """Number of irreducibles over a splitting field of characteristic 0."""
    return len(conjugacy_classes(gg.group))


# -- bimodule sets between linked triples -------------------------------------

def bimodule_set(tripleG, tripleH) -> tuple:
    """Classes of G x H with invariants l = (G,K,P,1), r = (H,L,Q,1).

    Empty when the triples are not linked.
    """
    G, K, P = tripleG
    H, L, Q = tripleH
    return sections.constrained_sections(G, H, K, P, L, Q)


def bimodule_report(tripleG, tripleH) -> dict:
    """Check that the two Gamma groups act on the bimodule set regularly.

    Left and right actions are single-class with the expected multiplicity,
    transitive, free, and commute with each other.
    """
    G, K, P = tripleG
    H, L, Q = tripleH
    bset = bimodule_set(tripleG, tripleH)
    gg = gamma_group(G, K, P)
    gh = gamma_group(H, L, Q)
    report = {
        "size": len(bset),
        "left_order": gg.order,
        "right_order": gh.order,
        "sizes_match": len(bset) == gg.order == gh.order,
    }
    if not bset:
        report["empty"] = True
        return report
    bset_set = set(bset)

    def act(x, b, scale, flip):
        prod = (gamma.compose_classes(b, x) if flip
                else gamma.compose_classes(x, b))
        if len(prod) != 1:
            raise AxiomFailed("bimodule action is not single-class")
        (c, mult), = prod.items()
        if mult != scale or c not in bset_set:
            raise AxiomFailed("bimodule action left the set or has the "
                              "wrong multiplicity")
        return c

    left = {x: tuple(act(x, b, gg.scale, False) for b in bset)
            for x in gg.classes}
    right = {y: tuple(act(y, b, gh.scale, True) for b in bset)
             for y in gh.classes}
    report["left_identity"] = left[gg.classes[0]] == bset
    report["right_identity"] = right[gh.classes[0]] == bset
    report["left_transitive"] = len(
        {img[0] for img in left.values()}) == len(bset)
    report["left_free"] = all(
        all(img[i] != bset[i] for i in range(len(bset)))
        for x, img in left.items() if x != gg.classes[0])
    report["right_transitive"] = len(
        {img[0] for img in right.values()}) == len(bset)
    report["right_free"] = all(
        all(img[i] != bset[i] for i in range(len(bset)))
        for y, img in right.items() if y != gh.classes[0])
    commute = True
    for x in gg.classes:
        for y in gh.classes:
            for i, b in enumerate(bset):
                xb = left[x][i]
                by = right[y][i]
                if act(y, xb, gh.scale, True) != act(x, by, gg.scale, False):
                    commute = False
    report["actions_commute"] = commute
    report["ok"] = all(report.get(k, True) for k in (
        "sizes_match", "left_identity", "right_identity", "left_transitive",
        "left_free", "right_transitive", "right_free", "actions_commute"))
    return report


# -- matrix shape of the covering algebra -------------------------------------

@dataclass
class BlockReport:
    members: tuple
    n: int
    gamma_order: int
    irreducibles: int
    dim: int              # n^2 * gamma_order
    covering_count: int   # covering classes carrying this block


@dataclass
class MatrixReport:
    group: Group
    covering_dim: int
    blocks: tuple
    ok: bool = True


def _f_elements(G: Group):
    cache = getattr(G, "_f_cache", None)
    if cache is None:
        cache = G._f_cache = {}

    def get(pair):
        key = _pair_key(pair)
        if key not in cache:
            cache[key] = posets.f_idempotent(G, pair)
        return cache[key]
    return get


def matrix_decomposition(G: Group) -> MatrixReport:
    """Verify dim E^c = sum over linkage classes of n^2 |Gamma| blockwise.

    Checks, for every linkage class: the per-cell dimensions |Gamma|, the
    multiplicativity of the diagonal cells against the Gamma table, and the
    invertibility of the projection from the l0-supported span onto the
    two-sided block.  Raises DecompositionMismatch with context on failure.
    """
    basis = covering_basis(G)
    part = linkage_partition(G)
    f_of = _f_elements(G)
    by_block = {}
    for cls in basis.classes:
        bl = part.block_of[basis.left_middle[cls]]
        br = part.block_of[basis.right_middle[cls]]
        if bl != br:
            raise DecompositionMismatch(
                "covering class has unlinked left and right middles")
        by_block.setdefault(bl, []).append(cls)
    cindex = {c: i for i, c in enumerate(basis.classes)}

    def as_vector(elt):
        return {cindex[c]: coeff for c, coeff in elt.coeffs.items()}

    blocks = []
    total = 0
    for bi, members in enumerate(part.blocks):
        gammas = [gamma_group(G, K, P) for (K, P) in members]
        orders = {gg.order for gg in gammas}
        if len(orders) != 1:
            raise DecompositionMismatch(
                "linked pairs with different Gamma orders")
        gsize = orders.pop()
        n = len(members)
        supported = by_block.get(bi, [])
        if len(supported) != n * n * gsize:
            raise DecompositionMismatch(
                f"block {members[0]}: {len(supported)} covering classes, "
                f"expected n^2 |Gamma| = {n * n * gsize}")
        fs = [f_of(p) for p in members]
        f_block = fs[0]
        for f in fs[1:]:
            f_block = f_block + f
        # cell dimensions: span of f_i b f_j over all covering b is |Gamma|,
        # and the bimodule classes already realize that rank.
        for i in range(n):
            for j in range(n):
                bset = bimodule_set((G,) + members[i], (G,) + members[j])
                if len(bset) != gsize:
                    raise DecompositionMismatch(
                        f"bimodule set size {len(bset)} != |Gamma| {gsize}")
                vecs = []
                for b in bset:
                    img = gamma.compose(gamma.compose(
                        fs[i], gamma.basis_element(G, G, b)), fs[j])
                    vecs.append(as_vector(img))
                if rational_rank(vecs) != gsize:
                    raise DecompositionMismatch(
                        f"cell ({i},{j}) of block {members[0]} has deficient "
                        "rank")
                extra = [as_vector(gamma.compose(gamma.compose(
                    fs[i], gamma.basis_element(G, G, b)), fs[j]))
                    for b in supported]
                if rational_rank(vecs + extra) != gsize:
                    raise DecompositionMismatch(
                        f"cell ({i},{j}) of block {members[0]} exceeds "
                        "|Gamma| dimensions")
        # diagonal cells are algebra maps: f_i x f_i . f_i y f_i = f_i xy f_i
        for i in range(n):
            gg = gammas[i]
            fi = fs[i]
            images = {x: gamma.compose(gamma.compose(fi, gg.element(x)), fi)
                      for x in gg.classes}
            for x in gg.classes:
                for y in gg.classes:
                    lhs = gamma.compose(images[x], images[y])
                    rhs = images[gg.mul(x, y)]
                    if lhs != rhs:
                        raise DecompositionMismatch(
                            "diagonal cell map is not multiplicative at "
                            f"block {members[0]}")
        # projection b -> b f_block is invertible on the supported span
        proj = [as_vector(gamma.compose(
            gamma.basis_element(G, G, b), f_block)) for b in supported]
        if rational_rank(proj) != len(supported):
            raise DecompositionMismatch(
                f"projection onto block {members[0]} is singular")
        blocks.append(BlockReport(
            members=members, n=n, gamma_order=gsize,
            irreducibles=irr_count(gammas[0]),
            dim=n * n * gsize, covering_count=len(supported)))
        total += n * n * gsize
    if total != len(basis.classes):
        raise DecompositionMismatch(
            f"dim E^c = {len(basis.classes)} but block sum is {total}")
    return MatrixReport(group=G, covering_dim=len(basis.classes),
                        blocks=tuple(blocks))


# -- reduced pairs ------------------------------------------------------------

@dataclass(frozen=True)
class ReducedStatus:
    pair: tuple
    verdict: str            # Reduced | NotReduced | Undetermined
    rule: str               # KleP | PltK | PKeqG | NecessaryViolated |
                            # SmallerLinked | Exhausted
    witness: Optional[tuple] = None


def _catalog_groups(catalog):
    """Normalize a catalog argument to a list of (gid, Group)."""
    if catalog is None:
        from .catalog import default_catalog
        catalog = default_catalog()
    entries = getattr(catalog, "entries", catalog)
    out = []
    for item in entries:
        if isinstance(item, Group):
            out.append((item.name, item))
        elif isinstance(item, tuple):
            out.append(item)
        else:
            out.append((item.gid, item.group))
    out.sort(key=lambda t: (t[1].order, t[0]))
    return out


def reduced_status(G: Group, pair, catalog=None) -> ReducedStatus:
    """Decide whether a pair survives in the essential quotient.

    Rules fire in a fixed order; the catalog is consulted last, searching
    for a linked pair in a strictly smaller group.  A pair surviving every
    rule is Undetermined, never assumed reduced.
    """
    K, P = pair
    if K.elem_set <= P.elem_set:
        return ReducedStatus(pair=pair, verdict="Reduced", rule="KleP")
    if P.elem_set < K.elem_set:
        return ReducedStatus(pair=pair, verdict="NotReduced", rule="PltK")
    if product_set(K, P).order == G.order:
        return ReducedStatus(pair=pair, verdict="NotReduced", rule="PKeqG")
    for N in normal_subgroups(G):
        if 1 < N.order and N.elem_set <= K.elem_set \
                and intersection(P, N).order == 1:
            return ReducedStatus(pair=pair, verdict="NotReduced",
                                 rule="NecessaryViolated")
    groups = _catalog_groups(catalog)
    fp = crossed.from_pair(G, K, P).fingerprint()
    for gid, H in groups:
        if H.order >= G.order:
            continue
        for (L, Q) in posets.normal_commuting_pairs(H):
            if crossed.from_pair(H, L, Q).fingerprint() != fp:
                continue
            if crossed.linked(G, K, P, H, L, Q) is not None:
                return ReducedStatus(
                    pair=pair, verdict="NotReduced", rule="SmallerLinked",
                    witness=(gid, (L.elems, Q.elems)))
    present = {H.order for _, H in groups if H.order < G.order}
    missing = [m for m in range(1, G.order) if m not in present]
    if missing:
        raise IncompleteCatalog(
            f"no catalog group of order {missing[0]} while deciding "
            f"a pair in {G.name}")
    return ReducedStatus(pair=pair, verdict="Undetermined", rule="Exhausted")


# -- essential reports --------------------------------------------------------

@dataclass
class EssentialBlock:
    members: tuple
    n: int
    gamma_order: int
    irreducibles: int
    dim: int
    verdict: str
    rule: str


@dataclass
class EssentialReport:
    group: Group
    statuses: dict
    partition: LinkagePartition
    covering_dim: int
    blocks: tuple
    essential_dim: object     # int, or (lo, hi) with Undetermined blocks
    simple_count: object
    notes: str


_READING_NOTE = (
    "factorizable classes are predicted as those where either projection "
    "invariant degenerates (p1(T) != G or k1(S) != 1, and symmetrically on "
    "the right); the brute-force span oracle adjudicates this reading")


def essential_report(G: Group, catalog=None) -> EssentialReport:
    groups = _catalog_groups(catalog)
    cache = getattr(G, "_essential_cache", None)
    if cache is None:
        cache = G._essential_cache = {}
    key = tuple((gid, H.digest) for gid, H in groups)
    if key in cache:
        return cache[key]
    basis = covering_basis(G)
    part = linkage_partition(G)
    statuses = {pair: reduced_status(G, pair, groups)
                for pair in part.pairs}
    blocks = []
    lo = hi = 0
    s_lo = s_hi = 0
    for members in part.blocks:
        verdicts = {statuses[p].verdict for p in members}
        if "Reduced" in verdicts and "NotReduced" in verdicts:
            raise AxiomFailed(
                f"linkage class {members[0]} mixes Reduced and NotReduced")
        if "Reduced" in verdicts:
            verdict = "Reduced"
        elif "NotReduced" in verdicts:
            verdict = "NotReduced"
        else:
            verdict = "Undetermined"
        rule = next(statuses[p].rule for p in members
                    if statuses[p].verdict == verdict)
        gg = gamma_group(G, members[0][0], members[0][1])
        n = len(members)
        dim = n * n * gg.order
        irr = irr_count(gg)
        blocks.append(EssentialBlock(
            members=members, n=n, gamma_order=gg.order, irreducibles=irr,
            dim=dim, verdict=verdict, rule=rule))
        if verdict == "Reduced":
            lo += dim
            hi += dim
            s_lo += irr
            s_hi += irr
        elif verdict == "Undetermined":
            hi += dim
            s_hi += irr
    report = EssentialReport(
        group=G, statuses=statuses, partition=part,
        covering_dim=len(basis.classes), blocks=tuple(blocks),
        essential_dim=lo if lo == hi else (lo, hi),
        simple_count=s_lo if s_lo == s_hi else (s_lo, s_hi),
        notes=_READING_NOTE)
    cache[key] = report
    return report


def _predicted_from_report(report: EssentialReport) -> tuple:
    verdict_of = {}
    for block in report.blocks:
        if block.verdict == "Undetermined":
            raise AxiomFailed(
                "cannot predict the ideal with Undetermined classes")
        for p in block.members:
            verdict_of[p] = block.verdict
    G = report.group
    amb = direct_product(G, G)
    predicted = []
    for cls in sections.enumerate_sections(amb):
        if not sections.is_covering(cls):
            predicted.append(cls)
        elif verdict_of[sections.middle_left(cls)] == "NotReduced":
            predicted.append(cls)
    return tuple(predicted)


def predicted_ideal_classes(G: Group, catalog=None) -> tuple:
    """Classes of G x G predicted to span the ideal of factorizable maps.

    A class is predicted in the ideal when it is not covering, or when it is
    covering but its middle pair lies in a non-reduced linkage class.
    Requires every linkage class to have a determined status.
    """
    return _predicted_from_report(essential_report(G, catalog))


@dataclass
class IdealOracleReport:
    group: Group
    full_dim: int
    predicted_dim: int
    span_rank: int
    essential_dim: int
    support_ok: bool
    rank_ok: bool
    block_sum_ok: bool


def ideal_span_oracle(G: Group, catalog=None,
                      allow_large: bool = False) -> IdealOracleReport:
    """Brute-force span of every composition through a smaller group.

    Row-reduces, over the rationals, the span of a . b for a in Gamma(G,H),
    b in Gamma(H,G), H running over all strictly smaller catalog groups, and
    compares it with the predicted coordinate subspace.  Feasible for
    |G| <= 6; larger orders need allow_large=True.
    """
    if G.order > 6 and not allow_large:
        raise AxiomFailed("ideal span oracle is gated to |G| <= 6; "
                          "pass allow_large=True to override")
    amb = direct_product(G, G)
    all_classes = sections.enumerate_sections(amb)
    cindex = {c: i for i, c in enumerate(all_classes)}
    report_src = essential_report(G, catalog)
    predicted = set(_predicted_from_report(report_src))
    vectors = []
    support = set()
    for gid, H in _catalog_groups(catalog):
        if H.order >= G.order:
            continue
        left = sections.enumerate_sections(direct_product(G, H))
        right = sections.enumerate_sections(direct_product(H, G))
        for a in left:
            for b in right:
                prod = gamma.compose_classes(a, b)
                if prod:
                    support.update(prod)
                    vectors.append(
                        {cindex[c]: m for c, m in prod.items()})
    rank = rational_rank(vectors)
    report = IdealOracleReport(
        group=G,
        full_dim=len(all_classes),
        predicted_dim=len(predicted),
        span_rank=rank,
        essential_dim=len(all_classes) - rank,
        support_ok=support <= predicted,
        rank_ok=rank == len(predicted),
        block_sum_ok=len(all_classes) - rank == report_src.essential_dim,
    )
    if not (report.support_ok and report.rank_ok and report.block_sum_ok):
        raise AxiomFailed(
            f"ideal span disagrees with prediction on {G.name}: "
            f"support_ok={report.support_ok} rank={rank} "
            f"predicted={len(predicted)}")
    return report


# -- seed table ---------------------------------------------------------------

@dataclass
class SeedEntry:
    gid: str
    group: Group
    rep: tuple            # representative (K, P)
    members: tuple        # the full linkage class in its group
    gamma_order: int
    irreducibles: int


@dataclass
class SeedRow:
    class_id: int
    order: int
    entries: tuple        # SeedEntry per participating group
    witnesses: tuple      # (gid_a, rep_a, gid_b, rep_b) merge edges


@dataclass
class SeedTable:
    rows: tuple
    gids: tuple
    notes: str


def transport_check(tripleG, tripleH) -> dict:
    """Conjugation by the least bimodule class maps one Gamma onto the other.

    phi sends a class u to the unique class supported in [gamma][u][gamma^op];
    it must fix identities, be bijective and multiplicative, and carry
    conjugacy classes onto conjugacy classes.
    """
    G, K, P = tripleG
    H, L, Q = tripleH
    bset = bimodule_set(tripleG, tripleH)
    if not bset:
        raise AxiomFailed("transport requires linked triples")
    wit = bset[0]
    wit_op = sections.opposite_class(wit)
    gg = gamma_group(G, K, P)
    gh = gamma_group(H, L, Q)
    phi = {}
    for u in gh.classes:
        step = gamma.compose_classes(wit, u)
        if len(step) != 1:
            raise AxiomFailed("transport step is not single-class")
        (mid, _), = step.items()
        step2 = gamma.compose_classes(mid, wit_op)
        if len(step2) != 1:
            raise AxiomFailed("transport step is not single-class")
        (img, _), = step2.items()
        phi[u] = img
    ok = {
        "bijective": len(set(phi.values())) == gh.order == gg.order,
        "identity": phi[gh.classes[0]] == gg.classes[0],
        "multiplicative": all(
            phi[gh.mul(u, v)] == gg.mul(phi[u], phi[v])
            for u in gh.classes for v in gh.classes),
    }
    h_classes = conjugacy_classes(gh.group)
    g_classes = conjugacy_classes(gg.group)
    images = set()
    for cc in h_classes:
        img = frozenset(gg.index[phi[gh.classes[i]]] for i in cc)
        images.add(img)
    ok["class_transport"] = images == {frozenset(c) for c in g_classes}
    ok["witness"] = wit
    ok["map"] = phi
    ok["ok"] = all(v for k, v in ok.items()
                   if k not in ("witness", "map"))
    return ok


def seeds(catalog=None) -> SeedTable:
    """One row per reduced linkage class, merged across groups when linked.

    Rows for groups of equal order merge when their representative triples
    are linked; each merge records its witness edge, and the transported
    conjugacy classes must agree on both sides.
    """
    groups = _catalog_groups(catalog)
    candidates = []
    for gid, G in groups:
        report = essential_report(G, catalog)
        for block in report.blocks:
            if block.verdict != "Reduced":
                continue
            rep = block.members[0]
            gg = gamma_group(G, rep[0], rep[1])
            candidates.append(SeedEntry(
                gid=gid, group=G, rep=rep, members=block.members,
                gamma_order=gg.order, irreducibles=block.irreducibles))
    parent = list(range(len(candidates)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    witnesses = {}
    for i, a in enumerate(candidates):
        fp_a = crossed.from_pair(a.group, a.rep[0], a.rep[1]).fingerprint()
        for j in range(i):
            b = candidates[j]
            if b.group.order != a.group.order or b.gid == a.gid:
                continue
            if find(i) == find(j):
                continue
            fp_b = crossed.from_pair(
                b.group, b.rep[0], b.rep[1]).fingerprint()
            if fp_a != fp_b:
                continue
            if crossed.linked(a.group, a.rep[0], a.rep[1],
                              b.group, b.rep[0], b.rep[1]) is None:
                continue
            check = transport_check((a.group,) + a.rep, (b.group,) + b.rep)
            if not check["ok"]:
                raise AxiomFailed(
                    f"transport between {a.gid} and {b.gid} seeds failed")
            if a.gamma_order != b.gamma_order \
                    or a.irreducibles != b.irreducibles:
                raise AxiomFailed(
                    "merged seed rows disagree on Gamma data")
            ri, rj = find(i), find(j)
            parent[max(ri, rj)] = min(ri, rj)
            witnesses.setdefault(min(ri, rj), []).append(
                (a.gid, _pair_key(a.rep), b.gid, _pair_key(b.rep)))
    grouped = {}
    for i, entry in enumerate(candidates):
        grouped.setdefault(find(i), []).append(entry)
    rows = []
    for root, entries in grouped.items():
        entries.sort(key=lambda e: (e.gid, _pair_key(e.rep)))
        rows.append((entries[0].group.order, entries,
                     tuple(witnesses.get(root, ()))))
    rows.sort(key=lambda r: (r[0], r[1][0].gid, _pair_key(r[1][0].rep)))
    table = tuple(
        SeedRow(class_id=i, order=order, entries=tuple(entries),
                witnesses=wits)
        for i, (order, entries, wits) in enumerate(rows))
    return SeedTable(
        rows=table,
        gids=tuple(gid for gid, _ in groups),
        notes="irreducible labels transported along the least bimodule "
              "class; the labeling is canonical up to an inner twist")

"""Sections of finite groups and of direct products.

A section of X is a pair (T, S) of subgroups with S normal in T.  For a
product X = G x H the module provides both directions of the Goursat
correspondence for sections, the relational star product, opposites, and
enumeration of conjugacy classes of sections, which index the basis of
the section Burnside module of G x H.

Subgroups of G x H are stored inside the interned product group from
``groups.direct_product``, with (g, h) at index g*|H| + h.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import (
    ConditionViolated,
    MiddleMismatch,
    NotAProduct,
    NotIso,
    NotNormal,
    NotSubgroup,
)
from .groups import (
    Group,
    Hom,
    Subgroup,
    coset_structure,
    direct_product,
    is_normal_in,
    isomorphisms,
    subgroup_lattice,
)
from . import crossed


class SectionClass:
    """A conjugacy class of sections, named by its least (T, S) pair."""

    __slots__ = ("ambient", "T", "S", "orbit_size", "key")

    def __init__(self, ambient: Group, T: tuple, S: tuple, orbit_size: int):
        self.ambient = ambient
        self.T = T
        self.S = S
        self.orbit_size = orbit_size
        # Products with equal tables share a digest (C1 x C2 vs C2 x C1),
        # so the key must record the factor split as well.
        f = ambient.factors
        split = None if f is None else (f[0].digest, f[1].digest)
        self.key = (ambient.digest, split, self.T, self.S)

    def sort_key(self):
        return (len(self.T), self.T, len(self.S), self.S)

    def subgroups(self) -> tuple:
        return (Subgroup(self.ambient, self.T, check=False),
                Subgroup(self.ambient, self.S, check=False))

    def __eq__(self, other):
        return isinstance(other, SectionClass) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __repr__(self):
        return f"SectionClass(|T|={len(self.T)}, |S|={len(self.S)} in {self.ambient.name})"


def canonical_section(ambient: Group, T: tuple, S: tuple) -> SectionClass:
    """The class of the pair (T, S), interned per ambient group.

    The canonical representative is the lexicographically least pair in
    the conjugation orbit; the whole orbit is cached at once.
    """
    cache = getattr(ambient, "_section_canon", None)
    if cache is None:
        cache = ambient._section_canon = {}
    hit = cache.get((T, S))
    if hit is not None:
        return hit
    if ambient.is_abelian():
        cls = SectionClass(ambient, T, S, 1)
        cache[(T, S)] = cls
        return cls
    gens = ambient.generators()
    orbit = {(T, S)}
    queue = [(T, S)]
    while queue:
        t_cur, s_cur = queue.pop()
        for g in gens:
            perm = ambient.conj_perm(g)
            img = (tuple(sorted(perm[x] for x in t_cur)),
                   tuple(sorted(perm[x] for x in s_cur)))
            if img not in orbit:
                orbit.add(img)
                queue.append(img)
    t_min, s_min = min(orbit)
    cls = SectionClass(ambient, t_min, s_min, len(orbit))
    for pair in orbit:
        cache[pair] = cls
    return cls


class Section:
    """A concrete section: subgroups S normal in T of a common ambient group."""

    __slots__ = ("ambient", "T", "S")

    def __init__(self, ambient: Group, T: Subgroup, S: Subgroup,
                 check: bool = True):
        self.ambient = ambient
        self.T = T
        self.S = S
        if check:
            if T.parent.digest != ambient.digest or \
                    S.parent.digest != ambient.digest:
                raise NotSubgroup("section parts live in a different group")
            if not T.contains(S):
                raise NotSubgroup("S is not contained in T")
            if not is_normal_in(S, T):
                raise NotNormal("S is not normal in T")

    def classify(self) -> SectionClass:
        return canonical_section(self.ambient, self.T.elems, self.S.elems)

    def __repr__(self):
        return f"Section(|T|={self.T.order}, |S|={self.S.order} in {self.ambient.name})"


def enumerate_sections(X: Group) -> tuple:
    """All conjugacy classes of sections of X, sorted canonically.

    Walks subgroup-class representatives T and all S normal in T; the
    canonicalization merges pairs conjugate under the ambient group.
    Exhaustive, so only sensible for moderate subgroup lattices.
    """
    cached = getattr(X, "_sections_all", None)
    if cached is not None:
        return cached
    lattice = subgroup_lattice(X)
    out = set()
    for cls in lattice.classes:
        T = cls.rep
        for S in lattice.all:
            if len(S.elems) > T.order:
                break
            if S.elem_set <= T.elem_set and is_normal_in(S, T):
                out.add(canonical_section(X, T.elems, S.elems))
    result = tuple(sorted(out))
    X._sections_all = result
    return result


# -- product decomposition of a subgroup -------------------------------------

def _factors(ambient: Group) -> tuple:
    if ambient.factors is None:
        raise NotAProduct(f"{ambient.name} carries no factor metadata")
    return ambient.factors


def subgroup_parts(ambient: Group, elems) -> tuple:
    """(P, K, L, Q) for a subgroup U of G x H: projections and kernels.

    P = p1(U), K = k1(U) = {g : (g,1) in U}, L = k2(U), Q = p2(U).
    """
    G, H = _factors(ambient)
    ho = H.order
    p, k, l, q = set(), set(), set(), set()
    for u in elems:
        g, h = divmod(u, ho)
        p.add(g)
        q.add(h)
        if h == 0:
            k.add(g)
        if g == 0:
            l.add(h)
    return (Subgroup(G, p, check=False), Subgroup(G, k, check=False),
            Subgroup(H, l, check=False), Subgroup(H, q, check=False))


def left_invariant(cls: SectionClass) -> tuple:
    """(p1(T), k1(T), p1(S), k1(S)) as subgroups of the first factor."""
    pt, kt, _, _ = subgroup_parts(cls.ambient, cls.T)
    ps, ks, _, _ = subgroup_parts(cls.ambient, cls.S)
    return (pt, kt, ps, ks)


def right_invariant(cls: SectionClass) -> tuple:
    """(p2(T), k2(T), p2(S), k2(S)) as subgroups of the second factor."""
    _, _, lt, qt = subgroup_parts(cls.ambient, cls.T)
    _, _, ls, qs = subgroup_parts(cls.ambient, cls.S)
    return (qt, lt, qs, ls)


def middle_left(cls: SectionClass) -> tuple:
    """l0 = (k1(T), p1(S))."""
    l = left_invariant(cls)
    return (l[1], l[2])


def middle_right(cls: SectionClass) -> tuple:
    """r0 = (k2(T), p2(S))."""
    r = right_invariant(cls)
    return (r[1], r[2])


def is_covering(cls: SectionClass) -> bool:
    """Full projections on T, trivial kernels on S."""
    G, H = _factors(cls.ambient)
    pt, _, _, ks = left_invariant(cls)
    qt, _, _, ls = right_invariant(cls)
    return (pt.order == G.order and qt.order == H.order
            and ks.order == 1 and ls.order == 1)


# -- Goursat correspondence ---------------------------------------------------

@dataclass
class GoursatQuintuple:
    """(P, K, eta, L, Q) with eta: Q/L -> P/K an isomorphism.

    ``pk`` and ``ql`` are the coset views realizing the two quotients;
    eta is a Hom between their quotient groups.
    """
    G: Group
    H: Group
    P: Subgroup
    K: Subgroup
    L: Subgroup
    Q: Subgroup
    eta: Hom
    pk: object
    ql: object


def goursat_quintuple(G: Group, H: Group, P: Subgroup, K: Subgroup,
                      eta_images, L: Subgroup, Q: Subgroup) -> GoursatQuintuple:
    """Build and validate a Goursat quintuple from raw data."""
    if not is_normal_in(K, P):
        raise NotNormal("K is not normal in P")
    if not is_normal_in(L, Q):
        raise NotNormal("L is not normal in Q")
    pk = coset_structure(G, P, K)
    ql = coset_structure(H, Q, L)
    eta = Hom(ql.group, pk.group, eta_images)
    if not eta.is_bijective():
        raise NotIso("eta must be an isomorphism Q/L -> P/K")
    return GoursatQuintuple(G=G, H=H, P=P, K=K, L=L, Q=Q, eta=eta, pk=pk, ql=ql)


def goursat(ambient: Group, U: Subgroup) -> GoursatQuintuple:
    """The Goursat correspondent of a subgroup U of G x H."""
    G, H = _factors(ambient)
    P, K, L, Q = subgroup_parts(ambient, U.elems)
    pk = coset_structure(G, P, K)
    ql = coset_structure(H, Q, L)
    ho = H.order
    images = [-1] * ql.group.order
    for u in U.elems:
        g, h = divmod(u, ho)
        j = ql.idx(h)
        if images[j] < 0:
            images[j] = pk.idx(g)
    eta = Hom(ql.group, pk.group, images, check=False)
    return GoursatQuintuple(G=G, H=H, P=P, K=K, L=L, Q=Q, eta=eta, pk=pk, ql=ql)


def subgroup_from_goursat(ambient: Group, q: GoursatQuintuple) -> Subgroup:
    """Reconstruct U = {(g, h) : eta(hL) = gK} from its quintuple."""
    G, H = _factors(ambient)
    ho = H.order
    table = G.table
    elems = []
    for h in q.Q.elems:
        rep = q.pk.rep(q.eta.images[q.ql.idx(h)])
        row = table[rep]
        for k in q.K.elems:
            elems.append(row[k] * ho + h)
    return Subgroup(ambient, elems, check=False)


def section_from_goursat_pair(qT: GoursatQuintuple,
                              qS: GoursatQuintuple) -> Section:
    """Reconstruct a section from a compatible pair of quintuples.

    Checks the compatibility conditions in the order S3, S4, S5, S6, S7
    and raises ConditionViolated with the first failing tag.
    """
    G, H = qT.G, qT.H
    if qS.G.digest != G.digest or qS.H.digest != H.digest:
        raise MiddleMismatch("quintuples belong to different products")
    if not is_normal_in(qS.K, qT.K) or not is_normal_in(qS.L, qT.L):
        raise ConditionViolated("S3", "kernels are not nested normally")
    if not (is_normal_in(qS.K, qT.P) and is_normal_in(qS.P, qT.P)
            and is_normal_in(qS.L, qT.Q) and is_normal_in(qS.Q, qT.Q)):
        raise ConditionViolated("S4", "small parts are not normal in large ones")
    if not (_commutator_inside(G, qT.K, qS.P, qS.K)
            and _commutator_inside(H, qT.L, qS.Q, qS.L)):
        raise ConditionViolated("S5", "commutator condition fails")
    try:
        cm_left = crossed.conj_crossed_module(G, qT.P, qT.K, qS.P, qS.K)
        cm_right = crossed.conj_crossed_module(H, qT.Q, qT.L, qS.Q, qS.L)
    except Exception as exc:
        raise ConditionViolated("S6", f"conjugation crossed module fails: {exc}")
    if not crossed._is_cmorphism(cm_right, cm_left,
                                 qS.eta.images, qT.eta.images):
        raise ConditionViolated(
            "S7", "(etaS, etaT) is not a morphism of crossed modules")
    ambient = direct_product(G, H)
    T = subgroup_from_goursat(ambient, qT)
    S = subgroup_from_goursat(ambient, qS)
    return Section(ambient, T, S)


def _commutator_inside(G: Group, A: Subgroup, B: Subgroup,
                       target: Subgroup) -> bool:
    """[A, B] <= target, checked on all commutators."""
    table, inv = G.table, G._inv
    tset = target.elem_set
    for a in A.elems:
        for b in B.elems:
            if table[table[a][b]][table[inv[a]][inv[b]]] not in tset:
                return False
    return True


def section_quintuples(section: Section) -> tuple:
    """(qT, qS) for a section of a product."""
    return (goursat(section.ambient, section.T),
            goursat(section.ambient, section.S))


# -- star product, opposites, twists -----------------------------------------

def star(A: Subgroup, B: Subgroup) -> Subgroup:
    """Relational composition of A <= G x H and B <= H x K inside G x K."""
    G, H = _factors(A.parent)
    H2, K = _factors(B.parent)
    if H.digest != H2.digest:
        raise MiddleMismatch("star product needs a common middle group")
    ho, ko = H.order, K.order
    left_by_h: dict = {}
    for u in A.elems:
        g, h = divmod(u, ho)
        left_by_h.setdefault(h, []).append(g)
    elems = set()
    for v in B.elems:
        h, k = divmod(v, ko)
        for g in left_by_h.get(h, ()):
            elems.add(g * ko + k)
    return Subgroup(direct_product(G, K), elems, check=False)


def conj_left(t: int, B: Subgroup) -> Subgroup:
    """The twist ^(t,1) B = {(t h t^-1, k)} for B <= H x K."""
    H, K = _factors(B.parent)
    ko = K.order
    perm = H.conj_perm(t)
    return Subgroup(B.parent,
                    (perm[v // ko] * ko + v % ko for v in B.elems),
                    check=False)


def opposite_subgroup(U: Subgroup) -> Subgroup:
    """U^op = {(h, g) : (g, h) in U} inside H x G."""
    G, H = _factors(U.parent)
    ho, go = H.order, G.order
    ambient = direct_product(H, G)
    return Subgroup(ambient,
                    ((u % ho) * go + u // ho for u in U.elems),
                    check=False)


def opposite_class(cls: SectionClass) -> SectionClass:
    G, H = _factors(cls.ambient)
    ho, go = H.order, G.order
    ambient = direct_product(H, G)
    t_op = tuple(sorted((u % ho) * go + u // ho for u in cls.T))
    s_op = tuple(sorted((u % ho) * go + u // ho for u in cls.S))
    return canonical_section(ambient, t_op, s_op)


# -- constrained enumeration ---------------------------------------------------

def constrained_sections(G: Group, H: Group, K: Subgroup, P: Subgroup,
                         L: Subgroup, Q: Subgroup) -> tuple:
    """Classes of covering sections of G x H with l0 = (K, P), r0 = (L, Q).

    These have T with quintuple (G, K, etaT, L, H) and S with quintuple
    (P, 1, etaS, 1, Q), so the search runs over pairs of isomorphisms
    instead of the full subgroup lattice of the product.  Only meaningful
    when K, P are normal in G and L, Q normal in H (the covering case).
    """
    ambient = direct_product(G, H)
    cache = getattr(ambient, "_constrained_cache", None)
    if cache is None:
        cache = ambient._constrained_cache = {}
    key = (K.elems, P.elems, L.elems, Q.elems)
    hit = cache.get(key)
    if hit is not None:
        return hit
    gk = coset_structure(G, G.full_subgroup(), K)
    hl = coset_structure(H, H.full_subgroup(), L)
    pv = coset_structure(G, P, G.trivial_subgroup())
    qv = coset_structure(H, Q, H.trivial_subgroup())
    etats = isomorphisms(hl.group, gk.group)
    etass = isomorphisms(qv.group, pv.group)
    out = set()
    if etats and etass:
        ho = H.order
        q_gens = Q.generators()
        q_all = Q.elems
        for etat in etats:
            t_elems = []
            for g in range(G.order):
                i = gk.idx(g)
                row = g * ho
                for h in range(ho):
                    if etat.images[hl.idx(h)] == i:
                        t_elems.append(row + h)
            T = Subgroup(ambient, t_elems, check=False)
            t_gens = T.generators()
            for etas in etass:
                def alpha(x, _im=etas.images):
                    return pv.rep(_im[qv.idx(x)])
                ok = all(
                    gk.idx(alpha(q)) == etat.images[hl.idx(q)] for q in q_gens)
                if not ok:
                    continue
                s_elems = frozenset(alpha(q) * ho + q for q in q_all)
                s_gens = [alpha(q) * ho + q for q in q_gens]
                if not all(ambient.conj(t, s) in s_elems
                           for t in t_gens for s in s_gens):
                    continue
                out.add(canonical_section(
                    ambient, T.elems, tuple(sorted(s_elems))))
    result = tuple(sorted(out))
    cache[key] = result
    return result

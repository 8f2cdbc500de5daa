"""Exact-rational combinations of section classes with Mackey composition.

An element of the module Gamma(G, H) is a finite rational combination of
conjugacy classes of sections of G x H.  Composition over a middle group
is the bilinear extension of

    (T,S) o (V,U) = sum over t in p2(S)\\H/p1(U) of
                    ( T * (t,1)V,  S * (t,1)U )

where * is relational composition and (t,1) twists the left coordinate.
Class-level products are memoized globally; all coefficients are exact
fractions.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import MiddleMismatch, NotInPoset, NotIso, SpaceMismatch
from .groups import (
    Group,
    Hom,
    Subgroup,
    as_group,
    double_cosets,
    quotient,
)
from . import crossed
from .sections import (
    Section,
    SectionClass,
    canonical_section,
    conj_left,
    opposite_class,
    star,
    subgroup_parts,
)


class GammaElement:
    """An element of Gamma(G, H): a zero-free map from classes to fractions."""

    __slots__ = ("left", "right", "ambient", "coeffs")

    def __init__(self, left: Group, right: Group, coeffs: dict):
        from .groups import direct_product
        self.left = left
        self.right = right
        self.ambient = direct_product(left, right)
        clean = {}
        for cls, c in coeffs.items():
            c = Fraction(c)
            if c:
                clean[cls] = c
        self.coeffs = clean

    def space(self) -> tuple:
        return (self.left.digest, self.right.digest)

    def is_zero(self) -> bool:
        return not self.coeffs

    def support(self) -> list:
        return sorted(self.coeffs)

    def __add__(self, other: "GammaElement") -> "GammaElement":
        if not isinstance(other, GammaElement):
            return NotImplemented
        if self.space() != other.space():
            raise SpaceMismatch("cannot add elements of different modules")
        coeffs = dict(self.coeffs)
        for cls, c in other.coeffs.items():
            coeffs[cls] = coeffs.get(cls, 0) + c
        return GammaElement(self.left, self.right, coeffs)

    def __sub__(self, other: "GammaElement") -> "GammaElement":
        return self + (-1) * other

    def __mul__(self, scalar) -> "GammaElement":
        if isinstance(scalar, GammaElement):
            return NotImplemented
        s = Fraction(scalar)
        return GammaElement(self.left, self.right,
                            {cls: c * s for cls, c in self.coeffs.items()})

    __rmul__ = __mul__

    def __neg__(self) -> "GammaElement":
        return (-1) * self

    def __eq__(self, other):
        return (isinstance(other, GammaElement)
                and self.space() == other.space()
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.space(), frozenset(self.coeffs.items())))

    def __repr__(self):
        n = len(self.coeffs)
        return f"GammaElement({self.left.name}x{self.right.name}, {n} classes)"


def zero(G: Group, H: Group) -> GammaElement:
    return GammaElement(G, H, {})


def basis_element(G: Group, H: Group, cls: SectionClass,
                  coeff=1) -> GammaElement:
    return GammaElement(G, H, {cls: Fraction(coeff)})


def from_section(G: Group, H: Group, section: Section) -> GammaElement:
    return basis_element(G, H, section.classify())


def identity_element(G: Group) -> GammaElement:
    """The class of (diag(G), diag(G)), the identity of Gamma(G, G)."""
    from .groups import direct_product
    ambient = direct_product(G, G)
    diag = tuple(sorted(g * G.order + g for g in range(G.order)))
    return basis_element(G, G, canonical_section(ambient, diag, diag))


_CLASS_COMPOSE: dict = {}


def compose_classes(a: SectionClass, b: SectionClass) -> dict:
    """Integer multiplicities of the Mackey product of two basis classes."""
    key = (a.key, b.key)
    hit = _CLASS_COMPOSE.get(key)
    if hit is not None:
        return hit
    G, H = a.ambient.factors
    H2, K = b.ambient.factors
    if H.digest != H2.digest:
        raise MiddleMismatch("composition needs a common middle group")
    Ta, Sa = a.subgroups()
    Tb, Sb = b.subgroups()
    _, _, _, p2sa = subgroup_parts(a.ambient, a.S)
    p1sb, _, _, _ = subgroup_parts(b.ambient, b.S)
    out: dict = {}
    for t in double_cosets(p2sa, H, p1sb):
        T = star(Ta, conj_left(t, Tb))
        S = star(Sa, conj_left(t, Sb))
        cls = canonical_section(T.parent, T.elems, S.elems)
        out[cls] = out.get(cls, 0) + 1
    _CLASS_COMPOSE[key] = out
    return out


def compose(a: GammaElement, b: GammaElement) -> GammaElement:
    """Composition Gamma(G,H) x Gamma(H,K) -> Gamma(G,K)."""
    if a.right.digest != b.left.digest:
        raise MiddleMismatch("composition needs a common middle group")
    coeffs: dict = {}
    for cls_a, ca in a.coeffs.items():
        for cls_b, cb in b.coeffs.items():
            c = ca * cb
            for cls, mult in compose_classes(cls_a, cls_b).items():
                coeffs[cls] = coeffs.get(cls, 0) + c * mult
    return GammaElement(a.left, b.right, coeffs)


def opposite_element(a: GammaElement) -> GammaElement:
    return GammaElement(a.right, a.left,
                        {opposite_class(cls): c
                         for cls, c in a.coeffs.items()})


# -- elementary elements -------------------------------------------------------

def induction(G: Group, Hsub: Subgroup) -> GammaElement:
    """Ind: Gamma(G, H) class of (diag(H), diag(H)) for H <= G."""
    from .groups import direct_product
    Hs, to_parent = as_group(Hsub)
    ambient = direct_product(G, Hs)
    diag = tuple(sorted(to_parent[i] * Hs.order + i for i in range(Hs.order)))
    return basis_element(G, Hs, canonical_section(ambient, diag, diag))


def restriction(G: Group, Hsub: Subgroup) -> GammaElement:
    """Res: Gamma(H, G) class of (diag(H), diag(H)) for H <= G."""
    from .groups import direct_product
    Hs, to_parent = as_group(Hsub)
    ambient = direct_product(Hs, G)
    diag = tuple(sorted(i * G.order + to_parent[i] for i in range(Hs.order)))
    return basis_element(Hs, G, canonical_section(ambient, diag, diag))


def inflation(G: Group, N: Subgroup) -> GammaElement:
    """Inf: Gamma(G, G/N) class of the graph of the projection."""
    from .groups import direct_product
    Q, pi = quotient(G, N)
    ambient = direct_product(G, Q)
    graph = tuple(sorted(g * Q.order + pi.images[g] for g in range(G.order)))
    return basis_element(G, Q, canonical_section(ambient, graph, graph))


def deflation(G: Group, N: Subgroup) -> GammaElement:
    """Def: Gamma(G/N, G) class of the reversed graph of the projection."""
    from .groups import direct_product
    Q, pi = quotient(G, N)
    ambient = direct_product(Q, G)
    graph = tuple(sorted(pi.images[g] * G.order + g for g in range(G.order)))
    return basis_element(Q, G, canonical_section(ambient, graph, graph))


def iso_element(f: Hom) -> GammaElement:
    """Iso(f): Gamma(G, H) class of the graph of an isomorphism f: H -> G."""
    from .groups import direct_product
    if not f.is_bijective():
        raise NotIso("iso element needs a bijective homomorphism")
    H, G = f.source, f.target
    ambient = direct_product(G, H)
    graph = tuple(sorted(f.images[h] * H.order + h for h in range(H.order)))
    return basis_element(G, H, canonical_section(ambient, graph, graph))


# -- the idempotent-bearing sections ------------------------------------------

def e_class(G: Group, K: Subgroup, P: Subgroup) -> SectionClass:
    """The class of (Delta_K(G), Delta(P)) for a commuting normal pair."""
    from .groups import direct_product
    if not crossed.in_poset(G, K, P):
        raise NotInPoset("(K, P) must be a commuting pair of normal subgroups")
    ambient = direct_product(G, G)
    n = G.order
    table, inv = G.table, G._inv
    kset = K.elem_set
    t_elems = tuple(sorted(
        g * n + h for g in range(n) for h in range(n)
        if table[inv[h]][g] in kset))
    s_elems = tuple(sorted(p * n + p for p in P.elems))
    return canonical_section(ambient, t_elems, s_elems)


def e_idempotent(G: Group, K: Subgroup, P: Subgroup) -> GammaElement:
    """e_(K,P) = [Delta_K(G), Delta(P)] / |G:P|."""
    return basis_element(G, G, e_class(G, K, P), Fraction(1, P.index))


# -- factorization through the section's middle quotients ----------------------

def factorize(cls: SectionClass) -> list:
    """Five elements (Ind, Inf, middle, Def, Res) composing to [cls].

    The middle lives over P_T/K_S and Q_T/L_S and is covering; the outer
    four are elementary.  Composing the list in order recovers the class.
    """
    G, H = cls.ambient.factors
    PT, _, _, QT = subgroup_parts(cls.ambient, cls.T)
    _, KS, LS, _ = subgroup_parts(cls.ambient, cls.S)
    from .groups import direct_product

    PTg, pt_map = as_group(PT)
    QTg, qt_map = as_group(QT)
    pt_idx = {e: i for i, e in enumerate(pt_map)}
    qt_idx = {e: i for i, e in enumerate(qt_map)}
    KS_in = Subgroup(PTg, (pt_idx[x] for x in KS.elems), check=False)
    LS_in = Subgroup(QTg, (qt_idx[x] for x in LS.elems), check=False)
    Gbar, piG = quotient(PTg, KS_in)
    Hbar, piH = quotient(QTg, LS_in)

    amb_bar = direct_product(Gbar, Hbar)
    ho = H.order

    def push(elems):
        return tuple(sorted({
            piG.images[pt_idx[u // ho]] * Hbar.order
            + piH.images[qt_idx[u % ho]]
            for u in elems}))

    middle = basis_element(
        Gbar, Hbar, canonical_section(amb_bar, push(cls.T), push(cls.S)))
    return [
        induction(G, PT),
        inflation(PTg, KS_in),
        middle,
        deflation(QTg, LS_in),
        restriction(H, QT),
    ]


def compose_chain(elements) -> GammaElement:
    out = elements[0]
    for e in elements[1:]:
        out = compose(out, e)
    return out

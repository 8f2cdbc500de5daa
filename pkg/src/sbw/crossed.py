"""Conjugation crossed modules and their (outer) automorphism groups.

A crossed module here is a pair of table groups (A, B) with a boundary
homomorphism A -> B and a left action of B on A by automorphisms, subject
to the usual two axioms.  Everything in this package arises from the
conjugation situation: B = P1/K1 acting on A = P2/K2 inside a common
parent group.  The functions at the bottom tie pairs (K, P) of commuting
normal subgroups to crossed modules (P, G/K, i_P), decide when two such
pairs are linked, and realize automorphisms as sections of G x G.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import AxiomFailed, NotAutomorphism, NotInPoset, NotIso
from .groups import (
    CosetView,
    Group,
    Hom,
    Subgroup,
    commute_elementwise,
    coset_structure,
    isomorphisms,
    quotient,
)


class CrossedModule:
    """(A, B, boundary, action); ``action[b]`` is an image tuple on A."""

    def __init__(self, a: Group, b: Group, boundary: Hom, action,
                 check: bool = True):
        self.a = a
        self.b = b
        self.boundary = boundary
        self.action = tuple(tuple(row) for row in action)
        self._fingerprint = None
        if check:
            self._validate()

    def _validate(self):
        A, B = self.a, self.b
        if self.boundary.source.digest != A.digest or \
                self.boundary.target.digest != B.digest:
            raise AxiomFailed("boundary does not go from A to B")
        if len(self.action) != B.order:
            raise AxiomFailed("need one action permutation per element of B")
        ta, tb = A.table, B.table
        for row in self.action:
            if sorted(row) != list(range(A.order)):
                raise AxiomFailed("action image is not a permutation of A")
            for x in range(A.order):
                for y in range(A.order):
                    if row[ta[x][y]] != ta[row[x]][row[y]]:
                        raise AxiomFailed("action image is not an automorphism")
        act = self.action
        if act[0] != tuple(range(A.order)):
            raise AxiomFailed("identity of B must act trivially")
        for b1 in range(B.order):
            for b2 in range(B.order):
                left = act[tb[b1][b2]]
                for x in range(A.order):
                    if left[x] != act[b1][act[b2][x]]:
                        raise AxiomFailed("action is not a homomorphism")
        bd = self.boundary.images
        for b1 in range(B.order):
            row = act[b1]
            for x in range(A.order):
                if bd[row[x]] != B.conj(b1, bd[x]):
                    raise AxiomFailed("boundary is not equivariant")
        for x in range(A.order):
            row = act[bd[x]]
            for y in range(A.order):
                if row[y] != A.conj(x, y):
                    raise AxiomFailed("Peiffer identity fails")

    def fingerprint(self) -> tuple:
        """Cheap isomorphism invariants, used to prune iso searches."""
        if self._fingerprint is None:
            image_size = len(set(self.boundary.images))
            orbit_sizes = self._orbit_census()
            self._fingerprint = (
                self.a.order, self.b.order,
                tuple(sorted(self.a.element_orders())),
                tuple(sorted(self.b.element_orders())),
                image_size, orbit_sizes,
            )
        return self._fingerprint

    def _orbit_census(self) -> tuple:
        seen = [False] * self.a.order
        sizes = []
        for x in range(self.a.order):
            if seen[x]:
                continue
            orbit = {x}
            queue = [x]
            while queue:
                y = queue.pop()
                for row in self.action:
                    z = row[y]
                    if z not in orbit:
                        orbit.add(z)
                        queue.append(z)
            for y in orbit:
                seen[y] = True
            sizes.append(len(orbit))
        return tuple(sorted(sizes))

    def __repr__(self):
        return f"CrossedModule(A order {self.a.order}, B order {self.b.order})"


def conj_crossed_module(parent: Group, P1: Subgroup, K1: Subgroup,
                        P2: Subgroup, K2: Subgroup) -> CrossedModule:
    """The crossed module (P2/K2, P1/K1, x K2 -> x K1) with conjugation action.

    Requires K2 <= K1, P2 <= P1 and the normality conditions making both
    quotients and the action well defined; violations surface as errors
    from the quotient construction or as AxiomFailed.
    """
    big = coset_structure(parent, P1, K1)
    small = coset_structure(parent, P2, K2)
    A, B = small.group, big.group
    boundary = Hom(A, B, tuple(big.idx(small.rep(i)) for i in range(A.order)),
                   check=False)
    action = []
    for b in range(B.order):
        g = big.rep(b)
        action.append(tuple(small.idx(parent.conj(g, small.rep(i)))
                            for i in range(A.order)))
    return CrossedModule(A, B, boundary, action)


def in_poset(G: Group, K: Subgroup, P: Subgroup) -> bool:
    """Whether (K, P) is a pair of normal subgroups with [K, P] = 1."""
    return K.is_normal() and P.is_normal() and commute_elementwise(K, P)


def from_pair(G: Group, K: Subgroup, P: Subgroup) -> CrossedModule:
    """The crossed module (P, G/K, i_P) attached to a commuting normal pair."""
    cache = getattr(G, "_pair_cm_cache", None)
    if cache is None:
        cache = G._pair_cm_cache = {}
    key = (K.elems, P.elems)
    hit = cache.get(key)
    if hit is not None:
        return hit
    if not in_poset(G, K, P):
        raise NotInPoset(f"({K.elems}, {P.elems}) is not a commuting normal pair")
    cm = conj_crossed_module(G, G.full_subgroup(), K, P, G.trivial_subgroup())
    cache[key] = cm
    return cm


class CMorphism:
    """A morphism of crossed modules: alpha on the A's, beta on the B's."""

    __slots__ = ("src", "dst", "alpha", "beta")

    def __init__(self, src: CrossedModule, dst: CrossedModule,
                 alpha: Hom, beta: Hom, check: bool = True):
        self.src = src
        self.dst = dst
        self.alpha = alpha
        self.beta = beta
        if check and not _is_cmorphism(src, dst, alpha.images, beta.images):
            raise NotIso("(alpha, beta) is not a morphism of crossed modules")

    def is_iso(self) -> bool:
        return self.alpha.is_bijective() and self.beta.is_bijective()

    def __repr__(self):
        return f"CMorphism({self.alpha.images}, {self.beta.images})"


def _is_cmorphism(src: CrossedModule, dst: CrossedModule,
                  alpha: tuple, beta: tuple) -> bool:
    bd_s, bd_d = src.boundary.images, dst.boundary.images
    for x in range(src.a.order):
        if bd_d[alpha[x]] != beta[bd_s[x]]:
            return False
    for b in range(src.b.order):
        src_row = src.action[b]
        dst_row = dst.action[beta[b]]
        for x in range(src.a.order):
            if alpha[src_row[x]] != dst_row[alpha[x]]:
                return False
    return True


def iso_search(src: CrossedModule, dst: CrossedModule,
               limit: Optional[int] = None) -> list:
    """All crossed-module isomorphisms src -> dst, deterministically ordered.

    Candidate pairs are pruned by requiring beta to agree with the values
    forced on the image of the boundary before running the full check.
    """
    if src.fingerprint() != dst.fingerprint():
        return []
    alphas = isomorphisms(src.a, dst.a)
    betas = isomorphisms(src.b, dst.b)
    if not alphas or not betas:
        return []
    probe = src.a.generators()
    probe_src = tuple(src.boundary.images[g] for g in probe)
    buckets: dict = {}
    for beta in betas:
        key = tuple(beta.images[x] for x in probe_src)
        buckets.setdefault(key, []).append(beta)
    out = []
    bd_d = dst.boundary.images
    for alpha in alphas:
        key = tuple(bd_d[alpha.images[g]] for g in probe)
        for beta in buckets.get(key, ()):
            if _is_cmorphism(src, dst, alpha.images, beta.images):
                out.append(CMorphism(src, dst, alpha, beta, check=False))
                if limit is not None and len(out) >= limit:
                    return out
    return out


@dataclass
class AutOut:
    """Aut of a crossed module as a table group, plus Inn and Out."""
    module: CrossedModule
    group: Group          # composition table of the automorphisms
    auts: tuple           # auts[i] is the CMorphism at table index i
    inn: Subgroup         # image of theta inside `group`
    theta_images: tuple   # theta(b) as an index into `auts`, per b in B
    out_group: Group
    out_reps: tuple       # aut indices representing the cosets of inn


def aut_out(cm: CrossedModule) -> AutOut:
    cached = getattr(cm, "_aut_out", None)
    if cached is not None:
        return cached
    auts = iso_search(cm, cm)
    auts.sort(key=lambda m: (m.alpha.images, m.beta.images))
    index = {(m.alpha.images, m.beta.images): i for i, m in enumerate(auts)}
    n = len(auts)
    table = [[0] * n for _ in range(n)]
    for i, f in enumerate(auts):
        for j, g in enumerate(auts):
            comp = (tuple(f.alpha.images[x] for x in g.alpha.images),
                    tuple(f.beta.images[x] for x in g.beta.images))
            table[i][j] = index[comp]
    group = Group(table, name="Aut(cm)")
    theta_images = tuple(
        index[(cm.action[b], cm.b.conj_perm(b))] for b in range(cm.b.order))
    inn = Subgroup(group, set(theta_images), check=False)
    out_group, pi = quotient(group, inn)
    out_reps = tuple(out_group._coset_reps)
    result = AutOut(module=cm, group=group, auts=tuple(auts), inn=inn,
                    theta_images=theta_images, out_group=out_group,
                    out_reps=out_reps)
    cm._aut_out = result
    return result


@dataclass
class LinkWitness:
    """Certificate that two commuting normal pairs are linked."""
    morphism: CMorphism   # iso (Q, H/L, i_Q) -> (P, G/K, i_P)
    section: object       # Section of G x H with the prescribed invariants


def link_section(G: Group, K: Subgroup, P: Subgroup,
                 H: Group, L: Subgroup, Q: Subgroup, m: CMorphism):
    """The section of G x H induced by an iso (Q, H/L, i_Q) -> (P, G/K, i_P).

    T is the graph of beta on K/L-cosets, S the graph of alpha.
    """
    from .groups import direct_product
    from .sections import Section

    ambient = direct_product(G, H)
    gk = coset_structure(G, G.full_subgroup(), K)
    hl = coset_structure(H, H.full_subgroup(), L)
    pview = coset_structure(G, P, G.trivial_subgroup())
    qview = coset_structure(H, Q, H.trivial_subgroup())
    alpha, beta = m.alpha.images, m.beta.images
    ho = H.order
    t_elems = []
    for h in range(ho):
        target = beta[hl.idx(h)]
        for g in range(G.order):
            if gk.idx(g) == target:
                t_elems.append(g * ho + h)
    s_elems = [pview.rep(alpha[qview.idx(q)]) * ho + q for q in Q.elems]
    T = Subgroup(ambient, t_elems, check=False)
    S = Subgroup(ambient, s_elems, check=False)
    return Section(ambient, T, S)


def theta(G: Group, K: Subgroup, P: Subgroup, m: CMorphism):
    """Realize an automorphism of (P, G/K, i_P) as a section of G x G."""
    cm = from_pair(G, K, P)
    if m.src is not cm or m.dst is not cm or not m.is_iso():
        raise NotAutomorphism("expected an automorphism of (P, G/K, i_P)")
    return link_section(G, K, P, G, K, P, m)


def linked(G: Group, K: Subgroup, P: Subgroup,
           H: Group, L: Subgroup, Q: Subgroup) -> Optional[LinkWitness]:
    """A witness that (G,K,P,1) and (H,L,Q,1) are linked, or None.

    Linkage holds exactly when the conjugation crossed modules of the two
    pairs are isomorphic; the witness section realizes the link.
    """
    cm_g = from_pair(G, K, P)
    cm_h = from_pair(H, L, Q)
    found = iso_search(cm_h, cm_g, limit=1)
    if not found:
        return None
    m = found[0]
    section = link_section(G, K, P, H, L, Q, m)
    return LinkWitness(morphism=m, section=section)

"""Finite posets with partial joins, Mobius functions, and the idempotent
calculus they induce.

The generic engine works for any finite poset: elements are arbitrary
hashable labels, the order is given by a predicate, joins may fail.  The
instantiation used everywhere else is the poset of pairs (K, P) of
commuting normal subgroups of a fixed group, ordered by K <= L, P >= Q,
where joins always exist; its e/f idempotents live in Gamma(G, G).
"""

from __future__ import annotations

from typing import Callable, Optional, Sequence

from .errors import NotInPoset, PartitionMismatch
from .groups import (
    Group,
    Subgroup,
    commute_elementwise,
    intersection,
    normal_subgroups,
    product_set,
)
from . import gamma


class FinitePoset:
    """A finite poset over hashable labels, stored as up-set bitmasks."""

    def __init__(self, elements: Sequence, leq: Callable):
        self.elements = tuple(elements)
        self.index = {x: i for i, x in enumerate(self.elements)}
        if len(self.index) != len(self.elements):
            raise NotInPoset("poset elements must be distinct")
        n = len(self.elements)
        up = []
        for i in range(n):
            mask = 0
            for j in range(n):
                if leq(self.elements[i], self.elements[j]):
                    mask |= 1 << j
            up.append(mask)
        for i in range(n):
            if not (up[i] >> i) & 1:
                raise NotInPoset("order is not reflexive")
            for j in range(n):
                if (up[i] >> j) & 1:
                    if i != j and (up[j] >> i) & 1:
                        raise NotInPoset("order is not antisymmetric")
                    if up[j] & ~up[i]:
                        raise NotInPoset("order is not transitive")
        self.up = up
        self._join: dict = {}
        self._mobius: Optional[dict] = None

    def __len__(self):
        return len(self.elements)

    def leq(self, x, y) -> bool:
        return (self.up[self.index[x]] >> self.index[y]) & 1 == 1

    def upper_set(self, x) -> list:
        """Indices of all y >= x."""
        mask = self.up[self.index[x]]
        return [j for j in range(len(self.elements)) if (mask >> j) & 1]

    def join_index(self, i: int, j: int) -> Optional[int]:
        """Index of the join, or None when no least upper bound exists."""
        key = (i, j) if i <= j else (j, i)
        if key in self._join:
            return self._join[key]
        common = self.up[i] & self.up[j]
        found = None
        mask = common
        while mask:
            m = (mask & -mask).bit_length() - 1
            mask &= mask - 1
            if self.up[m] == common:
                found = m
                break
        self._join[key] = found
        return found

    def join(self, x, y):
        m = self.join_index(self.index[x], self.index[y])
        return None if m is None else self.elements[m]

    def mobius(self) -> dict:
        """{(i, j): mu} over comparable index pairs i <= j.

        Within the up-set of i, elements are processed from low to high
        (descending up-set size), so each value only needs earlier ones.
        """
        if self._mobius is not None:
            return self._mobius
        n = len(self.elements)
        order = sorted(range(n), key=lambda j: -self.up[j].bit_count())
        mob: dict = {}
        for i in range(n):
            ui = self.up[i]
            chain = [j for j in order if (ui >> j) & 1]
            for j in chain:
                if j == i:
                    mob[(i, i)] = 1
                    continue
                uj = self.up[j]
                total = 0
                for z in chain:
                    if z != j and (self.up[z] >> j) & 1 == 1:
                        total += mob.get((i, z), 0)
                    if self.up[z] == uj:
                        break
                mob[(i, j)] = -total
        self._mobius = mob
        return mob


# -- the poset of commuting normal pairs ----------------------------------------

def normal_commuting_pairs(G: Group) -> tuple:
    """All pairs (K, P) of normal subgroups of G with [K, P] = 1, sorted."""
    normals = normal_subgroups(G)
    pairs = []
    for K in normals:
        for P in normals:
            if commute_elementwise(K, P):
                pairs.append((K, P))
    pairs.sort(key=lambda kp: (kp[0].elems, kp[1].elems))
    return tuple(pairs)


def pair_leq(x: tuple, y: tuple) -> bool:
    """(K,P) <= (L,Q) iff K <= L and P >= Q."""
    return y[0].contains(x[0]) and x[1].contains(y[1])


def build_poset(G: Group) -> FinitePoset:
    """The poset of commuting normal pairs of G; joins are (KL, P n Q)."""
    cached = getattr(G, "_pair_poset", None)
    if cached is not None:
        return cached
    poset = FinitePoset(normal_commuting_pairs(G), pair_leq)
    bottom = (G.trivial_subgroup(), G.full_subgroup())
    top = (G.full_subgroup(), G.trivial_subgroup())
    assert all(poset.leq(bottom, x) for x in poset.elements)
    assert all(poset.leq(x, top) for x in poset.elements)
    for x in poset.elements:
        for y in poset.elements:
            expect = (product_set(x[0], y[0]), intersection(x[1], y[1]))
            if poset.join(x, y) != expect:
                raise NotInPoset("join structure is inconsistent")
    G._pair_poset = poset
    return poset


def mobius(poset: FinitePoset) -> dict:
    """Mobius values keyed by pairs of poset elements."""
    raw = poset.mobius()
    els = poset.elements
    return {(els[i], els[j]): v for (i, j), v in raw.items()}


def _require_pair(poset: FinitePoset, pair: tuple) -> int:
    idx = poset.index.get(pair)
    if idx is None:
        raise NotInPoset("pair does not belong to the poset of the group")
    return idx


def f_idempotent(G: Group, pair: tuple) -> gamma.GammaElement:
    """f_(K,P): the Mobius combination of the e's above (K, P)."""
    poset = build_poset(G)
    i = _require_pair(poset, pair)
    mob = poset.mobius()
    out = gamma.zero(G, G)
    for j in poset.upper_set(pair):
        L, Q = poset.elements[j]
        out = out + mob[(i, j)] * gamma.e_idempotent(G, L, Q)
    return out


def e_idempotent(G: Group, pair: tuple) -> gamma.GammaElement:
    poset = build_poset(G)
    _require_pair(poset, pair)
    return gamma.e_idempotent(G, pair[0], pair[1])


def class_idempotents(G: Group, partition: Sequence[Sequence[tuple]]) -> dict:
    """Per linkage class, the sums (e_class, f_class) over its members.

    The partition must cover the poset of G exactly once.
    """
    poset = build_poset(G)
    seen: set = set()
    for block in partition:
        for pair in block:
            i = _require_pair(poset, pair)
            if i in seen:
                raise PartitionMismatch("blocks overlap")
            seen.add(i)
    if len(seen) != len(poset):
        raise PartitionMismatch("blocks do not cover the poset")
    out = {}
    for block in partition:
        e_sum = gamma.zero(G, G)
        f_sum = gamma.zero(G, G)
        for pair in block:
            e_sum = e_sum + e_idempotent(G, pair)
            f_sum = f_sum + f_idempotent(G, pair)
        out[tuple(sorted(block, key=lambda kp: (kp[0].elems, kp[1].elems)))] = \
            (e_sum, f_sum)
    return out


# -- a tiny vector model for exercising the generic engine ----------------------

class UpsetAlgebra:
    """Indicator vectors of up-sets under pointwise product.

    On a poset where any two elements either have a join or no common
    upper bound at all, this family satisfies the product rule required
    of an idempotent system: e_x e_y = e_{x v y} when the join exists and
    0 otherwise.  Tests use it to exercise Mobius orthogonality on posets
    with missing joins (e.g. chains glued at a common minimum), a branch
    the commuting-pairs poset never reaches.
    """

    def __init__(self, poset: FinitePoset):
        self.poset = poset

    def e_vector(self, x) -> tuple:
        mask = self.poset.up[self.poset.index[x]]
        n = len(self.poset.elements)
        return tuple(1 if (mask >> j) & 1 else 0 for j in range(n))

    def f_vector(self, x) -> tuple:
        mob = self.poset.mobius()
        i = self.poset.index[x]
        n = len(self.poset.elements)
        acc = [0] * n
        for j in self.poset.upper_set(x):
            ev = self.e_vector(self.poset.elements[j])
            m = mob[(i, j)]
            for t in range(n):
                acc[t] += m * ev[t]
        return tuple(acc)

    @staticmethod
    def product(u: tuple, v: tuple) -> tuple:
        return tuple(a * b for a, b in zip(u, v))

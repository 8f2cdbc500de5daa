"""Finite groups as explicit multiplication tables with the identity at 0.

Everything downstream (sections of direct products, the composition
calculus, the classification reports) manipulates these table groups.
Groups are immutable after construction and all functions here are pure,
so expensive results (subgroup lattices, isomorphism lists, quotients)
are memoized on the group objects themselves.  Concurrent readers only
ever race to store identical values, so the caches stay consistent.
"""

from __future__ import annotations

import hashlib
import itertools
import os
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import (
    MixedParents,
    NoIdentity,
    NonAssociative,
    NotClosed,
    NotIso,
    NotNormal,
    NotSubgroup,
    OrderLimitExceeded,
)

DEFAULT_ORDER_CAP = 512


def order_cap() -> int:
    """Current order cap; the SBW_MAX_ORDER environment variable overrides."""
    env = os.environ.get("SBW_MAX_ORDER")
    if env:
        return int(env)
    return DEFAULT_ORDER_CAP


def _validate_table(rows: tuple, max_order: int) -> None:
    n = len(rows)
    if n == 0:
        raise NoIdentity("empty multiplication table")
    if n > max_order:
        raise OrderLimitExceeded(f"order {n} exceeds cap {max_order}")
    for row in rows:
        if len(row) != n:
            raise NotClosed("multiplication table is not square")
    arr = np.asarray(rows, dtype=np.int64)
    if arr.min() < 0 or arr.max() >= n:
        raise NotClosed("table entry outside the element range")
    idr = np.arange(n)
    if not (np.array_equal(arr[0], idr) and np.array_equal(arr[:, 0], idr)):
        raise NoIdentity("index 0 is not a two-sided identity")
    if not np.array_equal(np.sort(arr, axis=1), np.tile(idr, (n, 1))):
        raise NotClosed("some row is not a permutation")
    if not np.array_equal(np.sort(arr, axis=0), np.tile(idr[:, None], (1, n))):
        raise NotClosed("some column is not a permutation")
    for a in range(n):
        if not np.array_equal(arr[arr[a]], arr[a][arr]):
            raise NonAssociative(f"associativity fails for left factor {a}")


class Group:
    """A finite group on ``{0, .., order-1}`` given by its full table.

    ``table[a][b]`` is the product ``a*b``.  Index 0 is the identity.
    ``gens`` records distinguished generators for the named constructors
    (e.g. the rotation/reflection of a dihedral group); ``factors`` is set
    on direct products; ``spec`` is a reconstruction recipe for JSON.
    """

    def __init__(self, table, name: str = "G", perm_gens=None, factors=None,
                 gens=None, spec=None, max_order: Optional[int] = None,
                 validate: bool = True):
        rows = tuple(tuple(int(x) for x in row) for row in table)
        cap = order_cap() if max_order is None else max_order
        if validate:
            _validate_table(rows, cap)
        elif len(rows) > cap:
            raise OrderLimitExceeded(f"order {len(rows)} exceeds cap {cap}")
        self.table = rows
        self.order = len(rows)
        self.name = name
        self.perm_gens = perm_gens
        self.factors = factors
        self.gens = gens
        self.spec = spec
        arr = np.asarray(rows, dtype=np.uint16)
        self.digest = hashlib.blake2b(arr.tobytes(), digest_size=12).hexdigest()
        self._inv = tuple(int(row.index(0)) for row in rows)
        self._conj_perms: dict = {}
        self._elem_orders: Optional[tuple] = None
        self._generators: Optional[tuple] = None
        self._abelian: Optional[bool] = None

    # -- basic arithmetic ------------------------------------------------
    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self._inv[a]

    def conj(self, g: int, x: int) -> int:
        """g * x * g^-1."""
        return self.table[self.table[g][x]][self._inv[g]]

    def conj_perm(self, g: int) -> tuple:
        """The permutation x -> g*x*g^-1 as an image tuple."""
        perm = self._conj_perms.get(g)
        if perm is None:
            row = self.table[g]
            gi = self._inv[g]
            perm = tuple(self.table[row[x]][gi] for x in range(self.order))
            self._conj_perms[g] = perm
        return perm

    def element_order(self, a: int) -> int:
        return self.element_orders()[a]

    def element_orders(self) -> tuple:
        if self._elem_orders is None:
            orders = []
            for a in range(self.order):
                x, k = a, 1
                while x != 0:
                    x = self.table[x][a]
                    k += 1
                orders.append(k)
            self._elem_orders = tuple(orders)
        return self._elem_orders

    def is_abelian(self) -> bool:
        if self._abelian is None:
            t = self.table
            self._abelian = all(
                t[a][b] == t[b][a]
                for a in range(self.order) for b in range(a + 1, self.order)
            )
        return self._abelian

    def generators(self) -> tuple:
        """A small generating sequence, grown by least element not yet generated."""
        if self._generators is None:
            gens: list = []
            closure = {0}
            while len(closure) < self.order:
                g = min(x for x in range(self.order) if x not in closure)
                gens.append(g)
                closure = closure_set(self, gens)
            self._generators = tuple(gens)
        return self._generators

    # -- subgroup shorthands ----------------------------------------------
    def subgroup(self, elems: Iterable[int], gens=None, check: bool = True) -> "Subgroup":
        return Subgroup(self, elems, gens=gens, check=check)

    def trivial_subgroup(self) -> "Subgroup":
        return Subgroup(self, (0,), gens=(), check=False)

    def full_subgroup(self) -> "Subgroup":
        return Subgroup(self, range(self.order), gens=self.generators(), check=False)

    # -- direct product helpers --------------------------------------------
    def pair(self, a: int, b: int) -> int:
        """Index of (a, b) in this direct product."""
        from .errors import NotAProduct
        if self.factors is None:
            raise NotAProduct(f"{self.name} carries no factor metadata")
        return a * self.factors[1].order + b

    def split(self, x: int) -> tuple:
        from .errors import NotAProduct
        if self.factors is None:
            raise NotAProduct(f"{self.name} carries no factor metadata")
        return divmod(x, self.factors[1].order)

    def __eq__(self, other):
        return isinstance(other, Group) and self.digest == other.digest

    def __hash__(self):
        return hash(self.digest)

    def __repr__(self):
        return f"Group({self.name}, order={self.order})"


def closure_set(G: Group, gens: Sequence[int]) -> set:
    """Elements of the subgroup generated by ``gens``."""
    table = G.table
    elems = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for a in frontier:
            row = table[a]
            for g in gens:
                b = row[g]
                if b not in elems:
                    elems.add(b)
                    nxt.append(b)
        frontier = nxt
    return elems


class Subgroup:
    """A subgroup of a fixed parent group, stored as a sorted element tuple."""

    __slots__ = ("parent", "elems", "elem_set", "gens", "_normal", "_gen_cache")

    def __init__(self, parent: Group, elems: Iterable[int], gens=None, check: bool = True):
        self.parent = parent
        self.elems = tuple(sorted(set(int(x) for x in elems)))
        self.elem_set = frozenset(self.elems)
        self.gens = tuple(gens) if gens is not None else None
        self._normal = None
        self._gen_cache = None
        if check:
            if not self.elems or self.elems[0] != 0:
                raise NotSubgroup("subgroup must contain the identity")
            table = parent.table
            s = self.elem_set
            for a in self.elems:
                row = table[a]
                for b in self.elems:
                    if row[b] not in s:
                        raise NotSubgroup(f"not closed: {a}*{b} escapes")

    @property
    def order(self) -> int:
        return len(self.elems)

    @property
    def index(self) -> int:
        return self.parent.order // len(self.elems)

    def generators(self) -> tuple:
        """A small generating sequence inside the parent's indexing."""
        if self.gens is not None:
            return self.gens
        if self._gen_cache is None:
            gens: list = []
            closure = {0}
            while len(closure) < self.order:
                g = min(x for x in self.elems if x not in closure)
                gens.append(g)
                closure = closure_set(self.parent, gens)
            self._gen_cache = tuple(gens)
        return self._gen_cache

    def contains(self, other: "Subgroup") -> bool:
        return other.elem_set <= self.elem_set

    def is_normal(self) -> bool:
        """Normality in the full parent group."""
        if self._normal is None:
            self._normal = all(
                self.parent.conj(g, x) in self.elem_set
                for g in self.parent.generators() for x in self.generators()
            )
        return self._normal

    def __eq__(self, other):
        return (isinstance(other, Subgroup)
                and self.parent.digest == other.parent.digest
                and self.elems == other.elems)

    def __hash__(self):
        return hash((self.parent.digest, self.elems))

    def __lt__(self, other):
        return (len(self.elems), self.elems) < (len(other.elems), other.elems)

    def __repr__(self):
        return f"Subgroup(order={self.order} of {self.parent.name})"


def generated_subgroup(G: Group, gens: Sequence[int]) -> Subgroup:
    return Subgroup(G, closure_set(G, tuple(gens)), gens=tuple(gens), check=False)


def conjugate_subgroup(g: int, H: Subgroup) -> Subgroup:
    perm = H.parent.conj_perm(g)
    return Subgroup(H.parent, (perm[x] for x in H.elems), check=False)


def _require_same_parent(*subs: Subgroup) -> Group:
    parent = subs[0].parent
    for s in subs[1:]:
        if s.parent.digest != parent.digest:
            raise MixedParents("subgroups live in different parent groups")
    return parent


def is_normal_in(A: Subgroup, B: Subgroup) -> bool:
    """Whether A is a normal subgroup of B (in particular A <= B)."""
    _require_same_parent(A, B)
    if not B.contains(A):
        return False
    G = A.parent
    return all(G.conj(b, a) in A.elem_set
               for b in B.generators() for a in A.generators())


def centralizer(G: Group, X: Subgroup) -> Subgroup:
    gens = X.generators()
    table = G.table
    elems = [g for g in range(G.order)
             if all(table[g][x] == table[x][g] for x in gens)]
    return Subgroup(G, elems, check=False)


def center(G: Group) -> Subgroup:
    return centralizer(G, G.full_subgroup())


def commutator_subgroup(A: Subgroup, B: Subgroup) -> Subgroup:
    """The subgroup generated by all commutators [a,b], a in A, b in B."""
    G = _require_same_parent(A, B)
    table, inv = G.table, G._inv
    comms = set()
    for a in A.elems:
        for b in B.elems:
            comms.add(table[table[a][b]][table[inv[a]][inv[b]]])
    comms.discard(0)
    return generated_subgroup(G, sorted(comms))


def commute_elementwise(A: Subgroup, B: Subgroup) -> bool:
    G = _require_same_parent(A, B)
    table = G.table
    return all(table[a][b] == table[b][a] for a in A.generators() for b in B.elems)


def product_set(A: Subgroup, B: Subgroup) -> Subgroup:
    """The set product AB; for this to be the join one of them should be normal."""
    G = _require_same_parent(A, B)
    table = G.table
    elems = {table[a][b] for a in A.elems for b in B.elems}
    return generated_subgroup(G, sorted(elems))


def intersection(A: Subgroup, B: Subgroup) -> Subgroup:
    _require_same_parent(A, B)
    return Subgroup(A.parent, A.elem_set & B.elem_set, check=False)


def double_cosets(A: Subgroup, G: Group, B: Subgroup) -> list:
    """Least-element representatives of the double cosets A\\G/B, ascending."""
    if A.parent.digest != G.digest or B.parent.digest != G.digest:
        raise MixedParents("double cosets need subgroups of the ambient group")
    table = G.table
    seen = bytearray(G.order)
    reps = []
    for t in range(G.order):
        if seen[t]:
            continue
        reps.append(t)
        for a in A.elems:
            row = table[table[a][t]]
            for b in B.elems:
                seen[row[b]] = 1
    return reps


# -- subgroup lattice ------------------------------------------------------

@dataclass
class SubgroupClass:
    rep: Subgroup
    members: tuple  # all conjugates, sorted


@dataclass
class SubgroupLattice:
    group: Group
    all: tuple        # every subgroup, sorted by (order, elems)
    classes: tuple    # conjugacy classes, sorted by (order, rep.elems)
    by_elems: dict    # frozenset -> Subgroup


def subgroup_lattice(G: Group) -> SubgroupLattice:
    """All subgroups via closure of generated sets over a worklist.

    Seeds with the cyclic subgroups, then repeatedly extends each known
    subgroup by one new generator.  This touches each subgroup once per
    redundant generator but never scans the power set.
    """
    cached = getattr(G, "_lattice", None)
    if cached is not None:
        return cached
    found: dict = {frozenset((0,)): ()}
    frontier = [(frozenset((0,)), ())]
    while frontier:
        nxt = []
        for elems, gens in frontier:
            for g in range(1, G.order):
                if g in elems:
                    continue
                new_gens = gens + (g,)
                new_elems = frozenset(closure_set(G, new_gens))
                if new_elems not in found:
                    found[new_elems] = new_gens
                    nxt.append((new_elems, new_gens))
        frontier = nxt
    subs = [Subgroup(G, elems, gens=gens or None, check=False)
            for elems, gens in found.items()]
    subs.sort()
    by_elems = {s.elem_set: s for s in subs}
    # conjugacy classes via orbit of the element set under generator conjugation
    gens = G.generators()
    assigned: dict = {}
    classes = []
    for s in subs:
        if s.elem_set in assigned:
            continue
        orbit = {s.elem_set}
        queue = [s.elem_set]
        while queue:
            cur = queue.pop()
            for g in gens:
                perm = G.conj_perm(g)
                img = frozenset(perm[x] for x in cur)
                if img not in orbit:
                    orbit.add(img)
                    queue.append(img)
        members = tuple(sorted((by_elems[m] for m in orbit)))
        for m in members:
            assigned[m.elem_set] = True
        classes.append(SubgroupClass(rep=members[0], members=members))
    classes.sort(key=lambda c: (c.rep.order, c.rep.elems))
    lattice = SubgroupLattice(group=G, all=tuple(subs), classes=tuple(classes),
                              by_elems=by_elems)
    G._lattice = lattice
    return lattice


def enumerate_subgroups(G: Group) -> list:
    """Conjugacy classes of subgroups with canonical (least-elems) reps."""
    return list(subgroup_lattice(G).classes)


def normal_subgroups(G: Group) -> list:
    """All normal subgroups, sorted by (order, elems)."""
    return [c.rep for c in subgroup_lattice(G).classes if len(c.members) == 1]


def conjugacy_classes(G: Group) -> tuple:
    """Conjugacy classes of elements as sorted tuples, least member first."""
    cached = getattr(G, "_conj_classes", None)
    if cached is not None:
        return cached
    gens = G.generators()
    seen = [False] * G.order
    classes = []
    for x in range(G.order):
        if seen[x]:
            continue
        orbit = {x}
        queue = [x]
        while queue:
            y = queue.pop()
            for g in gens:
                z = G.conj_perm(g)[y]
                if z not in orbit:
                    orbit.add(z)
                    queue.append(z)
        for y in orbit:
            seen[y] = True
        classes.append(tuple(sorted(orbit)))
    result = tuple(classes)
    G._conj_classes = result
    return result


# -- homomorphisms ---------------------------------------------------------

class Hom:
    """A homomorphism between table groups, stored by its image tuple."""

    __slots__ = ("source", "target", "images")

    def __init__(self, source: Group, target: Group, images: Sequence[int],
                 check: bool = True):
        self.source = source
        self.target = target
        self.images = tuple(int(x) for x in images)
        if check:
            if len(self.images) != source.order:
                raise NotIso("image list has the wrong length")
            if self.images[0] != 0:
                raise NotIso("identity must map to identity")
            st, tt = source.table, target.table
            im = self.images
            for a in range(source.order):
                for b in range(source.order):
                    if im[st[a][b]] != tt[im[a]][im[b]]:
                        raise NotIso(f"not a homomorphism at ({a},{b})")

    def __call__(self, x: int) -> int:
        return self.images[x]

    def is_bijective(self) -> bool:
        return (self.source.order == self.target.order
                and len(set(self.images)) == self.source.order)

    def inverse(self) -> "Hom":
        if not self.is_bijective():
            raise NotIso("cannot invert a non-bijective homomorphism")
        inv = [0] * self.target.order
        for x, y in enumerate(self.images):
            inv[y] = x
        return Hom(self.target, self.source, inv, check=False)

    def __eq__(self, other):
        return (isinstance(other, Hom)
                and self.source.digest == other.source.digest
                and self.target.digest == other.target.digest
                and self.images == other.images)

    def __hash__(self):
        return hash((self.source.digest, self.target.digest, self.images))

    def __repr__(self):
        return f"Hom({self.source.name}->{self.target.name}, {self.images})"


def identity_hom(G: Group) -> Hom:
    return Hom(G, G, range(G.order), check=False)


def compose_homs(f: Hom, g: Hom) -> Hom:
    """f after g."""
    if g.target.digest != f.source.digest:
        raise MixedParents("homomorphisms do not compose")
    return Hom(g.source, f.target, tuple(f.images[x] for x in g.images), check=False)


def isomorphisms(G: Group, H: Group, limit: Optional[int] = None) -> list:
    """All isomorphisms G -> H by generator-image backtracking.

    Candidate images are filtered by element order and tried in index
    order, so the output order is deterministic.  Results are cached.
    """
    cache = getattr(G, "_iso_cache", None)
    if cache is None:
        cache = G._iso_cache = {}
    if H.digest in cache:
        full = cache[H.digest]
        return full if limit is None else full[:limit]
    out: list = []
    if G.order == H.order:
        gens = G.generators()
        g_orders = G.element_orders()
        h_orders = H.element_orders()
        by_order: dict = {}
        for x in range(H.order):
            by_order.setdefault(h_orders[x], []).append(x)
        table_g, table_h = G.table, H.table

        def extend(partial: dict, used: set, g: int, h: int):
            """Close partial | {g:h} under products; None on conflict."""
            m = dict(partial)
            used2 = set(used)
            if h in used2:
                return None
            m[g] = h
            used2.add(h)
            queue = [g]
            dom = list(partial)
            while queue:
                x = queue.pop()
                for y in list(dom) + [x]:
                    for a, b in ((x, y), (y, x)):
                        z = table_g[a][b]
                        w = table_h[m[a]][m[b]]
                        if z in m:
                            if m[z] != w:
                                return None
                        else:
                            if w in used2:
                                return None
                            m[z] = w
                            used2.add(w)
                            queue.append(z)
                dom.append(x)
            return m, used2

        def search(i: int, partial: dict, used: set):
            if limit is not None and len(out) >= limit:
                return
            if i == len(gens):
                if len(partial) == G.order:
                    images = tuple(partial[x] for x in range(G.order))
                    out.append(Hom(G, H, images, check=False))
                return
            g = gens[i]
            for h in by_order.get(g_orders[g], ()):
                ext = extend(partial, used, g, h)
                if ext is not None:
                    search(i + 1, ext[0], ext[1])

        search(0, {0: 0}, {0})
    if limit is None:
        cache[H.digest] = out
        return list(out)
    return out


def are_isomorphic(G: Group, H: Group) -> bool:
    return bool(isomorphisms(G, H, limit=1))


@dataclass
class AutomorphismGroup:
    group: Group      # composition table of the automorphisms
    homs: tuple       # homs[i] is the automorphism with table index i


def automorphism_group(G: Group) -> AutomorphismGroup:
    """Aut(G) as a table group; index 0 is the identity automorphism."""
    cached = getattr(G, "_aut_group", None)
    if cached is not None:
        return cached
    homs = sorted(isomorphisms(G, G), key=lambda h: h.images)
    index = {h.images: i for i, h in enumerate(homs)}
    n = len(homs)
    table = [[0] * n for _ in range(n)]
    for i, f in enumerate(homs):
        for j, g in enumerate(homs):
            table[i][j] = index[tuple(f.images[x] for x in g.images)]
    group = Group(table, name=f"Aut({G.name})", max_order=max(n, order_cap()))
    result = AutomorphismGroup(group=group, homs=tuple(homs))
    G._aut_group = result
    return result


# -- constructors ------------------------------------------------------------


def group_from_table(table, name: str = "G", max_order: Optional[int] = None,
                     spec=None) -> Group:
    return Group(table, name=name, max_order=max_order, spec=spec)


def group_from_perm_gens(perm_gens, name: str = "G",
                         max_order: Optional[int] = None, spec=None) -> Group:
    """Close a permutation generating set; elements are ordered with the
    identity first and the rest lexicographically by image tuple."""
    gens = [tuple(int(x) for x in p) for p in perm_gens]
    degree = len(gens[0]) if gens else 1
    for p in gens:
        if sorted(p) != list(range(degree)):
            raise NotClosed(f"{p} is not a permutation")
    ident = tuple(range(degree))
    elems = {ident}
    frontier = [ident]
    cap = order_cap() if max_order is None else max_order
    while frontier:
        nxt = []
        for p in frontier:
            for q in gens:
                r = tuple(p[q[x]] for x in range(degree))
                if r not in elems:
                    elems.add(r)
                    nxt.append(r)
                    if len(elems) > cap:
                        raise OrderLimitExceeded(
                            f"permutation closure exceeds cap {cap}")
        frontier = nxt
    ordered = [ident] + sorted(e for e in elems if e != ident)
    index = {p: i for i, p in enumerate(ordered)}
    n = len(ordered)
    table = [[index[tuple(p[q[x]] for x in range(degree))] for q in ordered]
             for p in ordered]
    G = Group(table, name=name, perm_gens=tuple(gens), max_order=cap, spec=spec)
    G.gens = tuple(index[p] for p in gens)
    return G


def cyclic(n: int, max_order: Optional[int] = None) -> Group:
    if n < 1:
        raise NotClosed("cyclic group needs order >= 1")
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    G = Group(table, name=f"C{n}", max_order=max_order, spec=("cyclic", n))
    G.gens = (1,) if n > 1 else ()
    return G


def dihedral(order: int, max_order: Optional[int] = None) -> Group:
    """Dihedral group of the given (even, >= 2) order: <a, b | a^n, b^2, bab=a^-1>.

    Element i + n*j encodes a^i b^j with n = order/2.
    """
    if order < 2 or order % 2:
        raise NotClosed("dihedral group needs even order >= 2")
    n = order // 2

    def mul(e1, e2):
        i, j = e1 % n, e1 // n
        k, l = e2 % n, e2 // n
        return (i + (k if j == 0 else -k)) % n + n * ((j + l) % 2)

    table = [[mul(a, b) for b in range(order)] for a in range(order)]
    G = Group(table, name=f"D{order}", max_order=max_order, spec=("dihedral", order))
    G.gens = (1, n) if n > 1 else (n,)
    return G


def quaternion(order: int = 8, max_order: Optional[int] = None) -> Group:
    """The quaternion group <x, y | x^4, y x y^-1 = x^-1, x^2 = y^2>.

    Element i + 4*j encodes x^i y^j.  Only order 8 is supported.
    """
    if order != 8:
        raise NotClosed("only the order-8 quaternion group is built in")

    def mul(e1, e2):
        i, j = e1 % 4, e1 // 4
        k, l = e2 % 4, e2 // 4
        i2 = (i + (k if j == 0 else -k)) % 4
        if j and l:
            return (i2 + 2) % 4
        return i2 + 4 * ((j + l) % 2)

    table = [[mul(a, b) for b in range(8)] for a in range(8)]
    G = Group(table, name="Q8", max_order=max_order, spec=("quaternion", 8))
    G.gens = (1, 4)
    return G


def symmetric(n: int, max_order: Optional[int] = None) -> Group:
    """Symmetric group on n points; elements sorted lexicographically."""
    if n < 1:
        raise NotClosed("symmetric group needs n >= 1")
    perms = sorted(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    size = len(perms)
    cap = order_cap() if max_order is None else max_order
    if size > cap:
        raise OrderLimitExceeded(f"S{n} has order {size} > cap {cap}")
    table = [[index[tuple(p[q[x]] for x in range(n))] for q in perms]
             for p in perms]
    G = Group(table, name=f"S{n}", max_order=cap, spec=("symmetric", n))
    if n >= 2:
        transposition = tuple([1, 0] + list(range(2, n)))
        ncycle = tuple(list(range(1, n)) + [0])
        G.gens = tuple(sorted({index[transposition], index[ncycle]}))
    else:
        G.gens = ()
    return G


_PRODUCT_REGISTRY: dict = {}


def direct_product(G: Group, H: Group, max_order: Optional[int] = None) -> Group:
    """The direct product with (g, h) stored at index g*|H| + h.

    Results are interned so every caller sees the same ambient object.
    """
    key = (G.digest, H.digest)
    cached = _PRODUCT_REGISTRY.get(key)
    if cached is not None:
        return cached
    ho = H.order
    n = G.order * ho
    cap = order_cap() if max_order is None else max_order
    if n > cap:
        raise OrderLimitExceeded(f"product order {n} exceeds cap {cap}")
    tg, th = G.table, H.table
    table = [[0] * n for _ in range(n)]
    for a in range(G.order):
        for b in range(ho):
            row = table[a * ho + b]
            ra, rb = tg[a], th[b]
            for c in range(G.order):
                rc = ra[c] * ho
                for d in range(ho):
                    row[c * ho + d] = rc + rb[d]
    spec = ("product", G.spec, H.spec) if G.spec and H.spec else None
    P = Group(table, name=f"{G.name}x{H.name}", factors=(G, H),
              max_order=cap, spec=spec)
    _PRODUCT_REGISTRY[key] = P
    return P


def product_projections(P: Group) -> tuple:
    """(p1, p2) as Homs from the product onto its factors."""
    from .errors import NotAProduct
    if P.factors is None:
        raise NotAProduct(f"{P.name} carries no factor metadata")
    G, H = P.factors
    ho = H.order
    p1 = Hom(P, G, tuple(x // ho for x in range(P.order)), check=False)
    p2 = Hom(P, H, tuple(x % ho for x in range(P.order)), check=False)
    return p1, p2


def product_injections(P: Group) -> tuple:
    """(i1, i2) as Homs from the factors into the product."""
    from .errors import NotAProduct
    if P.factors is None:
        raise NotAProduct(f"{P.name} carries no factor metadata")
    G, H = P.factors
    ho = H.order
    i1 = Hom(G, P, tuple(g * ho for g in range(G.order)), check=False)
    i2 = Hom(H, P, tuple(range(ho)), check=False)
    return i1, i2


def quotient(G: Group, N: Subgroup) -> tuple:
    """(Q, pi): the quotient on least-element coset representatives.

    Raises NotNormal unless N is normal in G.
    """
    if N.parent.digest != G.digest:
        raise MixedParents("subgroup of a different group")
    cache = getattr(G, "_quotient_cache", None)
    if cache is None:
        cache = G._quotient_cache = {}
    hit = cache.get(N.elems)
    if hit is not None:
        return hit
    if not N.is_normal():
        raise NotNormal(f"subgroup {N.elems} is not normal in {G.name}")
    table = G.table
    rep_of = [-1] * G.order
    reps = []
    for g in range(G.order):
        if rep_of[g] >= 0:
            continue
        reps.append(g)
        for x in N.elems:
            rep_of[table[g][x]] = g
    idx = {r: i for i, r in enumerate(reps)}
    qn = len(reps)
    qtable = [[idx[rep_of[table[reps[i]][reps[j]]]] for j in range(qn)]
              for i in range(qn)]
    name = f"{G.name}/{N.order}"
    Q = Group(qtable, name=name)
    Q._coset_reps = tuple(reps)
    pi = Hom(G, Q, tuple(idx[rep_of[g]] for g in range(G.order)), check=False)
    result = (Q, pi)
    cache[N.elems] = result
    return result


def as_group(P: Subgroup) -> tuple:
    """(S, to_parent): the subgroup as a standalone group plus the index map."""
    G = P.parent
    cache = getattr(G, "_as_group_cache", None)
    if cache is None:
        cache = G._as_group_cache = {}
    hit = cache.get(P.elems)
    if hit is not None:
        return hit
    idx = {e: i for i, e in enumerate(P.elems)}
    table = [[idx[G.table[a][b]] for b in P.elems] for a in P.elems]
    S = Group(table, name=f"{G.name}[{P.order}]", validate=False)
    result = (S, P.elems)
    cache[P.elems] = result
    return result


class CosetView:
    """The quotient P/K of a subgroup pair, with maps to and from the parent.

    ``group`` is the quotient as a table group, ``idx(g)`` the coset index
    of a parent element g in P (-1 outside P), ``rep(i)`` the least parent
    element representing coset i.
    """

    __slots__ = ("parent", "P", "K", "group", "_idx", "_reps")

    def __init__(self, parent: Group, P: Subgroup, K: Subgroup):
        if not is_normal_in(K, P):
            raise NotNormal("kernel part is not normal in its subgroup")
        self.parent = parent
        self.P = P
        self.K = K
        S, to_parent = as_group(P)
        sub_idx = {e: i for i, e in enumerate(to_parent)}
        K_in_S = Subgroup(S, (sub_idx[x] for x in K.elems), check=False)
        Q, pi = quotient(S, K_in_S)
        self.group = Q
        idx = [-1] * parent.order
        for e, i in sub_idx.items():
            idx[e] = pi.images[i]
        self._idx = tuple(idx)
        reps = [-1] * Q.order
        for e in P.elems:
            c = idx[e]
            if reps[c] < 0:
                reps[c] = e
        self._reps = tuple(reps)

    def idx(self, g: int) -> int:
        return self._idx[g]

    def rep(self, i: int) -> int:
        return self._reps[i]


def coset_structure(parent: Group, P: Subgroup, K: Subgroup) -> CosetView:
    cache = getattr(parent, "_coset_cache", None)
    if cache is None:
        cache = parent._coset_cache = {}
    key = (P.elems, K.elems)
    hit = cache.get(key)
    if hit is None:
        hit = CosetView(parent, P, K)
        cache[key] = hit
    return hit

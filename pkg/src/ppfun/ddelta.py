"""D^Delta-pairs (L, u), their automorphism data, and the vanishing test for essential algebras."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Union

from .catalogue import SemidirectProduct, iso_label, p_group_catalogue, semidirect
from .errors import CapExceeded
from .groups import (PermGroup, Subgroup, class_index, closure, conjugacy_classes, is_p_power, normalizer,
                     p_part, prime_divisors, subgroup_generated, sylow)
from .homs import AutGroup, AutMap, automorphism_group, compose_images, iter_isomorphisms


@dataclass(frozen=True, eq=False)
class DDeltaPair:
    """A p-group L with an automorphism u of p'-order."""

    L: PermGroup
    u: AutMap
    p: int
    label: str = ""

    @property
    def u_order(self) -> int:
        return self.u.order()

    def describe(self) -> str:
        name = self.label or self.L.name or f"L{self.L.order}"
        return f"({name}, u of order {self.u_order})"

    @cached_property
    def aut_data(self) -> "PairAutData":
        return pair_aut(self)


def identity_aut(L: PermGroup) -> AutMap:
    return AutMap(L, tuple(range(L.order)))


def is_ddelta_pair(L: PermGroup, u: AutMap, p: int) -> bool:
    return is_p_power(L.order, p) and math.gcd(u.order(), p) == 1


class OutGroup:
    """A finite group given by a sub-table of Out(L<u>).

    Local element 0 is the identity; ``labels`` name the generators as they
    appear in W files.
    """

    def __init__(self, members: list[int], full_mul: list[list[int]]):
        self.members = sorted(members)
        self.local = {m: i for i, m in enumerate(self.members)}
        self.order = len(self.members)
        self.mul = [[self.local[full_mul[a][b]] for b in self.members] for a in self.members]
        gens: list[int] = []
        span = {0}
        for x in range(self.order):
            if x in span:
                continue
            gens.append(x)
            span = self._close(gens)
            if len(span) == self.order:
                break
        self.generators = gens
        self.labels = [f"g{i + 1}" for i in range(len(gens))]

    def _close(self, gens):
        out = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.mul[g][x]
                    if y not in out:
                        out.add(y)
                        nxt.append(y)
            frontier = nxt
        return out

    @cached_property
    def words(self) -> list[list[int]]:
        """``words[x]`` is a list of generator positions whose left-to-right product is x."""
        out: list[list[int] | None] = [None] * self.order
        out[0] = []
        queue = deque([0])
        while queue:
            x = queue.popleft()
            for pos, g in enumerate(self.generators):
                y = self.mul[x][g]
                if out[y] is None:
                    out[y] = out[x] + [pos]
                    queue.append(y)
        return out  # type: ignore[return-value]


@dataclass
class PairAutData:
    pair: DDeltaPair
    product: SemidirectProduct
    aut_Lu: AutGroup
    aut_pair: list[tuple[int, ...]]
    out_pair_order: int
    out_pair_reps: list[tuple[int, ...]]
    out_pair_members: list[int]          # indices into aut_Lu.out_reps
    out_pair_group: OutGroup
    restriction: dict[tuple[int, ...], list[int]] = field(repr=False)  # aut of L (as tuple) -> indices into aut_Lu.auts

    @property
    def Lu(self) -> PermGroup:
        return self.product.group

    def restrict(self, phi: tuple[int, ...]) -> tuple[int, ...]:
        """Restriction of an automorphism of L<u> to L, as an automorphism of L."""
        eL = self.product.embed_L
        back = {g: i for i, g in enumerate(eL)}
        return tuple(back[phi[eL[i]]] for i in range(len(eL)))

    def extensions(self, alpha: tuple[int, ...]) -> list[int]:
        """Indices (into ``aut_Lu.auts``) of automorphisms of L<u> restricting to ``alpha`` on L."""
        return self.restriction.get(tuple(alpha), [])

    def out_class_of_restriction(self, alpha: tuple[int, ...]) -> int | None:
        ext = self.extensions(alpha)
        if not ext:
            return None
        classes = {self.aut_Lu.out_of[self.aut_Lu.auts[i]] for i in ext}
        assert len(classes) == 1, "extensions of one automorphism of L must be congruent mod Inn"
        return classes.pop()

    def inner_restrictions(self) -> set[tuple[int, ...]]:
        return {self.restrict(i) for i in self.aut_Lu.inner}


_PAIR_CACHE: dict[int, PairAutData] = {}


def pair_aut(pair: DDeltaPair) -> PairAutData:
    """Aut(L,u) (automorphisms of L<u> sending u to a conjugate) and Out(L,u) = Aut(L,u)/Inn(L<u>)."""
    key = id(pair)
    if key in _PAIR_CACHE and _PAIR_CACHE[key].pair is pair:
        return _PAIR_CACHE[key]
    prod = semidirect(pair.L, pair.u)
    Lu = prod.group
    A = automorphism_group(Lu)
    cls = class_index(Lu)
    u = prod.u
    aut_pair = [a for a in A.auts if cls[a[u]] == cls[u]]
    members = sorted({A.out_of[a] for a in aut_pair})
    restriction: dict[tuple[int, ...], list[int]] = {}
    data = PairAutData(pair, prod, A, aut_pair, len(aut_pair) // A.inner_order,
                       [A.out_reps[k] for k in members], members, OutGroup(members, A.out_mul), restriction)
    for k, a in enumerate(A.auts):
        restriction.setdefault(data.restrict(a), []).append(k)
    _PAIR_CACHE[key] = data
    return data


def pairs_isomorphic(a: DDeltaPair, b: DDeltaPair) -> bool:
    """(L,u) ~ (L',u') iff some isomorphism L<u> -> L'<u'> carries u to a conjugate of u'."""
    if a.L.order != b.L.order or a.u_order != b.u_order or a.p != b.p:
        return False
    A = pair_aut(a).product
    B = pair_aut(b).product
    cls = class_index(B.group)
    target = cls[B.u]
    for phi in iter_isomorphisms(A.group, B.group):
        if cls[phi[A.u]] == target:
            return True
    return False


def enumerate_ddelta_pairs(p: int, max_order: int) -> list[DDeltaPair]:
    """Representatives of D^Delta-pairs (L, u) with L in the p-group catalogue, |L| <= max_order.

    Within one L, pairs are isomorphic iff the automorphisms are conjugate in Aut(L);
    representatives are the least automorphisms (as image tuples) of their classes.
    """
    out = []
    entries = p_group_catalogue(p, max_order)
    entries.sort(key=lambda e: (e[2].order, e[0]))
    for _, name, L in entries:
        A = automorphism_group(L, cap=max(L.order, 500))
        gens = A.generators
        seen: set[tuple[int, ...]] = set()
        reps = []
        for a in A.auts:
            if a in seen or math.gcd(AutMap(L, a).order(), p) != 1:
                continue
            orbit = {a}
            frontier = [a]
            while frontier:
                nxt = []
                for x in frontier:
                    for g in gens:
                        ginv = AutMap(L, g).inverse().images
                        y = compose_images(compose_images(g, x), ginv)
                        if y not in orbit:
                            orbit.add(y)
                            nxt.append(y)
                frontier = nxt
            seen |= orbit
            reps.append(min(orbit))
        for r in sorted(reps):
            out.append(DDeltaPair(L, AutMap(L, r), p, name))
    return out


# ---------------------------------------------------------------------------
# vanishing classification

VANISHING_REASONS = ("NoNormalSylowComplementForm", "KNotElementaryOrSplitFailure", "KNotCyclic", "KNotFaithful")


@dataclass
class NonVanishing:
    L: PermGroup
    u: AutMap
    K_order: int
    P: Subgroup
    K: Subgroup
    k: int                 # generator of K (element index of G)
    embed_L: list[int]     # L index -> G index

    @property
    def kind(self) -> str:
        return "NonVanishing"


@dataclass
class Vanishing:
    reason: str

    @property
    def kind(self) -> str:
        return "Vanishing"


EssentialSupportReport = Union[NonVanishing, Vanishing]


def find_complement(G: PermGroup, P: Subgroup, p: int) -> Subgroup | None:
    """A p'-subgroup K with |K| = |G:P| (so PK = G, P n K = 1), found by exhaustive growth."""
    m = G.order // P.order
    if m == 1:
        return G.trivial
    pprime = [x for x in range(G.order) if G.element_orders[x] % p != 0]
    for x in pprime:
        if G.element_orders[x] == m:
            return subgroup_generated(G, [x])
    seen: set[frozenset[int]] = set()
    frontier = [frozenset([0])]
    while frontier:
        nxt = []
        for H in frontier:
            for x in pprime:
                if x in H:
                    continue
                K = frozenset(closure(G, list(H) + [x]))
                if K in seen or K.__len__() % p == 0 or m % len(K):
                    continue
                seen.add(K)
                if len(K) == m:
                    return Subgroup(G, K)
                nxt.append(K)
        frontier = sorted(nxt, key=lambda s: (len(s), sorted(s)))
    return None


def is_elementary(G: PermGroup, K: Subgroup) -> bool:
    """K = C x Q with C cyclic and Q a q-group: nilpotent with at most one non-cyclic Sylow."""
    noncyclic = 0
    for q in prime_divisors(K.order):
        S = sylow(G, q, within=K)
        if not all(G.conj(k, s) in S.members for k in K.members for s in S.members):
            return False
        if max(G.element_orders[s] for s in S.members) != S.order:
            noncyclic += 1
    return noncyclic <= 1


def essential_support(G: PermGroup, p: int) -> EssentialSupportReport:
    """Decide whether E(G) is nonzero for a coefficient ring in which all primes other than p are invertible."""
    P = sylow(G, p)
    if not P.is_normal():
        return Vanishing("NoNormalSylowComplementForm")
    K = find_complement(G, P, p)
    if K is None or not is_elementary(G, K):
        return Vanishing("KNotElementaryOrSplitFailure")
    if max(G.element_orders[k] for k in K.members) != K.order:
        return Vanishing("KNotCyclic")
    m = G.mul
    for k in K.members:
        if k != 0 and all(m[k][x] == m[x][k] for x in P.members):
            return Vanishing("KNotFaithful")
    k = min(x for x in K.members if G.element_orders[x] == K.order)
    L, embed = P.as_group(name=None)
    back = {g: i for i, g in enumerate(embed)}
    u = AutMap(L, tuple(back[G.conj(k, embed[i])] for i in range(L.order)))
    L.name = iso_label(L)
    return NonVanishing(L, u, K.order, P, K, k, embed)

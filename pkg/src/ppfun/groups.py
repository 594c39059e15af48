"""Exhaustive permutation groups.

Every group is fully enumerated; elements are sorted lexicographically by
their image tuples, so index 0 is always the identity and "the least element"
of any set is the one with the smallest index.  Everything downstream works
with element indices and the multiplication table.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import ClosureExceedsCap, InvalidPermutation
from .perm import Perm

DEFAULT_ORDER_CAP = 2000


def p_part(n: int, p: int) -> int:
    out = 1
    while n % p == 0:
        n //= p
        out *= p
    return out


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, math.isqrt(n) + 1))


def is_p_power(n: int, p: int) -> bool:
    return p_part(n, p) == n


def prime_divisors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


class PermGroup:
    """A finite group given by permutations, with its full element list."""

    def __init__(self, degree: int, generators: Sequence[Perm], elements: Sequence[Perm], name: str | None = None):
        self.degree = degree
        self.generators = tuple(generators)
        self.elements: tuple[Perm, ...] = tuple(elements)
        self.order = len(self.elements)
        self.index = {e: i for i, e in enumerate(self.elements)}
        self.name = name
        self.gen_idx = tuple(self.index[g] for g in self.generators)

    def __repr__(self):
        label = self.name or f"degree {self.degree}"
        return f"<PermGroup {label}, order {self.order}>"

    def __len__(self):
        return self.order

    @cached_property
    def mul(self) -> list[list[int]]:
        """``mul[i][j]`` is the index of ``elements[i] * elements[j]``."""
        if self.degree == 0 or self.order == 1:
            return [[0]]
        E = np.array(self.elements, dtype=np.int32)
        key = {row.tobytes(): j for j, row in enumerate(E)}
        table = []
        for i in range(self.order):
            prod = E[i][E]
            table.append([key[row.tobytes()] for row in prod])
        return table

    @cached_property
    def inv(self) -> list[int]:
        m = self.mul
        out = [0] * self.order
        for i in range(self.order):
            out[i] = m[i].index(0)
        return out

    @cached_property
    def element_orders(self) -> list[int]:
        m = self.mul
        out = [1] * self.order
        for i in range(1, self.order):
            k, x = 1, i
            while x != 0:
                x = m[x][i]
                k += 1
            out[i] = k
        return out

    @cached_property
    def exponent(self) -> int:
        return math.lcm(*self.element_orders)

    def conj(self, g: int, x: int) -> int:
        """``g x g^-1``."""
        m = self.mul
        return m[m[g][x]][self.inv[g]]

    def power(self, x: int, k: int) -> int:
        k %= self.element_orders[x]
        out = 0
        m = self.mul
        for _ in range(k):
            out = m[out][x]
        return out

    def cyclic_subgroup_elements(self, x: int) -> list[int]:
        """``[x^0, x^1, ...]`` up to the order of ``x``."""
        out = [0]
        y = x
        while y != 0:
            out.append(y)
            y = self.mul[y][x]
        return out

    def perm(self, i: int) -> Perm:
        return self.elements[i]

    @cached_property
    def whole(self) -> "Subgroup":
        return Subgroup(self, frozenset(range(self.order)))

    @cached_property
    def trivial(self) -> "Subgroup":
        return Subgroup(self, frozenset([0]))

    @cached_property
    def words(self) -> list[tuple[int, int]]:
        """Breadth-first spanning tree: ``words[x] = (gen position, predecessor)``.

        ``elements[x] == generators[pos] * elements[pred]``; the identity maps to
        ``(-1, 0)``.  Used to evaluate representations on arbitrary elements.
        """
        out: list[tuple[int, int] | None] = [None] * self.order
        out[0] = (-1, 0)
        queue = deque([0])
        while queue:
            x = queue.popleft()
            for pos, g in enumerate(self.gen_idx):
                y = self.mul[g][x]
                if out[y] is None:
                    out[y] = (pos, x)
                    queue.append(y)
        return out  # type: ignore[return-value]

    @cached_property
    def bfs_order(self) -> list[int]:
        """Element indices in an order where every predecessor precedes its successor."""
        order = [0]
        seen = {0}
        queue = deque([0])
        while queue:
            x = queue.popleft()
            for g in self.gen_idx:
                y = self.mul[g][x]
                if y not in seen:
                    seen.add(y)
                    order.append(y)
                    queue.append(y)
        return order


@dataclass(frozen=True)
class Subgroup:
    """A subgroup stored as a set of element indices of ``parent``."""

    parent: PermGroup = field(compare=False, repr=False)
    members: frozenset[int]

    @property
    def order(self) -> int:
        return len(self.members)

    def __len__(self):
        return len(self.members)

    def __contains__(self, x: int) -> bool:
        return x in self.members

    def __iter__(self):
        return iter(sorted(self.members))

    @cached_property
    def key(self) -> tuple[int, ...]:
        return tuple(sorted(self.members))

    def __lt__(self, other: "Subgroup") -> bool:
        return (self.order, self.key) < (other.order, other.key)

    def is_normal(self) -> bool:
        G = self.parent
        return all(G.conj(g, h) in self.members for g in G.gen_idx for h in self.members)

    def conjugate(self, g: int) -> "Subgroup":
        G = self.parent
        return Subgroup(G, frozenset(G.conj(g, h) for h in self.members))

    def as_group(self, name: str | None = None) -> tuple[PermGroup, list[int]]:
        """Return the subgroup as a standalone group and the embedding (new index -> parent index)."""
        G = self.parent
        perms = sorted(G.elements[i] for i in self.members)
        H = PermGroup(G.degree, generating_set_perms(G, self.members), perms, name=name)
        return H, [G.index[e] for e in H.elements]


def generating_set_perms(G: PermGroup, members: Iterable[int]) -> list[Perm]:
    return [G.elements[i] for i in generating_set(G, members)]


def generating_set(G: PermGroup, members: Iterable[int]) -> list[int]:
    """Greedy small generating set: repeatedly add the highest-order element not yet covered."""
    members = sorted(members, key=lambda i: (-G.element_orders[i], i))
    target = len(members)
    gens: list[int] = []
    current = {0}
    for x in members:
        if len(current) == target:
            break
        if x in current:
            continue
        gens.append(x)
        current = closure(G, gens)
    return gens


def closure(G: PermGroup, gens: Iterable[int]) -> set[int]:
    gens = [g for g in gens if g != 0]
    out = {0}
    frontier = [0]
    m = G.mul
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = m[g][x]
                if y not in out:
                    out.add(y)
                    nxt.append(y)
        frontier = nxt
    return out


def subgroup_generated(G: PermGroup, gens: Iterable[int]) -> Subgroup:
    return Subgroup(G, frozenset(closure(G, gens)))


def group_from_generators(degree: int, gens: Sequence[Perm | Sequence[int]], cap: int = DEFAULT_ORDER_CAP,
                          name: str | None = None) -> PermGroup:
    """Close ``gens`` under composition.

    ``gens`` may be :class:`Perm` objects or 0-based image sequences.
    """
    perms = []
    for g in gens:
        p = g if isinstance(g, Perm) else Perm(g)
        if len(p) != degree:
            raise InvalidPermutation(f"generator {p} has degree {len(p)}, expected {degree}")
        perms.append(p)
    ident = Perm.identity(degree)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in perms:
                y = g * x
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if len(seen) > cap:
                        raise ClosureExceedsCap(f"group order exceeds cap {cap}")
        frontier = nxt
    return PermGroup(degree, perms, sorted(seen), name=name)


@dataclass(frozen=True)
class ConjClassRec:
    representative: int
    size: int
    element_order: int
    members: frozenset[int]


def conjugacy_classes(G: PermGroup) -> list[ConjClassRec]:
    """Classes sorted by representative index; each representative is the least member."""
    cached = G.__dict__.get("_classes")
    if cached is not None:
        return cached
    seen = [False] * G.order
    out = []
    for x in range(G.order):
        if seen[x]:
            continue
        orbit = {x}
        frontier = [x]
        while frontier:
            nxt = []
            for y in frontier:
                for g in G.gen_idx:
                    z = G.conj(g, y)
                    if z not in orbit:
                        orbit.add(z)
                        nxt.append(z)
            frontier = nxt
        for y in orbit:
            seen[y] = True
        out.append(ConjClassRec(x, len(orbit), G.element_orders[x], frozenset(orbit)))
    G.__dict__["_classes"] = out
    return out


def class_index(G: PermGroup) -> list[int]:
    """``class_index(G)[x]`` is the position of the class of ``x`` in :func:`conjugacy_classes`."""
    cached = G.__dict__.get("_class_index")
    if cached is None:
        cached = [0] * G.order
        for k, c in enumerate(conjugacy_classes(G)):
            for x in c.members:
                cached[x] = k
        G.__dict__["_class_index"] = cached
    return cached


def centralizer(G: PermGroup, S: Iterable[int]) -> Subgroup:
    S = list(S)
    m = G.mul
    return Subgroup(G, frozenset(g for g in range(G.order) if all(m[g][s] == m[s][g] for s in S)))


def normalizer(G: PermGroup, H: Subgroup) -> Subgroup:
    gens = generating_set(G, H.members)
    mem = H.members
    return Subgroup(G, frozenset(g for g in range(G.order) if all(G.conj(g, h) in mem for h in gens)))


def center(G: PermGroup) -> Subgroup:
    return centralizer(G, G.gen_idx)


def subgroup_center(H: Subgroup) -> Subgroup:
    G = H.parent
    m = G.mul
    return Subgroup(G, frozenset(z for z in H.members if all(m[z][h] == m[h][z] for h in H.members)))


def is_p_element(G: PermGroup, x: int, p: int) -> bool:
    return is_p_power(G.element_orders[x], p)


def is_p_regular(G: PermGroup, x: int, p: int) -> bool:
    return G.element_orders[x] % p != 0


def sylow(G: PermGroup, p: int, within: Subgroup | None = None) -> Subgroup:
    """A Sylow p-subgroup of ``within`` (default: all of G), grown one p-element at a time."""
    H = within or G.whole
    target = p_part(H.order, p)
    P = G.trivial
    while P.order < target:
        N = {g for g in normalizer(G, P).members if g in H.members}
        x = next(g for g in sorted(N) if g not in P.members and is_p_element(G, g, p))
        P = subgroup_generated(G, list(P.members) + [x])
    return P


def element_pp_decomposition(G: PermGroup, x: int, p: int) -> tuple[int, int]:
    """Return ``(x_p, x_p')``: commuting powers of x with p-power and p'-order, multiplying to x."""
    n = G.element_orders[x]
    a = p_part(n, p)
    b = n // a
    # CRT: e = 1 mod a, e = 0 mod b  gives x^e the p-part
    if a == 1:
        return 0, x
    if b == 1:
        return x, 0
    e = (b * pow(b, -1, a)) % n
    xp = G.power(x, e)
    xq = G.power(x, (1 - e) % n)
    return xp, xq


def subgroups_of_p_group(G: PermGroup, S: Subgroup) -> list[Subgroup]:
    """All subgroups of the p-subgroup S, by cyclic extension along normal index-p steps."""
    found = {G.trivial.members: G.trivial}
    frontier = [G.trivial]
    p = _prime_of(S.order)
    while frontier:
        nxt = []
        for H in frontier:
            hs = H.members
            gens = generating_set(G, hs)
            for x in sorted(S.members):
                if x in hs or G.power(x, p) not in hs:
                    continue
                if not all(G.conj(x, h) in hs for h in gens):
                    continue
                K = subgroup_generated(G, list(gens) + [x])
                if K.members not in found:
                    found[K.members] = K
                    nxt.append(K)
        frontier = nxt
    return sorted(found.values())


def _prime_of(n: int) -> int:
    ps = prime_divisors(n)
    return ps[0] if ps else 1


def conjugacy_orbit(H: Subgroup) -> set[frozenset[int]]:
    G = H.parent
    out = {H.members}
    frontier = [H]
    while frontier:
        nxt = []
        for K in frontier:
            for g in G.gen_idx:
                C = K.conjugate(g)
                if C.members not in out:
                    out.add(C.members)
                    nxt.append(C)
        frontier = nxt
    return out


def p_subgroups_up_to_conjugacy(G: PermGroup, p: int) -> list[Subgroup]:
    """One representative per conjugacy class of p-subgroups, including the trivial one.

    The representative of a class is its least member in (order, sorted members)
    order, taken over the whole conjugacy class so the output is canonical.
    """
    cached = G.__dict__.setdefault("_psub", {})
    if p in cached:
        return cached[p]
    S = sylow(G, p)
    reps = []
    covered: set[frozenset[int]] = set()
    for H in subgroups_of_p_group(G, S):
        if H.members in covered:
            continue
        orbit = conjugacy_orbit(H)
        covered |= orbit
        best = min((Subgroup(G, o) for o in orbit))
        reps.append(best)
    reps.sort()
    cached[p] = reps
    return reps


def product_set(G: PermGroup, A: Iterable[int], B: Iterable[int]) -> frozenset[int]:
    B = list(B)
    m = G.mul
    return frozenset(m[a][b] for a in A for b in B)


@dataclass
class Quotient:
    group: PermGroup
    projection: list[int]  # parent element index -> quotient element index
    cosets: list[frozenset[int]]


def quotient(H: Subgroup, N: Subgroup) -> Quotient:
    """H/N for N normal in H, realised by the left action of H on the cosets hN."""
    G = H.parent
    m = G.mul
    cosets: list[frozenset[int]] = []
    where: dict[int, int] = {}
    for h in sorted(H.members):
        if h in where:
            continue
        c = frozenset(m[h][n] for n in N.members)
        for x in c:
            where[x] = len(cosets)
        cosets.append(c)
    reps = [min(c) for c in cosets]
    def action(h):
        return Perm([where[m[h][r]] for r in reps], check=False)
    gens = [action(h) for h in generating_set(G, H.members)]
    if not gens:
        gens = [Perm.identity(len(cosets))]
    Q = group_from_generators(len(cosets), gens)
    proj = {}
    for h in H.members:
        proj[h] = Q.index[action(h)]
    return Quotient(Q, [proj.get(i, -1) for i in range(G.order)], cosets)

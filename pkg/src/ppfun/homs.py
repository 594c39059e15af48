"""Isomorphisms and automorphism groups by generator-image backtracking."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .errors import CapExceeded
from .groups import PermGroup, Subgroup, center, generating_set

DEFAULT_AUT_CAP = 500


@dataclass(frozen=True)
class AutMap:
    """A homomorphism given by element-index images.

    ``images[i]`` is the codomain index of the image of domain element ``i``.
    For automorphisms the codomain is the domain.
    """

    domain: PermGroup
    images: tuple[int, ...]

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __hash__(self):
        return hash(self.images)

    def __eq__(self, other):
        return isinstance(other, AutMap) and self.images == other.images

    def compose(self, other: "AutMap") -> "AutMap":
        """``self o other`` (apply ``other`` first)."""
        return AutMap(other.domain, tuple(self.images[j] for j in other.images))

    def inverse(self) -> "AutMap":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return AutMap(self.domain, tuple(inv))

    def order(self) -> int:
        k, cur = 1, self.images
        ident = tuple(range(len(self.images)))
        while cur != ident:
            cur = tuple(self.images[j] for j in cur)
            k += 1
        return k

    def is_homomorphism(self, codomain: PermGroup | None = None) -> bool:
        G = self.domain
        H = codomain or G
        im = self.images
        m, mh = G.mul, H.mul
        return all(im[m[x][y]] == mh[im[x]][im[y]] for x in range(G.order) for y in range(G.order))


def compose_images(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    return tuple(a[j] for j in b)


def inner(G: PermGroup, g: int) -> tuple[int, ...]:
    return tuple(G.conj(g, x) for x in range(G.order))


def _order_census(G: PermGroup, members: Iterable[int]) -> Counter:
    return Counter(G.element_orders[x] for x in members)


def iter_isomorphisms(L: PermGroup, G: PermGroup, target: Iterable[int] | None = None):
    """Yield every isomorphism from L onto the subgroup ``target`` of G (as index tuples into G)."""
    target = set(range(G.order)) if target is None else set(target)
    if len(target) != L.order:
        return
    if _order_census(L, range(L.order)) != _order_census(G, target):
        return
    gens = generating_set(L, range(L.order))
    if not gens:
        yield (0,)
        return
    cands = [[y for y in sorted(target) if G.element_orders[y] == L.element_orders[g]] for g in gens]
    mL, mG = L.mul, G.mul

    def extend(k: int, imgs: list[int]) -> dict[int, int] | None:
        # homomorphism on <gens[:k]> determined by imgs, or None on a clash
        gmap = {0: 0}
        frontier = [0]
        used = {0}
        while frontier:
            nxt = []
            for x in frontier:
                for g, im in zip(gens[:k], imgs):
                    y = mL[g][x]
                    v = mG[im][gmap[x]]
                    if y in gmap:
                        if gmap[y] != v:
                            return None
                    else:
                        if v in used:
                            return None
                        gmap[y] = v
                        used.add(v)
                        nxt.append(y)
            frontier = nxt
        return gmap

    def rec(k: int, imgs: list[int]):
        if k == len(gens):
            gmap = extend(k, imgs)
            if gmap is not None and len(gmap) == L.order:
                yield tuple(gmap[i] for i in range(L.order))
            return
        for y in cands[k]:
            imgs.append(y)
            if extend(k + 1, imgs) is not None:
                yield from rec(k + 1, imgs)
            imgs.pop()

    yield from rec(0, [])


def isomorphisms(L: PermGroup, Q: Subgroup | PermGroup) -> list[AutMap]:
    """All isomorphisms L -> Q, sorted by image tuple; images index into Q's parent."""
    if isinstance(Q, Subgroup):
        G, target = Q.parent, Q.members
    else:
        G, target = Q, range(Q.order)
    return [AutMap(L, im) for im in sorted(iter_isomorphisms(L, G, target))]


def is_isomorphic(A: PermGroup, B: PermGroup | Subgroup) -> bool:
    if isinstance(B, Subgroup):
        G, target = B.parent, B.members
    else:
        G, target = B, range(B.order)
    return next(iter_isomorphisms(A, G, target), None) is not None


def find_isomorphism(A: PermGroup, B: PermGroup) -> AutMap | None:
    im = next(iter_isomorphisms(A, B), None)
    return None if im is None else AutMap(A, im)


class AutGroup:
    """Aut(G) as an explicit list of automorphisms, with Inn(G) and Out(G) coset data."""

    def __init__(self, G: PermGroup, auts: Sequence[tuple[int, ...]]):
        self.group = G
        self.auts = sorted(auts)
        self.index = {a: i for i, a in enumerate(self.auts)}
        inn = {inner(G, g) for g in range(G.order)}
        self.inner = sorted(inn)
        out_of: dict[tuple[int, ...], int] = {}
        seen: set[tuple[int, ...]] = set()
        reps = []
        for a in self.auts:
            if a in seen:
                continue
            coset = [compose_images(a, i) for i in self.inner]
            seen.update(coset)
            reps.append(min(coset))
        reps.sort()
        for k, rep in enumerate(reps):
            for i in self.inner:
                out_of[compose_images(rep, i)] = k
        self.out_reps = reps
        self.out_of = out_of

    @property
    def order(self) -> int:
        return len(self.auts)

    @property
    def inner_order(self) -> int:
        return len(self.inner)

    @property
    def out_order(self) -> int:
        return len(self.out_reps)

    def maps(self) -> list[AutMap]:
        return [AutMap(self.group, a) for a in self.auts]

    def out_rep_maps(self) -> list[AutMap]:
        return [AutMap(self.group, a) for a in self.out_reps]

    @cached_property
    def out_mul(self) -> list[list[int]]:
        """Multiplication table of Out(G) on out-rep indices: ``[i][j]`` is the class of ``rep_i o rep_j``."""
        reps = self.out_reps
        return [[self.out_of[compose_images(a, b)] for b in reps] for a in reps]

    @cached_property
    def generators(self) -> list[tuple[int, ...]]:
        gens: list[tuple[int, ...]] = []
        span = {tuple(range(self.group.order))}
        for a in sorted(self.auts, key=lambda a: (-AutMap(self.group, a).order(), a)):
            if len(span) == len(self.auts):
                break
            if a in span:
                continue
            gens.append(a)
            span = _close_maps(gens, len(self.group.elements))
        return gens


def _close_maps(gens: Sequence[tuple[int, ...]], n: int) -> set[tuple[int, ...]]:
    ident = tuple(range(n))
    out = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = compose_images(g, x)
                if y not in out:
                    out.add(y)
                    nxt.append(y)
        frontier = nxt
    return out


@dataclass
class AutomorphismReport:
    generators: list[AutMap]
    order: int
    inner_order: int
    out_reps: list[AutMap]


def automorphism_group(G: PermGroup, cap: int = DEFAULT_AUT_CAP) -> AutGroup:
    cached = G.__dict__.get("_autgroup")
    if cached is not None:
        return cached
    if G.order > cap:
        raise CapExceeded(f"|G| = {G.order} exceeds the automorphism cap {cap}")
    A = AutGroup(G, list(iter_isomorphisms(G, G)))
    G.__dict__["_autgroup"] = A
    return A


def automorphisms(G: PermGroup, cap: int = DEFAULT_AUT_CAP) -> AutomorphismReport:
    """Generators of Aut(G), |Aut(G)|, |Inn(G)| and Out(G) coset representatives."""
    A = automorphism_group(G, cap)
    return AutomorphismReport(
        generators=[AutMap(G, a) for a in A.generators],
        order=A.order,
        inner_order=A.inner_order,
        out_reps=A.out_rep_maps(),
    )


def inn_matches_center(G: PermGroup) -> bool:
    A = automorphism_group(G)
    return A.inner_order * center(G).order == G.order

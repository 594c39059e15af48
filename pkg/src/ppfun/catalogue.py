"""Builtin groups, semidirect products and iso-type labels."""

from __future__ import annotations

import hashlib
import itertools
import math
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Hashable, Sequence

from .errors import CatalogueIncomplete, UnknownName
from .groups import (DEFAULT_ORDER_CAP, PermGroup, closure, center, group_from_generators,
                     is_p_power, p_part, prime_divisors)
from .homs import AutMap, is_isomorphic
from .perm import Perm


def cyclic(n: int) -> PermGroup:
    if n == 1:
        return group_from_generators(1, [], name="C1")
    return group_from_generators(n, [Perm(list(range(1, n)) + [0])], name=f"C{n}")


def symmetric(n: int) -> PermGroup:
    if n <= 1:
        return group_from_generators(1, [], name=f"S{n}")
    gens = [Perm([1, 0] + list(range(2, n)))]
    if n > 2:
        gens.append(Perm(list(range(1, n)) + [0]))
    return group_from_generators(n, gens, name=f"S{n}")


def alternating(n: int) -> PermGroup:
    if n <= 2:
        return group_from_generators(max(n, 1), [], name=f"A{n}")
    gens = []
    for k in range(2, n):
        img = list(range(n))
        img[0], img[1], img[k] = 1, k, 0
        gens.append(Perm(img))
    return group_from_generators(n, gens, name=f"A{n}")


def dihedral(order: int) -> PermGroup:
    """Dihedral group of the given order (D8 has order 8)."""
    n = order // 2
    if n == 1:
        return cyclic(2)
    if n == 2:
        return direct_product([cyclic(2), cyclic(2)], name="D4")
    rot = Perm(list(range(1, n)) + [0])
    ref = Perm([(-i) % n for i in range(n)])
    return group_from_generators(n, [rot, ref], name=f"D{order}")


def direct_product(groups: Sequence[PermGroup], name: str | None = None) -> PermGroup:
    """Direct product acting on the disjoint union of the point sets."""
    degree = sum(G.degree for G in groups)
    gens = []
    offset = 0
    for G in groups:
        for g in G.generators:
            img = list(range(degree))
            for i, j in enumerate(g):
                img[offset + i] = offset + j
            gens.append(Perm(img))
        offset += G.degree
    return group_from_generators(degree, gens, name=name)


def regular_from_table(n: int, mul: Callable[[int, int], int], gens: Sequence[int], name: str | None = None,
                       cap: int = DEFAULT_ORDER_CAP) -> PermGroup:
    """Left-regular permutation realisation of an abstract group on {0..n-1}."""
    perms = [Perm([mul(g, x) for x in range(n)]) for g in gens]
    return group_from_generators(n, perms, cap=cap, name=name)


def regular_from_elements(elements: Sequence[Hashable], mul: Callable, gens: Sequence[Hashable],
                          name: str | None = None) -> PermGroup:
    pos = {e: i for i, e in enumerate(elements)}
    return regular_from_table(len(elements), lambda a, b: pos[mul(elements[a], elements[b])],
                              [pos[g] for g in gens], name=name)


def metacyclic(m: int, n: int, r: int, name: str | None = None) -> PermGroup:
    """C_m |x C_n where the generator of C_n acts by a -> a^r (needs r^n = 1 mod m)."""
    assert pow(r, n, m) == 1 % m
    elems = [(i, j) for i in range(m) for j in range(n)]

    def mul(x, y):
        return ((x[0] + pow(r, x[1], m) * y[0]) % m, (x[1] + y[1]) % n)
    return regular_from_elements(elems, mul, [(1, 0), (0, 1)], name=name)


def generalized_quaternion(order: int) -> PermGroup:
    m = order // 4
    elems = [(i, j) for i in range(2 * m) for j in range(2)]

    def mul(x, y):
        i1, j1 = x
        i2, j2 = y
        if j1 == 0:
            return ((i1 + i2) % (2 * m), j2)
        i = i1 - i2
        if j2 == 1:
            return ((i + m) % (2 * m), 0)
        return (i % (2 * m), 1)
    return regular_from_elements(elems, mul, [(1, 0), (0, 1)], name=f"Q{order}")


def matrix_group(gens: Sequence[Sequence[Sequence[int]]], p: int, name: str | None = None) -> PermGroup:
    """Linear group over GF(p) acting on the nonzero vectors of GF(p)^d."""
    d = len(gens[0])
    vecs = [v for v in itertools.product(range(p), repeat=d) if any(v)]
    pos = {v: i for i, v in enumerate(vecs)}
    perms = []
    for M in gens:
        img = []
        for v in vecs:
            w = tuple(sum(M[i][k] * v[k] for k in range(d)) % p for i in range(d))
            img.append(pos[w])
        perms.append(Perm(img))
    return group_from_generators(len(vecs), perms, name=name)


@dataclass
class SemidirectProduct:
    group: PermGroup
    embed_L: list[int]   # L index -> product index
    embed_U: list[int]   # exponent k -> product index of u^k
    u_order: int

    @property
    def u(self) -> int:
        return self.embed_U[1 % self.u_order] if self.u_order > 1 else 0


def semidirect(L: PermGroup, u: AutMap, cap: int = DEFAULT_ORDER_CAP, name: str | None = None) -> SemidirectProduct:
    """L |x <u>, realised by left-regular action on |L| * ord(u) points."""
    n = u.order()
    powers = [tuple(range(L.order))]
    for _ in range(1, n):
        powers.append(tuple(u.images[j] for j in powers[-1]))
    m = L.mul

    def code(l, k):
        return l * n + k

    def mul(a, b):
        l1, k1 = divmod(a, n)
        l2, k2 = divmod(b, n)
        return code(m[l1][powers[k1][l2]], (k1 + k2) % n)

    gens = [code(g, 0) for g in L.gen_idx]
    if n > 1:
        gens.append(code(0, 1))
    size = L.order * n
    if not gens:
        G = group_from_generators(size, [], name=name)
    else:
        G = regular_from_table(size, mul, gens, name=name, cap=cap)

    def element(c):
        return G.index[Perm([mul(c, x) for x in range(size)], check=False)]
    return SemidirectProduct(G, [element(code(l, 0)) for l in range(L.order)],
                             [element(code(0, k)) for k in range(n)], n)


def automorphism_from_generator_images(G: PermGroup, images: dict[int, int]) -> AutMap:
    """Extend a map on generators (element indices) to an endomorphism; raises if inconsistent."""
    gmap = {0: 0}
    frontier = [0]
    gens = list(images)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = G.mul[g][x]
                v = G.mul[images[g]][gmap[x]]
                if y in gmap:
                    if gmap[y] != v:
                        raise ValueError("generator images do not define a homomorphism")
                else:
                    gmap[y] = v
                    nxt.append(y)
        frontier = nxt
    if len(gmap) != G.order:
        raise ValueError("given elements do not generate the group")
    return AutMap(G, tuple(gmap[i] for i in range(G.order)))


def _elem(G: PermGroup, cycles: str) -> int:
    return G.index[Perm.from_cycles(cycles, G.degree)]


def _c4c2_c2() -> PermGroup:
    # N = <a> x <b> = C4 x C2, c: a -> ab, b -> b
    N = direct_product([cyclic(4), cyclic(2)])
    a, b = N.gen_idx
    u = automorphism_from_generator_images(N, {a: N.mul[a][b], b: b})
    return semidirect(N, u, name="(C4xC2):C2").group


def _pauli() -> PermGroup:
    # {+-1, +-i} x {I, X, Y, Z} as 2x2 Gaussian-integer matrices
    def mm(A, B):
        return tuple(tuple(sum(A[i][k] * B[k][j] for k in range(2)) for j in range(2)) for i in range(2))
    X = ((0, 1), (1, 0))
    Z = ((1, 0), (0, -1))
    iI = ((1j, 0), (0, 1j))
    elems = {((1, 0), (0, 1))}
    frontier = list(elems)
    while frontier:
        nxt = []
        for e in frontier:
            for g in (X, Z, iI):
                f = mm(g, e)
                if f not in elems:
                    elems.add(f)
                    nxt.append(f)
        frontier = nxt
    elems = sorted(elems, key=repr)
    return regular_from_elements(elems, mm, [X, Z, iI], name="C4oD8")


def _special(name: str) -> PermGroup | None:
    builders: dict[str, Callable[[], PermGroup]] = {
        "1": lambda: cyclic(1),
        "V4": lambda: group_from_generators(4, [Perm.from_cycles("(1 2)(3 4)", 4), Perm.from_cycles("(1 3)(2 4)", 4)]),
        "Q8": lambda: generalized_quaternion(8),
        "Q16": lambda: generalized_quaternion(16),
        "(C4xC2):C2": _c4c2_c2,
        "C4:C4": lambda: metacyclic(4, 4, 3),
        "M16": lambda: metacyclic(8, 2, 5),
        "SD16": lambda: metacyclic(8, 2, 3),
        "C4oD8": _pauli,
        "Heis27": lambda: matrix_group([[[1, 1, 0], [0, 1, 0], [0, 0, 1]], [[1, 0, 0], [0, 1, 1], [0, 0, 1]]], 3),
        "C9:C3": lambda: metacyclic(9, 3, 4),
        "C3:C4": lambda: metacyclic(3, 4, 2),
        "C3:C8": lambda: metacyclic(3, 8, 2),
        "C5:C4": lambda: metacyclic(5, 4, 2),
        "C7:C3": lambda: metacyclic(7, 3, 2),
        "SL(2,3)": lambda: matrix_group([[[1, 1], [0, 1]], [[0, 2], [1, 0]]], 3),
        "C3xC3:C2": lambda: group_from_generators(6, [Perm.from_cycles("(1 2 3)", 6), Perm.from_cycles("(4 5 6)", 6),
                                                       Perm.from_cycles("(2 3)(5 6)", 6)]),
        "C3xC3:V4": lambda: group_from_generators(6, [Perm.from_cycles("(1 2 3)", 6), Perm.from_cycles("(4 5 6)", 6),
                                                       Perm.from_cycles("(2 3)", 6), Perm.from_cycles("(5 6)", 6)]),
    }
    b = builders.get(name)
    if b is None:
        return None
    G = b()
    G.name = name
    return G


_SIMPLE = [
    (re.compile(r"C(\d+)$"), lambda n: cyclic(n)),
    (re.compile(r"S(\d+)$"), lambda n: symmetric(n)),
    (re.compile(r"A(\d+)$"), lambda n: alternating(n)),
    (re.compile(r"D(\d+)$"), lambda n: dihedral(n)),
]


@lru_cache(maxsize=None)
def named_group(name: str) -> PermGroup:
    """Builtin catalogue: C_n, S_n, A_n, D_2n, Q8, Q16, V4, E_{p^k}, direct products ``AxB``,
    and the special small groups listed in :data:`SPECIAL_NAMES`."""
    key = name.strip().replace(" ", "").replace("×", "x").replace("⋊", ":")
    G = _special(key)
    if G is not None:
        return G
    for rx, build in _SIMPLE:
        mt = rx.match(key)
        if mt:
            n = int(mt.group(1))
            if n < 1 or (rx.pattern.startswith("D") and n % 2):
                break
            G = build(n)
            G.name = key
            return G
    mt = re.match(r"E(\d+)$", key)
    if mt:
        n = int(mt.group(1))
        ps = prime_divisors(n)
        if len(ps) == 1:
            k = round(math.log(n, ps[0]))
            G = direct_product([cyclic(ps[0])] * k, name=key) if k > 1 else cyclic(n)
            G.name = key
            return G
    if "x" in key and ":" not in key:
        parts = key.split("x")
        if all(parts):
            G = direct_product([named_group(p) for p in parts], name=key)
            return G
    raise UnknownName(f"unknown group name {name!r}")


SPECIAL_NAMES = ("V4", "Q8", "Q16", "(C4xC2):C2", "C4:C4", "M16", "SD16", "C4oD8", "Heis27", "C9:C3",
                 "C3:C4", "C3:C8", "C5:C4", "C7:C3", "SL(2,3)", "C3xC3:C2", "C3xC3:V4")

P_GROUP_CATALOGUE: dict[int, list[str]] = {
    2: ["1", "C2", "C4", "V4", "C8", "C4xC2", "E8", "D8", "Q8",
        "C16", "C4xC4", "(C4xC2):C2", "C4:C4", "C8xC2", "M16", "D16", "SD16", "Q16",
        "C4xC2xC2", "D8xC2", "Q8xC2", "C4oD8", "E16"],
    3: ["1", "C3", "C9", "C3xC3", "C27", "C9xC3", "Heis27", "C9:C3", "E27"],
}
P_GROUP_MAX_ORDER = {2: 16, 3: 27}

# groups of order <= 24 used for classification sweeps (not a complete census)
SMALL_GROUPS = [
    "1", "C2", "C3", "C4", "V4", "C5", "C6", "S3", "C7", "C8", "C4xC2", "E8", "D8", "Q8",
    "C9", "C3xC3", "C10", "D10", "C11", "C12", "C6xC2", "D12", "A4", "C3:C4", "C13", "C14", "D14",
    "C15", "C16", "C4xC4", "(C4xC2):C2", "C4:C4", "C8xC2", "M16", "D16", "SD16", "Q16", "C4xC2xC2",
    "D8xC2", "Q8xC2", "C4oD8", "E16", "C17", "C18", "C6xC3", "D18", "S3xC3", "C3xC3:C2", "C19",
    "C20", "C10xC2", "D20", "C5:C4", "C21", "C7:C3", "C22", "D22", "C23",
    "C24", "C12xC2", "C6xC2xC2", "S4", "SL(2,3)", "A4xC2", "D24", "C3:C8", "D8xC3", "Q8xC3", "S3xC4",
    "S3xC2xC2",
]


def p_group_catalogue(p: int, max_order: int) -> list[tuple[int, str, PermGroup]]:
    """Catalogue p-groups of order <= max_order as (catalogue index, name, group)."""
    if p not in P_GROUP_CATALOGUE or max_order > P_GROUP_MAX_ORDER[p]:
        limit = P_GROUP_MAX_ORDER.get(p)
        raise CatalogueIncomplete(
            f"p-group catalogue covers p=2 up to order 16 and p=3 up to order 27 (asked p={p}, order {max_order}"
            + (f", limit {limit}" if limit else "") + ")")
    out = []
    for k, nm in enumerate(P_GROUP_CATALOGUE[p]):
        G = named_group(nm)
        if G.order <= max_order:
            out.append((k, nm, G))
    return out


# ---------------------------------------------------------------------------
# iso-type fingerprints and labels

def derived_subgroup_order(G: PermGroup) -> int:
    m, inv = G.mul, G.inv
    comms = {m[m[x][y]][m[inv[x]][inv[y]]] for x in range(G.order) for y in range(G.order)}
    return len(closure(G, comms))


def is_abelian(G: PermGroup) -> bool:
    m = G.mul
    gens = G.gen_idx
    return all(m[a][b] == m[b][a] for a in gens for b in gens)


def abelian_invariants(G: PermGroup) -> tuple[int, ...]:
    """Prime-power invariants of an abelian group, sorted."""
    out = []
    for p in prime_divisors(G.order):
        prev = 1
        k = 1
        ranks = []
        while True:
            q = p ** k
            count = sum(1 for o in G.element_orders if q % o == 0)
            r = round(math.log(count // prev, p)) if count > prev else 0
            if r == 0:
                break
            ranks.append(r)
            prev = count
            k += 1
        # ranks[k-1] = number of cyclic factors of order >= p^k
        ranks.append(0)
        for k in range(len(ranks) - 1):
            out += [p ** (k + 1)] * (ranks[k] - ranks[k + 1])
    return tuple(sorted(out))


def fingerprint(G: PermGroup) -> tuple:
    if is_abelian(G):
        return (G.order, "ab", abelian_invariants(G))
    census = tuple(sorted(_census(G).items()))
    return (G.order, "nab", census, center(G).order, derived_subgroup_order(G))


def _census(G: PermGroup) -> dict[int, int]:
    out: dict[int, int] = {}
    for o in G.element_orders:
        out[o] = out.get(o, 0) + 1
    return out


@lru_cache(maxsize=None)
def _catalogue_fingerprints() -> list[tuple[tuple, str]]:
    out = []
    for p, names in P_GROUP_CATALOGUE.items():
        for nm in names:
            if nm == "1" and p == 3:
                continue
            out.append((fingerprint(named_group(nm)), nm))
    return out


def iso_label(G: PermGroup) -> str:
    """Canonical name of the iso-type of G.

    Catalogue p-groups get their catalogue name; other abelian groups are named
    from their invariants; anything else gets an order/fingerprint label.
    Ties between equal fingerprints are broken with an isomorphism test.
    """
    if G.order == 1:
        return "1"
    fp = fingerprint(G)
    matches = [nm for f, nm in _catalogue_fingerprints() if f == fp]
    if len(matches) == 1:
        return matches[0]
    for nm in matches:
        if is_isomorphic(G, named_group(nm)):
            return nm
    if fp[1] == "ab":
        return "x".join(f"C{n}" for n in sorted(fp[2], reverse=True))
    digest = hashlib.sha1(repr(fp).encode()).hexdigest()[:6]
    return f"[{G.order}#{digest}]"


def same_iso_type(A: PermGroup, B: PermGroup) -> bool:
    return A.order == B.order and fingerprint(A) == fingerprint(B) and is_isomorphic(A, B)

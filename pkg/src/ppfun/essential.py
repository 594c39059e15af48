"""The essential algebra Out(G) |x R-bar(K) for G = P x| K with K cyclic acting faithfully.

Characters of the cyclic group K = <k> of order n are indexed by exponents:
``chi^i(k) = omega^i``.  R-bar(n) is the character lattice modulo the sums of
characters sharing a restriction to a proper subgroup; those fibres are the
residue classes ``{i : i = t mod d}`` for proper divisors d of n.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Union

from .cyclo import CycloValue, totient
from .ddelta import DDeltaPair, NonVanishing, essential_support, pair_aut
from .errors import CharDividesOrder, NotAGenerator, VanishingEssentialAlgebra
from .gf import GF, minimal_splitting_degree
from .groups import PermGroup, class_index, is_prime
from .homs import AutMap, automorphism_group, compose_images
from .intlinalg import rank_mod_p, rank_q, rref, smith_normal_form

Scalar = Union[int, Fraction]


def fibre_relations(n: int) -> list[list[int]]:
    """Indicator rows of the fibre sums Ind_J^K(theta), J the subgroup of order d < n."""
    rows = []
    for d in range(1, n):
        if n % d:
            continue
        for t in range(d):
            rows.append([1 if i % d == t else 0 for i in range(n)])
    return rows


@dataclass
class RBarQuotient:
    n: int
    field_char: int
    rank: int
    basis_idx: list[int]
    rewrite: list[list[Fraction]]   # rewrite[i] = coordinates of chi-bar^i in the chosen basis
    relations: list[list[int]]
    snf: list[int]

    def coords(self, i: int) -> list[Scalar]:
        """Coordinates of chi-bar^i over the coefficient field."""
        return [_to_field(c, self.field_char) for c in self.rewrite[i % self.n]]


def _to_field(c: Fraction, char: int) -> Scalar:
    c = Fraction(c)
    if char == 0:
        return c
    return c.numerator * pow(c.denominator, -1, char) % char


def rbar(n: int, field_char: int = 0) -> RBarQuotient:
    """R-bar(n): quotient of Z^n by the fibre relations, read over Q or GF(field_char)."""
    if field_char and n % field_char == 0:
        raise CharDividesOrder(f"characteristic {field_char} divides {n}")
    rel = fibre_relations(n)
    snf = smith_normal_form(rel) if rel else []
    rel_rank = len(snf)
    if any(d != 1 for d in snf):
        raise ArithmeticError(f"relation lattice for n={n} has torsion {snf}")
    # basis: greedily the least indices independent modulo the relations
    R, piv = rref(rel, column_order=list(range(n - 1, -1, -1))) if rel else ([], [])
    basis = sorted(set(range(n)) - set(piv))
    r = len(basis)
    rewrite: list[list[Fraction]] = []
    bpos = {b: k for k, b in enumerate(basis)}
    for i in range(n):
        vec = [Fraction(0)] * r
        if i in bpos:
            vec[bpos[i]] = Fraction(1)
        else:
            row = R[piv.index(i)]
            # chi^i + sum_{b} row[b] chi^b = 0 modulo relations
            for b in basis:
                vec[bpos[b]] = -row[b]
        rewrite.append(vec)
    assert r == n - rel_rank
    q = RBarQuotient(n, field_char, r, basis, rewrite, rel, snf)
    if field_char:
        assert rank_mod_p(rel, field_char) == rel_rank if rel else True
    return q


@dataclass
class EssentialAlgebra:
    G: PermGroup
    p: int
    field_char: int
    k: int                          # generator of K (element index of G)
    n: int
    out_reps: list[AutMap]
    out_mul: list[list[int]]
    out_action: list[int]           # out class -> a with gamma(k) = k^a mod P
    rbar: RBarQuotient
    support: NonVanishing

    @property
    def dimension(self) -> int:
        return len(self.out_reps) * self.rbar.rank

    def act(self, gamma: int, i: int) -> int:
        """Index of chi^i o gamma."""
        return (i * self.out_action[gamma]) % self.n

    def basis(self) -> list["EssElement"]:
        out = []
        for g in range(len(self.out_reps)):
            for b in range(self.rbar.rank):
                vec = [0] * self.rbar.rank
                vec[b] = 1
                out.append(EssElement(self, {g: [self._f(c) for c in vec]}))
        return out

    def _f(self, c) -> Scalar:
        return _to_field(Fraction(c), self.field_char)

    def zero(self) -> "EssElement":
        return EssElement(self, {})

    def one(self) -> "EssElement":
        return self.symbol(0, 0)

    def symbol(self, gamma: int, i: int) -> "EssElement":
        """gamma |x chi-bar^i."""
        return EssElement(self, {gamma: self.rbar.coords(i)})


@dataclass
class EssElement:
    A: EssentialAlgebra
    coeffs: dict[int, list[Scalar]] = field(default_factory=dict)

    def _clean(self) -> "EssElement":
        self.coeffs = {g: v for g, v in self.coeffs.items() if any(v)}
        return self

    def __add__(self, other: "EssElement") -> "EssElement":
        out = {g: list(v) for g, v in self.coeffs.items()}
        for g, v in other.coeffs.items():
            cur = out.setdefault(g, [0] * self.A.rbar.rank)
            out[g] = [self._norm(a + b) for a, b in zip(cur, v)]
        return EssElement(self.A, out)._clean()

    def _norm(self, c):
        ch = self.A.field_char
        return c % ch if ch else c

    def __mul__(self, other: "EssElement") -> "EssElement":
        return ess_multiply(self.A, self, other)

    def __eq__(self, other):
        return isinstance(other, EssElement) and self._clean().coeffs == other._clean().coeffs

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for g in sorted(self.coeffs):
            vals = ",".join(str(c) for c in self.coeffs[g])
            terms.append(f"gamma[{g}] ⋉ ({vals})")
        return " + ".join(terms)

    def to_json(self):
        return {str(g): [str(c) for c in v] for g, v in sorted(self.coeffs.items())}


def build_essential(G: PermGroup, p: int, field_char: int = 0, k: int | None = None) -> EssentialAlgebra:
    """E(G) = Out(G) |x R-bar(K); ``k`` overrides the generator of the complement."""
    if field_char not in (0, p):
        raise ValueError("field characteristic must be 0 or p")
    rep = essential_support(G, p)
    if not isinstance(rep, NonVanishing):
        raise VanishingEssentialAlgebra(f"E(G) vanishes: {rep.reason}")
    n = rep.K_order
    kk = rep.k if k is None else k
    if G.element_orders[kk] != n or G.element_orders[kk] % p == 0:
        raise NotAGenerator("k must generate a p'-complement")
    P = rep.P.members
    A = automorphism_group(G)
    coset_of = {}
    for e in range(n):
        for x in P:
            coset_of[G.mul[G.power(kk, e)][x]] = e
    actions = []
    for g, rep_aut in enumerate(A.out_reps):
        a = coset_of[rep_aut[kk]]
        actions.append(a)
    # Inn(G) acts trivially on G/P, so every automorphism in a class gives the same exponent
    for aut in A.auts:
        assert coset_of[aut[kk]] == actions[A.out_of[aut]]
    return EssentialAlgebra(G, p, field_char, kk, n, A.out_rep_maps(), A.out_mul, actions,
                            rbar(n, field_char), rep)


def ess_multiply(A: EssentialAlgebra, a: EssElement, b: EssElement) -> EssElement:
    """(gamma |x lambda)(delta |x mu) = (gamma delta) |x (lambda o delta) mu, extended bilinearly."""
    r = A.rbar.rank
    out: dict[int, list[Scalar]] = {}
    basis = A.rbar.basis_idx
    for g, va in a.coeffs.items():
        for d, vb in b.coeffs.items():
            gd = A.out_mul[g][d]
            acc = out.setdefault(gd, [A._f(0)] * r)
            for s, ca in enumerate(va):
                if not ca:
                    continue
                i = A.act(d, basis[s])
                for t, cb in enumerate(vb):
                    if not cb:
                        continue
                    coords = A.rbar.coords(i + basis[t])
                    for u in range(r):
                        if coords[u]:
                            acc[u] = acc[u] + ca * cb * coords[u]
            out[gd] = [c % A.field_char if A.field_char else c for c in acc]
    return EssElement(A, out)._clean()


# ---------------------------------------------------------------------------
# e_x and generator orbits

def essential_for_pair(pair: DDeltaPair, field_char: int = 0) -> EssentialAlgebra:
    """E(L<u>) with K = <u> and chi^1(u) = omega."""
    data = pair_aut(pair)
    return build_essential(data.Lu, pair.p, field_char, k=data.product.u)


def root_field(p: int, n: int) -> GF:
    return GF(p, minimal_splitting_degree(p, n))


def e_x(A: EssentialAlgebra, a: int, v: list[Scalar]):
    """e_x(v) for x = k^a (k the chosen generator of K): chi-bar^i maps to omega^(i a).

    In characteristic p the value lies in the least GF(p^m) containing the n-th
    roots of unity (as an encoded field element); in characteristic 0 it is a
    CycloValue in Q(zeta_n).
    """
    n = A.n
    if gcd(a, n) != 1:
        raise NotAGenerator(f"k^{a} does not generate a group of order {n}")
    basis = A.rbar.basis_idx
    if A.field_char:
        F = root_field(A.field_char, n)
        w = F.root_of_unity(n)
        out = 0
        for b, c in zip(basis, v):
            if c:
                out = int(F.add(out, F.mul(int(c) % F.p, F.power(w, b * a))))
        return out
    out = CycloValue.rational(n, 0)
    for b, c in zip(basis, v):
        if c:
            out = out + CycloValue.zeta_power(n, b * a) * c
    return out


def e_x_relations_vanish(A: EssentialAlgebra, a: int) -> bool:
    """Each fibre sum, evaluated directly at k^a, is zero."""
    n = A.n
    if A.field_char:
        F = root_field(A.field_char, n)
        w = F.root_of_unity(n)
        for row in A.rbar.relations:
            s = 0
            for i, c in enumerate(row):
                if c:
                    s = int(F.add(s, F.power(w, i * a)))
            if s:
                return False
        return True
    for row in A.rbar.relations:
        s = sum((CycloValue.zeta_power(n, i * a) for i, c in enumerate(row) if c), CycloValue.rational(n, 0))
        if not s.is_zero():
            return False
    return True


@dataclass
class GeneratorOrbit:
    representative: int            # exponent a, x = u^a
    element: int                   # index of x in L<u>
    exponents: list[int]
    out_pair_order: int            # |Out(L, x)|


def simple_param_orbits(pair: DDeltaPair) -> list[GeneratorOrbit]:
    """Generators of <u> up to automorphisms of L<u> stabilising <u>."""
    data = pair_aut(pair)
    Lu = data.Lu
    u = data.product.u
    n = pair.u_order
    powers = [Lu.power(u, e) for e in range(n)]
    cyc = set(powers)
    expo = {x: e for e, x in enumerate(powers)}
    stab = [a for a in data.aut_Lu.auts if all(a[x] in cyc for x in cyc)]
    gens = [e for e in range(n) if gcd(e, n) == 1] if n > 1 else [0]
    seen: set[int] = set()
    out = []
    cls = class_index(Lu)
    for e in gens:
        if e in seen:
            continue
        orbit = sorted({expo[a[powers[e]]] for a in stab})
        seen.update(orbit)
        x = powers[e]
        order = len({data.aut_Lu.out_of[a] for a in data.aut_Lu.auts if cls[a[x]] == cls[x]})
        out.append(GeneratorOrbit(e, x, orbit, order))
    return out

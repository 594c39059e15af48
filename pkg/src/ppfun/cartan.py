"""Modular representation oracle: simple modules, Brauer characters, Cartan matrices and the gamma basis.

Brauer characters are exact elements of Q(zeta_N), N the p'-part of the
exponent of G.  Reduction ``rho`` back to the splitting field sends zeta_N to
``primitive ** ((q - 1) / N)``, the same root convention used when lifting
eigenvalues, so lifting followed by reduction is the identity on roots of unity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, prod

import numpy as np

from .cyclo import CycloValue
from .errors import (DenominatorDivisibleByP, NonIntegralCartan, OracleCapExceeded, OracleInconsistency,
                     SingularBrauerTable)
from .gf import GF, minimal_splitting_degree
from .groups import ConjClassRec, PermGroup, centralizer, class_index, conjugacy_classes, p_part
from .intlinalg import determinant, rank_mod_p, smith_normal_form
from .meataxe import ModuleRep, chop, regular_module

ORACLE_CAP = 60
DEFAULT_SEED = 0


@dataclass(frozen=True)
class FieldSpec:
    p: int
    m: int
    modulus: tuple[int, ...]

    @property
    def q(self) -> int:
        return self.p ** self.m

    @property
    def field(self) -> GF:
        return _field(self.p, self.m)


_FIELDS: dict[tuple[int, int], GF] = {}


def _field(p: int, m: int) -> GF:
    if (p, m) not in _FIELDS:
        _FIELDS[(p, m)] = GF(p, m)
    return _FIELDS[(p, m)]


def p_prime_exponent(G: PermGroup, p: int) -> int:
    e = G.exponent
    return e // p_part(e, p)


def splitting_field(G: PermGroup, p: int) -> FieldSpec:
    m = minimal_splitting_degree(p, p_prime_exponent(G, p))
    F = _field(p, m)
    return FieldSpec(p, m, tuple(F.modulus))


def p_regular_classes(G: PermGroup, p: int) -> list[ConjClassRec]:
    return [c for c in conjugacy_classes(G) if c.element_order % p]


def centralizer_order(G: PermGroup, x: int) -> int:
    return centralizer(G, [x]).order


def elementary_divisors_bn(G: PermGroup, p: int) -> list[int]:
    """Brauer-Nesbitt multiset {|C_G(x)|_p}, sorted."""
    return sorted(p_part(G.order // c.size, p) for c in p_regular_classes(G, p))


def defect_zero_classes(G: PermGroup, p: int) -> list[ConjClassRec]:
    return [c for c in p_regular_classes(G, p) if (G.order // c.size) % p]


def brauer_character(S: ModuleRep, reps: list[int], p: int, N: int) -> list[CycloValue]:
    """Lift eigenvalue multiplicities of each p-regular rep to a sum of roots of unity in Q(zeta_N)."""
    F, G = S.F, S.G
    out = []
    I = F.identity(S.dim)
    for x in reps:
        X = S.matrix(x)
        d = G.element_orders[x]
        w = F.root_of_unity(d)
        val = CycloValue.rational(N, 0)
        total = 0
        for i in range(d):
            mult = S.dim - F.rank(F.sub(X, F.mul(F.power(w, i), I)))
            if mult:
                total += mult
                val = val + CycloValue.zeta_power(N, i * (N // d)) * mult
        if total != S.dim:
            raise OracleInconsistency(f"eigenvalues of element {x} do not fill dimension {S.dim}")
        out.append(val)
    return out


def _char_key(row: list[CycloValue]) -> tuple:
    return tuple(v.coeffs for v in row)


@dataclass
class SimpleInventory:
    G: PermGroup
    p: int
    spec: FieldSpec
    N: int
    classes: list[ConjClassRec]           # p-regular classes, in class order
    simples: list[ModuleRep]
    multiplicities: list[int]             # multiplicity in the regular module = dim P_S
    brauer: list[list[CycloValue]]        # rows: simples, columns: classes

    @property
    def dims(self) -> list[int]:
        return [S.dim for S in self.simples]

    def composition_multiset(self) -> list[tuple]:
        return [(S.dim, _char_key(row), mult) for S, row, mult in zip(self.simples, self.brauer, self.multiplicities)]


def simple_modules(G: PermGroup, p: int, seed: int = DEFAULT_SEED, cap: int = ORACLE_CAP) -> SimpleInventory:
    """Chop the regular module and order the simples by (dimension, Brauer character), trivial first."""
    if G.order > cap:
        raise OracleCapExceeded(f"|G| = {G.order} exceeds the oracle cap {cap}")
    spec = splitting_field(G, p)
    F = spec.field
    N = p_prime_exponent(G, p)
    classes = p_regular_classes(G, p)
    reps = [c.representative for c in classes]
    factors = chop(regular_module(F, G), np.random.default_rng(seed))
    rows = [brauer_character(f.module, reps, p, N) for f in factors]
    keys = [_char_key(r) for r in rows]
    if len(set(keys)) != len(keys):
        raise OracleInconsistency("two non-isomorphic factors share a Brauer character")
    trivial = _char_key([CycloValue.rational(N, 1)] * len(reps))
    order = sorted(range(len(factors)), key=lambda i: (factors[i].module.dim, keys[i] != trivial, keys[i]))
    inv = SimpleInventory(G, p, spec, N, classes, [factors[i].module for i in order],
                          [factors[i].multiplicity for i in order], [rows[i] for i in order])
    if len(inv.simples) != len(classes):
        raise OracleInconsistency(f"{len(inv.simples)} simples but {len(classes)} p-regular classes")
    return inv


def inverse_class_positions(G: PermGroup, classes: list[ConjClassRec]) -> list[int]:
    where = {c.representative: k for k, c in enumerate(classes)}
    cidx = class_index(G)
    allc = conjugacy_classes(G)
    return [where[allc[cidx[G.inv[c.representative]]].representative] for c in classes]


def _invert(M: list[list[CycloValue]], N: int) -> list[list[CycloValue]]:
    n = len(M)
    A = [list(row) + [CycloValue.rational(N, int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for c in range(n):
        piv = next((r for r in range(c, n) if not A[r][c].is_zero()), None)
        if piv is None:
            raise SingularBrauerTable("Brauer character table is singular")
        A[c], A[piv] = A[piv], A[c]
        lead = A[c][c].inverse()
        A[c] = [v * lead for v in A[c]]
        for r in range(n):
            if r != c and not A[r][c].is_zero():
                f = A[r][c]
                A[r] = [a - f * b for a, b in zip(A[r], A[c])]
    return [row[n:] for row in A]


def pim_characters(B: list[list[CycloValue]], G: PermGroup, p: int,
                   classes: list[ConjClassRec] | None = None) -> list[list[CycloValue]]:
    """The matrix P with sum_c P[T][c] B[S][c^-1] / |C_G(x_c)| = delta_{T,S}."""
    classes = classes if classes is not None else p_regular_classes(G, p)
    if not B:
        return []
    N = B[0][0].n
    inv = inverse_class_positions(G, classes)
    cent = [G.order // c.size for c in classes]
    X = [[B[S][inv[c]] / cent[c] for S in range(len(B))] for c in range(len(classes))]
    return _invert(X, N)


def rho(F: GF, N: int, v: CycloValue) -> int:
    """Reduce a p-integral element of Q(zeta_N) into GF(q), zeta_N -> primitive^((q-1)/N)."""
    z = F.root_of_unity(N)
    out = 0
    for k, c in enumerate(v.coeffs):
        if not c:
            continue
        if c.denominator % F.p == 0:
            raise DenominatorDivisibleByP(f"denominator {c.denominator} of {v} is divisible by {F.p}")
        scalar = c.numerator * pow(c.denominator, -1, F.p) % F.p
        out = int(F.add(out, F.mul(scalar, F.power(z, k))))
    return out


@dataclass
class CartanData:
    inventory: SimpleInventory
    brauer_simple: list[list[CycloValue]]
    brauer_pim: list[list[CycloValue]]
    cartan: list[list[int]]
    defect_zero: list[ConjClassRec]
    gamma: np.ndarray                     # rows: defect-zero classes, columns: simples
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def field(self) -> GF:
        return self.inventory.spec.field

    @property
    def snf(self) -> list[int]:
        return sorted(smith_normal_form(self.cartan))

    @property
    def det(self) -> int:
        return determinant(self.cartan)


def _cartan_entries(G: PermGroup, classes, P) -> list[list[int]]:
    inv = inverse_class_positions(G, classes)
    cent = [G.order // c.size for c in classes]
    n = len(P)
    out = [[0] * n for _ in range(n)]
    for T in range(n):
        for S in range(n):
            val = sum((P[T][c] * P[S][inv[c]] / cent[c] for c in range(len(classes))),
                      CycloValue.rational(P[0][0].n, 0))
            if not val.is_rational() or val.to_rational().denominator != 1:
                raise NonIntegralCartan(f"c[{T}][{S}] = {val} is not an integer")
            out[T][S] = int(val.to_rational())
    return out


def cartan_matrix(G: PermGroup, p: int, seed: int = DEFAULT_SEED, cap: int = ORACLE_CAP,
                  strict: bool = True) -> CartanData:
    """Full oracle run; every structural identity is recorded in ``checks`` (and enforced when strict)."""
    cache = G.__dict__.setdefault("_cartan", {})
    key = (p, seed, cap)
    if key in cache:
        return cache[key]
    inv = simple_modules(G, p, seed, cap)
    F = inv.spec.field
    N = inv.N
    classes = inv.classes
    B = inv.brauer
    P = pim_characters(B, G, p, classes)
    C = _cartan_entries(G, classes, P)
    dz = defect_zero_classes(G, p)
    pos = {c.representative: k for k, c in enumerate(classes)}
    cinv = inverse_class_positions(G, classes)
    gamma = np.zeros((len(dz), len(inv.simples)), dtype=np.int64)
    for r, c in enumerate(dz):
        k = pos[c.representative]
        cent = G.order // c.size
        for S in range(len(inv.simples)):
            gamma[r, S] = rho(F, N, P[S][cinv[k]] / cent)
    data = CartanData(inv, B, P, C, dz, gamma)
    n = len(C)
    dims = inv.dims
    bn = elementary_divisors_bn(G, p)
    checks = data.checks
    checks["symmetric"] = all(C[i][j] == C[j][i] for i in range(n) for j in range(n))
    checks["nonnegative"] = all(C[i][j] >= 0 for i in range(n) for j in range(n)) and all(C[i][i] > 0 for i in range(n))
    checks["simple_count"] = n == len(classes)
    checks["det"] = data.det == prod(bn)
    checks["snf"] = data.snf == bn
    checks["rank_mod_p"] = rank_mod_p(C, p) == len(dz)
    checks["bookkeeping"] = sum(dims[i] * C[i][j] * dims[j] for i in range(n) for j in range(n)) == G.order
    ident = pos.get(0)
    checks["pim_dims"] = all(P[T][ident] == sum(C[T][S] * dims[S] for S in range(n)) for T in range(n))
    checks["regular_multiplicity"] = all(P[T][ident] == inv.multiplicities[T] for T in range(n))
    checks["identity_value"] = all(B[S][ident] == dims[S] for S in range(n))
    checks["inverse_conjugate"] = all(B[S][cinv[c]] == B[S][c].conjugate() for S in range(n) for c in range(n))
    checks["gamma_independent"] = F.rank(gamma) == len(dz)
    if strict and not all(checks.values()):
        bad = sorted(k for k, v in checks.items() if not v)
        raise OracleInconsistency(f"Cartan invariants failed for {G.name or G}: {bad}")
    cache[key] = data
    return data


def gamma_basis(G: PermGroup, p: int, seed: int = DEFAULT_SEED) -> np.ndarray:
    return cartan_matrix(G, p, seed).gamma


@dataclass
class ColumnReport:
    simple: int
    cartan_column: list[int]
    reconstructed: list[int]

    @property
    def ok(self) -> bool:
        return self.cartan_column == self.reconstructed


def reconstruct_cartan_columns(G: PermGroup, p: int, seed: int = DEFAULT_SEED) -> list[ColumnReport]:
    """Compare each Cartan column mod p with sum_x rho(Phi_T(x)) gamma_x over defect-zero x."""
    data = cartan_matrix(G, p, seed)
    F = data.field
    N = data.inventory.N
    pos = {c.representative: k for k, c in enumerate(data.inventory.classes)}
    n = len(data.cartan)
    out = []
    for T in range(n):
        col = [data.cartan[S][T] % p for S in range(n)]
        acc = np.zeros(n, dtype=np.int64)
        for r, c in enumerate(data.defect_zero):
            coef = rho(F, N, data.brauer_pim[T][pos[c.representative]])
            acc = F.add(acc, F.mul(coef, data.gamma[r]))
        out.append(ColumnReport(T, col, [int(a) for a in acc]))
    return out


@dataclass
class VxReport:
    x: int
    character: list[int]
    expected_character: list[int]
    coefficients_match: bool
    image: list[int]
    expected_image: list[int]

    @property
    def ok(self) -> bool:
        return self.character == self.expected_character and self.coefficients_match and self.image == self.expected_image


def _solve_row(Pm: list[list[CycloValue]], v: list[CycloValue]) -> list[CycloValue]:
    """Coefficients w with sum_T w[T] Pm[T] = v (Pm square)."""
    n = len(Pm)
    N = v[0].n
    Pt = [[Pm[T][c] for T in range(n)] for c in range(n)]
    inv = _invert(Pt, N)
    return [sum((inv[T][c] * v[c] for c in range(n)), CycloValue.rational(N, 0)) for T in range(n)]


def vx_check(G: PermGroup, p: int, x: int, seed: int = DEFAULT_SEED) -> VxReport:
    """Induce |x| 1_x from <x> by scanning G, express it in PIM characters, and compare its Cartan image."""
    data = cartan_matrix(G, p, seed)
    F = data.field
    inv = data.inventory
    N = inv.N
    classes = inv.classes
    cidx = class_index(G)
    allc = conjugacy_classes(G)
    xrep = allc[cidx[x]].representative
    cent = centralizer_order(G, x)
    # Ind value at g: (1/|x|) sum_t f(t g t^-1), f = |x| at x and 0 elsewhere
    character = []
    for c in classes:
        g = c.representative
        character.append(sum(1 for t in range(G.order) if G.conj(t, g) == x))
    expected = [cent if c.representative == xrep else 0 for c in classes]
    v = [CycloValue.rational(N, a) for a in character]
    omega = _solve_row(data.brauer_pim, v)
    k = next(i for i, c in enumerate(classes) if c.representative == xrep)
    kinv = inverse_class_positions(G, classes)[k]
    predicted = [data.brauer_simple[T][kinv] for T in range(len(classes))]
    n = len(classes)
    image = []
    for S in range(n):
        val = sum((omega[T] * data.cartan[T][S] for T in range(n)), CycloValue.rational(N, 0))
        image.append(rho(F, N, val))
    r = next(i for i, c in enumerate(data.defect_zero) if c.representative == xrep)
    expected_image = [int(a) for a in F.mul(F.from_int(cent), data.gamma[r])]
    return VxReport(x, character, expected, omega == predicted, image, expected_image)


def dim_S_11(G: PermGroup, p: int, use_oracle: bool = False, seed: int = DEFAULT_SEED) -> int:
    """Dimension of S_{1,1,k}(G): the number of defect-zero classes (checked against the gamma rank when asked)."""
    n = len(defect_zero_classes(G, p))
    if use_oracle:
        data = cartan_matrix(G, p, seed)
        r = data.field.rank(data.gamma)
        if r != n:
            raise OracleInconsistency(f"gamma rank {r} differs from {n} defect-zero classes")
    return n


def composition_multiset(G: PermGroup, p: int, seed: int) -> list[tuple]:
    """Seed-independent summary of a chop run, for determinism checks."""
    return simple_modules(G, p, seed).composition_multiset()

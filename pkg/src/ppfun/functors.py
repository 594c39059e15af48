"""Evaluation data for the simple functors S_{L,u,W}: defects, zeta sets, the set P(G,L,u) and dimensions."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

import numpy as np

from .cartan import ORACLE_CAP, cartan_matrix
from .catalogue import iso_label
from .ddelta import DDeltaPair, PairAutData, identity_aut, pair_aut
from .errors import NotInGHat, OracleCapExceeded, WrongPairForW
from .gf import GF
from .groups import (PermGroup, Subgroup, centralizer, class_index, conjugacy_classes, generating_set, normalizer,
                     p_part, p_subgroups_up_to_conjugacy, product_set, quotient, subgroup_center, sylow)
from .homs import AutMap, is_isomorphic, isomorphisms


def _prime_of_pgroup(L: PermGroup, default: int | None = None) -> int | None:
    n = L.order
    for q in range(2, n + 1):
        if n % q == 0:
            return q
    return default


# ---------------------------------------------------------------------------
# defects

@dataclass
class DefectEntry:
    representative: int
    label: str
    sylow: Subgroup

    def group(self) -> PermGroup:
        return self.sylow.as_group()[0]


def defect_profile(G: PermGroup, p: int) -> list[DefectEntry]:
    """For each p-regular class, the iso-type of a Sylow p-subgroup of its centralizer."""
    out = []
    for c in conjugacy_classes(G):
        if c.element_order % p == 0:
            continue
        C = centralizer(G, [c.representative])
        S = sylow(G, p, within=C)
        out.append(DefectEntry(c.representative, iso_label(S.as_group()[0]), S))
    return out


def dim_simple_L1_trivial(G: PermGroup, p: int, L: PermGroup) -> int:
    """Number of p-regular classes whose defect is isomorphic to L."""
    return sum(1 for e in defect_profile(G, p) if e.sylow.order == L.order and is_isomorphic(L, e.sylow))


@dataclass
class PartitionReport:
    breakdown: list[tuple[str, int]]
    total: int
    p_regular_classes: int

    @property
    def ok(self) -> bool:
        return self.total == self.p_regular_classes


def partition_check(G: PermGroup, p: int) -> PartitionReport:
    """Sum over the defect iso-types L of dim S_{L,1,k}(G) against the number of p-regular classes."""
    prof = defect_profile(G, p)
    types: list[tuple[str, PermGroup]] = []
    for e in prof:
        H = e.group()
        if not any(H.order == T.order and is_isomorphic(T, H) for _, T in types):
            types.append((e.label, H))
    breakdown = [(label, dim_simple_L1_trivial(G, p, T)) for label, T in types]
    return PartitionReport(breakdown, sum(d for _, d in breakdown), len(prof))


# ---------------------------------------------------------------------------
# zeta and Z(G, L)

@dataclass
class ZetaRep:
    z: int
    stabilizer_order: int   # |N_G(Q,z) C_G(Q) / Q C_G(Q)|


@dataclass
class ZetaOrbits:
    Q: Subgroup
    reps: list[ZetaRep]


def _zeta_members(G: PermGroup, p: int, Q: Subgroup) -> list[int]:
    C = centralizer(G, Q.members)
    zq = subgroup_center(Q).order
    out = []
    for z in sorted(C.members):
        if G.element_orders[z] % p == 0:
            continue
        CQz = [c for c in C.members if G.mul[c][z] == G.mul[z][c]]
        if p_part(len(CQz), p) == zq:
            out.append(z)
    return out


def zeta(G: PermGroup, p: int, Q: Subgroup) -> ZetaOrbits:
    """Representatives (least elements) of the N_G(Q)-orbits on zeta(G,Q)."""
    N = normalizer(G, Q)
    C = centralizer(G, Q.members)
    QC = product_set(G, Q.members, C.members)
    members = set(_zeta_members(G, p, Q))
    reps = []
    seen: set[int] = set()
    for z in sorted(members):
        if z in seen:
            continue
        orbit = {G.conj(n, z) for n in N.members}
        assert orbit <= members
        seen |= orbit
        NQz = [n for n in N.members if G.mul[n][z] == G.mul[z][n]]
        stab = product_set(G, NQz, C.members)
        reps.append(ZetaRep(z, len(stab) // len(QC)))
    return ZetaOrbits(Q, reps)


def zeta_stabilizer_via_classes(G: PermGroup, Q: Subgroup, z: int) -> int:
    """|{n in N_G(Q) : n z n^-1 is C_G(Q)-conjugate to z}| / |Q C_G(Q)|, the stabilizer of gamma_z."""
    N = normalizer(G, Q)
    C = centralizer(G, Q.members)
    cls = {G.conj(c, z) for c in C.members}
    QC = product_set(G, Q.members, C.members)
    return sum(1 for n in N.members if G.conj(n, z) in cls) // len(QC)


def subgroups_isomorphic_to(G: PermGroup, p: int, L: PermGroup) -> list[Subgroup]:
    """Conjugacy class representatives of subgroups of G isomorphic to the p-group L."""
    return [Q for Q in p_subgroups_up_to_conjugacy(G, p) if Q.order == L.order and is_isomorphic(L, Q)]


@dataclass
class ZcalOrbits:
    L: PermGroup
    reps: list[tuple[Subgroup, int]]


def zcal(G: PermGroup, p: int, L: PermGroup) -> ZcalOrbits:
    reps = []
    for Q in subgroups_isomorphic_to(G, p, L):
        for r in zeta(G, p, Q).reps:
            reps.append((Q, r.z))
    return ZcalOrbits(L, reps)


# ---------------------------------------------------------------------------
# W: representations of Out(L,u)

@dataclass(eq=False)
class OutRepW:
    """Matrices over GF(p^m) for the generators of Out(L,u), keyed by their labels."""

    pair: DDeltaPair
    F: GF
    dim: int
    matrices: dict[str, np.ndarray]

    @property
    def out_group(self):
        return pair_aut(self.pair).out_pair_group

    def rho(self, local: int) -> np.ndarray:
        O = self.out_group
        M = self.F.identity(self.dim)
        for pos in O.words[local]:
            M = self.F.matmul(M, self.matrices[O.labels[pos]])
        return M

    def check_labels(self) -> bool:
        return sorted(self.matrices) == sorted(self.out_group.labels)

    def check_relations(self) -> bool:
        """The assigned matrices respect the whole multiplication table of Out(L,u)."""
        if not self.check_labels():
            return False
        O = self.out_group
        F = self.F
        mats = [self.rho(x) for x in range(O.order)]
        # generators must be sent to their own matrices and products must be respected
        for pos, g in enumerate(O.generators):
            if not np.array_equal(mats[g], self.matrices[O.labels[pos]]):
                return False
        return all(np.array_equal(F.matmul(mats[a], mats[b]), mats[O.mul[a][b]])
                   for a in range(O.order) for b in range(O.order))

    @classmethod
    def trivial(cls, pair: DDeltaPair, F: GF | None = None) -> "OutRepW":
        F = F or GF(pair.p, 1)
        labels = pair_aut(pair).out_pair_group.labels
        return cls(pair, F, 1, {lab: F.identity(1) for lab in labels})

    @classmethod
    def natural(cls, pair: DDeltaPair, F: GF | None = None) -> "OutRepW":
        """L elementary abelian of rank r and u = 1: Out(L,1) = GL(r,p) acting on L."""
        L, p = pair.L, pair.p
        if any(x != i for i, x in enumerate(pair.u.images)):
            raise WrongPairForW("the natural module needs u = 1")
        if any(L.element_orders[x] not in (1, p) for x in range(L.order)) or any(
                L.mul[a][b] != L.mul[b][a] for a in range(L.order) for b in range(L.order)):
            raise WrongPairForW("the natural module needs an elementary abelian L")
        F = F or GF(p, 1)
        basis = generating_set(L, range(L.order))
        r = len(basis)
        coords: dict[int, tuple[int, ...]] = {}
        for vec in np.ndindex(*([p] * r)):
            x = 0
            for e, c in zip(basis, vec):
                x = L.mul[L.power(e, c)][x]
            coords[x] = tuple(int(c) for c in vec)
        data = pair_aut(pair)
        O = data.out_pair_group
        mats = {}
        for pos, g in enumerate(O.generators):
            rep = data.aut_Lu.out_reps[O.members[g]]
            alpha = data.restrict(rep)
            M = np.zeros((r, r), dtype=np.int64)
            for j, e in enumerate(basis):
                M[:, j] = coords[alpha[e]]
            mats[O.labels[pos]] = M
        return cls(pair, F, r, mats)


# ---------------------------------------------------------------------------
# the set P(G,L,u)

@dataclass
class PsetRep:
    Q: Subgroup
    delta: tuple[int, ...]           # L index -> G index
    s: int                           # witness with i_s o delta = delta o u
    N: frozenset[int]
    G_hat: frozenset[int]
    G_Qd: frozenset[int]
    G_Qdu: frozenset[int]

    @property
    def orders(self) -> dict[str, int]:
        return {"G_Qd": len(self.G_Qd), "G_hat": len(self.G_hat), "G_Qdu": len(self.G_Qdu),
                "Gbar_Qdu": len(self.G_Qdu) // len(self.G_Qd)}


@dataclass
class PsetOrbits:
    pair: DDeltaPair
    G: PermGroup
    reps: list[PsetRep]
    data: PairAutData = field(repr=False)


def _alpha(G: PermGroup, delta: tuple[int, ...], g: int) -> tuple[int, ...]:
    back = {x: i for i, x in enumerate(delta)}
    return tuple(back[G.conj(g, x)] for x in delta)


def pset(G: PermGroup, pair: DDeltaPair) -> PsetOrbits:
    """Orbit representatives of P(G,L,u) under G x Aut(L<u>), with G_{Q,d} <= G_{Q,d,u} <= Ghat_{Q,d}."""
    L, u, p = pair.L, pair.u, pair.p
    data = pair_aut(pair)
    R = set(data.restriction)
    inner_R = data.inner_restrictions()
    pair_R = {data.restrict(a) for a in data.aut_pair}
    gensL = generating_set(L, range(L.order))
    reps = []
    for Q in subgroups_isomorphic_to(G, p, L) if L.order > 1 else [G.trivial]:
        N = normalizer(G, Q)
        isos = [tuple(a.images) for a in isomorphisms(L, Q)]

        def witness(d):
            return next((s for s in sorted(N.members)
                         if all(G.conj(s, d[l]) == d[u.images[l]] for l in gensL)), None)

        good = [d for d in isos if witness(d) is not None]
        seen: set[tuple[int, ...]] = set()
        for d in good:
            if d in seen:
                continue
            orbit = set()
            for n in N.members:
                nd = tuple(G.conj(n, x) for x in d)
                for phi in R:
                    orbit.add(tuple(nd[phi[i]] for i in range(L.order)))
            seen |= orbit
            delta = min(orbit)
            alphas = {g: _alpha(G, delta, g) for g in N.members}
            reps.append(PsetRep(
                Q, delta, witness(delta), N.members,
                frozenset(g for g, a in alphas.items() if a in R),
                frozenset(g for g, a in alphas.items() if a in inner_R),
                frozenset(g for g, a in alphas.items() if a in pair_R),
            ))
    return PsetOrbits(pair, G, reps, data)


def theta_map(G: PermGroup, orbits: PsetOrbits, rep: PsetRep, g: int) -> int:
    """Outer class (index into Out(L<u>) representatives) restricting to delta^-1 i_g delta on L."""
    if g not in rep.G_hat:
        raise NotInGHat(f"element {g} is not in Ghat_(Q,delta)")
    cls = orbits.data.out_class_of_restriction(_alpha(G, rep.delta, g))
    assert cls is not None
    return cls


# ---------------------------------------------------------------------------
# dimensions

def _coset_reps(G: PermGroup, big, small) -> list[int]:
    small = list(small)
    seen: set[int] = set()
    out = []
    for g in sorted(big):
        if g in seen:
            continue
        out.append(g)
        seen.update(G.mul[g][h] for h in small)
    return out


def _resolve_W_pair(L: PermGroup, W: OutRepW) -> None:
    if any(x != i for i, x in enumerate(W.pair.u.images)):
        raise WrongPairForW("W must be a module for Out(L,1)")
    if W.pair.L.order != L.order or not is_isomorphic(L, W.pair.L):
        raise WrongPairForW("W belongs to a different group L")


def _theta_local_u1(W: OutRepW, alpha: tuple[int, ...]) -> int:
    data = pair_aut(W.pair)
    cls = data.out_class_of_restriction(alpha)
    return data.out_pair_group.local[cls]


@dataclass
class ZPairTrace:
    Q: Subgroup
    z: int
    gamma_order: int
    rank: int


def _trace_rank_L1(G: PermGroup, W: OutRepW, Q: Subgroup, z: int, delta: tuple[int, ...]) -> tuple[int, int]:
    F = W.F
    N = normalizer(G, Q)
    Cq = centralizer(G, Q.members)
    NQz = [n for n in N.members if G.mul[n][z] == G.mul[z][n]]
    CQz = [c for c in Cq.members if G.mul[c][z] == G.mul[z][c]]
    kernel = product_set(G, Q.members, CQz)
    for h in kernel:
        if _theta_local_u1(W, _alpha(G, delta, h)) != 0:
            raise AssertionError("Q C_G(Q,z) does not act trivially through theta")
    reps = _coset_reps(G, NQz, kernel)
    S = F.zeros((W.dim, W.dim))
    for g in reps:
        S = F.add(S, W.rho(_theta_local_u1(W, _alpha(G, delta, g))))
    return len(reps), F.rank(S)


def dim_simple_L1_W(G: PermGroup, p: int, L: PermGroup, W: OutRepW,
                    details: list | None = None) -> int:
    """Sum over [Z(G,L)] of the rank of the relative trace of N_G(Q,z)/QC_G(Q,z) on W."""
    _resolve_W_pair(L, W)
    L = W.pair.L
    total = 0
    for Q, z in zcal(G, p, L).reps:
        isos = isomorphisms(L, Q)
        delta = tuple(isos[0].images)
        order, r = _trace_rank_L1(G, W, Q, z, delta)
        if len(isos) > 1:
            _, r2 = _trace_rank_L1(G, W, Q, z, tuple(isos[-1].images))
            assert r == r2, "trace rank depends on the choice of delta"
        if details is not None:
            details.append(ZPairTrace(Q, z, order, r))
        total += r
    return total


@dataclass
class GeneralDimReport:
    value: int
    per_rep: list[dict]
    warnings: list[str]
    discrepancies: list[str]


EXPERIMENTAL = "EXPERIMENTAL: general-u dimension via u-invariant PIM heads"


def dim_simple_general(G: PermGroup, pair: DDeltaPair, W: OutRepW, cap: int = ORACLE_CAP,
                       seed: int = 0) -> GeneralDimReport:
    """Sum over P(G,L,u) of rank Tr over Gbar_{Q,d,u} on FCart(C_G(Q)/Z(Q), u) (x) W.  Experimental."""
    if W.pair is not pair and not (W.pair.L is pair.L and W.pair.u == pair.u):
        raise WrongPairForW("W is not a module for this pair")
    p = pair.p
    F = W.F
    orbits = pset(G, pair)
    data = orbits.data
    O = data.out_pair_group
    total = 0
    per_rep = []
    discrepancies: list[str] = []
    for rep in orbits.reps:
        Q = rep.Q
        C = centralizer(G, Q.members)
        Z = subgroup_center(Q)
        quo = quotient(C, Z)
        H = quo.group
        if H.order > cap:
            raise OracleCapExceeded(f"C_G(Q)/Z(Q) has order {H.order} > {cap}")
        cd = cartan_matrix(H, p, seed)
        inv = cd.inventory
        n = len(inv.simples)
        lift = {}
        for c in C.members:
            lift.setdefault(quo.projection[c], c)
        hcls = class_index(H)
        allc = conjugacy_classes(H)
        pos = {c.representative: k for k, c in enumerate(inv.classes)}
        keys = {tuple(v.coeffs for v in row): S for S, row in enumerate(inv.brauer)}

        def permutation(g: int) -> list[int]:
            # index of the twist gS, with Brauer character x -> beta_S(g^-1 x g)
            ginv = G.inv[g]
            colmap = []
            for c in inv.classes:
                y = quo.projection[G.conj(ginv, lift[c.representative])]
                colmap.append(pos[allc[hcls[y]].representative])
            return [keys[tuple(inv.brauer[S][colmap[k]].coeffs for k in range(len(colmap)))] for S in range(n)]

        perm_s = permutation(rep.s)
        invariant = [T for T in range(n) if perm_s[T] == T]
        cols = np.array([[cd.cartan[S][T] % p for S in range(n)] for T in invariant], dtype=np.int64).reshape(-1, n)
        Vb, _ = F.rref(cols) if cols.size else (np.zeros((0, n), dtype=np.int64), [])
        k = Vb.shape[0]

        def restricted(g: int) -> np.ndarray | None:
            perm = permutation(g)
            img = np.zeros_like(Vb)
            for S in range(n):
                img[:, perm[S]] = Vb[:, S]
            coeffs = F.solve_rows(Vb, img) if k else np.zeros((0, 0), dtype=np.int64)
            if coeffs is None:
                return None
            return coeffs.T  # column convention

        for g in sorted(rep.G_Qd):
            M = restricted(g)
            if M is None or not np.array_equal(M, F.identity(k)):
                discrepancies.append(f"G_(Q,d) element {g} acts nontrivially on the Cartan image")
                break
        reps_g = _coset_reps(G, rep.G_Qdu, rep.G_Qd)
        Tr = F.zeros((k * W.dim, k * W.dim))
        for g in reps_g:
            M = restricted(g)
            if M is None:
                discrepancies.append(f"element {g} does not preserve the u-invariant Cartan image")
                continue
            theta = data.out_class_of_restriction(_alpha(G, rep.delta, g))
            Tr = F.add(Tr, F.kron(M, W.rho(O.local[theta])))
        r = F.rank(Tr) if Tr.size else 0
        total += r
        per_rep.append({"Q_order": Q.order, "H_order": H.order, "cart_dim": k, "gbar_order": len(reps_g), "rank": r})
    return GeneralDimReport(total, per_rep, [EXPERIMENTAL], discrepancies)

"""The acceptance corpus: structural checks over a fixed list of (group, prime) cells."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import product
from math import prod

from .cartan import (cartan_matrix, composition_multiset, defect_zero_classes, elementary_divisors_bn,
                     reconstruct_cartan_columns, vx_check)
from .catalogue import SMALL_GROUPS, named_group
from .cyclo import totient
from .ddelta import (DDeltaPair, NonVanishing, enumerate_ddelta_pairs, essential_support, identity_aut,
                     pairs_isomorphic)
from .essential import build_essential, rbar
from .functors import (OutRepW, dim_simple_L1_W, dim_simple_L1_trivial, partition_check, pset,
                       subgroups_isomorphic_to, theta_map)
from .groups import (PermGroup, centralizer, p_subgroups_up_to_conjugacy, prime_divisors, product_set,
                     subgroup_center)
from .homs import automorphism_group, compose_images, inner

PROFILES = {
    "quick": {
        "functor": ["C2", "C3", "S3", "A4", "D8"],
        "cartan": [("C2", 2), ("C3", 3), ("S3", 2), ("S3", 3), ("A4", 2), ("D8", 2)],
        "essential": [("A4", 2), ("S3", 3), ("C2", 2)],
        "rbar_max": 12,
        "vanishing_max": 12,
    },
    "full": {
        "functor": ["C2", "C3", "C6", "C12", "S3", "S4", "A4", "A5", "D8", "Q8", "C3xC3:C2"],
        "cartan": [("C2", 2), ("C3", 3), ("C6", 2), ("C6", 3), ("S3", 2), ("S3", 3), ("A4", 2), ("A4", 3),
                   ("D8", 2), ("Q8", 2), ("S4", 2), ("S4", 3)],
        "essential": [("A4", 2), ("S3", 3), ("C2", 2)],
        "rbar_max": 30,
        "vanishing_max": 24,
    },
}


@dataclass
class CheckResult:
    criterion: int
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)
    timing_ms: float = 0.0

    def to_json(self, timing: bool) -> dict:
        out = {"criterion": self.criterion, "name": self.name, "passed": self.passed, "detail": self.detail}
        if timing:
            out["timing_ms"] = round(self.timing_ms, 3)
        return out


def _timed(fn, *args):
    t = time.perf_counter()
    res = fn(*args)
    res.timing_ms = (time.perf_counter() - t) * 1000
    return res


def _p_types(G: PermGroup, p: int) -> list:
    """One standalone group per iso-type of p-subgroup of G."""
    types = []
    for Q in p_subgroups_up_to_conjugacy(G, p):
        H = Q.as_group()[0]
        if not any(T.order == H.order and subgroups_isomorphic_to(T, p, H) for T in types if T.order == H.order):
            types.append(H)
    return types


def check_two_route(name: str, p: int) -> CheckResult:
    G = named_group(name)
    rows = []
    ok = True
    for L in _p_types(G, p):
        W = OutRepW.trivial(DDeltaPair(L, identity_aut(L), p))
        a = dim_simple_L1_W(G, p, L, W)
        b = dim_simple_L1_trivial(G, p, L)
        ok &= a == b
        rows.append([L.order, a, b])
    return CheckResult(1, f"two-route {name}@{p}", ok, {"L_order/trace/count": rows})


def check_partition(name: str, p: int) -> CheckResult:
    rep = partition_check(named_group(name), p)
    return CheckResult(2, f"partition {name}@{p}", rep.ok,
                       {"breakdown": rep.breakdown, "p_regular_classes": rep.p_regular_classes})


def check_cartan(name: str, p: int, seed: int) -> CheckResult:
    G = named_group(name)
    d = cartan_matrix(G, p, seed, strict=False)
    ok = all(d.checks.values()) and d.snf == elementary_divisors_bn(G, p)
    return CheckResult(3, f"cartan {name}@{p}", ok, {"cartan": d.cartan, "snf": d.snf, "det": d.det,
                                                     "checks": dict(sorted(d.checks.items()))})


def check_gamma(name: str, p: int, seed: int) -> CheckResult:
    G = named_group(name)
    d = cartan_matrix(G, p, seed, strict=False)
    cols = reconstruct_cartan_columns(G, p, seed)
    vx = [vx_check(G, p, c.representative, seed) for c in defect_zero_classes(G, p)]
    ok = d.checks.get("gamma_independent", False) and all(c.ok for c in cols) and all(v.ok for v in vx)
    return CheckResult(4, f"gamma {name}@{p}", ok, {"gamma": d.gamma.tolist(), "columns": [c.ok for c in cols],
                                                   "vx": [v.ok for v in vx]})


def check_essential(name: str, p: int) -> CheckResult:
    A = build_essential(named_group(name), p, p)
    B = A.basis()
    one = A.one()
    assoc = all((x * y) * z == x * (y * z) for x, y, z in product(B, repeat=3))
    unit = all(one * x == x and x * one == x for x in B)
    return CheckResult(5, f"essential {name}@{p}", assoc and unit,
                       {"dimension": A.dimension, "associative": assoc, "unital": unit})


def check_rbar(nmax: int) -> CheckResult:
    bad = []
    for n in range(1, nmax + 1):
        for ch in (0, 2, 3, 5, 7):
            if ch and n % ch == 0:
                continue
            if rbar(n, ch).rank != totient(n):
                bad.append([n, ch])
    return CheckResult(5, f"rbar rank n<={nmax}", not bad, {"failures": bad})


def _criterion_holds(G: PermGroup, p: int) -> bool:
    """Direct test: normal Sylow P and an element k of order |G:P| with no nontrivial power centralising P."""
    from .groups import sylow
    P = sylow(G, p)
    if not P.is_normal():
        return False
    m = G.order // P.order
    for k in range(G.order):
        if G.element_orders[k] != m:
            continue
        powers = [G.power(k, e) for e in range(1, m)]
        if all(any(G.mul[y][x] != G.mul[x][y] for x in P.members) for y in powers):
            return True
    return False


def check_vanishing(max_order: int) -> CheckResult:
    mismatches = []
    reasons = {}
    for name in SMALL_GROUPS + ["C3xC3:V4", "D30"]:
        G = named_group(name)
        if G.order > max_order and name not in ("C3xC3:V4", "D30"):
            continue
        for p in prime_divisors(G.order):
            rep = essential_support(G, p)
            if isinstance(rep, NonVanishing) != _criterion_holds(G, p):
                mismatches.append(f"{name}@{p}")
            if not isinstance(rep, NonVanishing):
                reasons.setdefault(rep.reason, f"{name}@{p}")
    witnesses = {"NoNormalSylowComplementForm": ("S3", 2), "KNotFaithful": ("C6", 3),
                 "KNotCyclic": ("C3xC3:V4", 3), "KNotElementaryOrSplitFailure": ("D30", 5)}
    wit_ok = all(getattr(essential_support(named_group(g), p), "reason", None) == r for r, (g, p) in witnesses.items())
    return CheckResult(6, f"vanishing |G|<={max_order}", not mismatches and wit_ok,
                       {"mismatches": mismatches, "first_witness": dict(sorted(reasons.items()))})


def check_ddelta() -> CheckResult:
    a = enumerate_ddelta_pairs(2, 4)
    b = enumerate_ddelta_pairs(3, 3)
    irredundant = all(not pairs_isomorphic(x, y) for lst in (a, b) for i, x in enumerate(lst) for y in lst[i + 1:])
    summary = [[x.L.order, x.label, x.u_order] for x in a + b]
    return CheckResult(7, "ddelta enumeration", len(a) == 5 and len(b) == 3 and irredundant, {"pairs": summary})


def check_scaffolding(name: str, p: int, max_pair_order: int) -> CheckResult:
    G = named_group(name)
    ok = True
    detail = []
    pairs = [x for x in enumerate_ddelta_pairs(p, max_pair_order)] if p in (2, 3) else []
    for pair in pairs:
        orbits = pset(G, pair)
        is_u1 = all(x == i for i, x in enumerate(pair.u.images))
        if is_u1:
            ok &= len(orbits.reps) == len(subgroups_isomorphic_to(G, p, pair.L)) if pair.L.order > 1 else len(orbits.reps) == 1
        for rep in orbits.reps:
            Ghat = sorted(rep.G_hat)
            th = {g: theta_map(G, orbits, rep, g) for g in Ghat}
            mul = orbits.data.aut_Lu.out_mul
            hom = all(th[G.mul[g][h]] == mul[th[g]][th[h]] for g in Ghat for h in Ghat)
            kernel = frozenset(g for g in Ghat if th[g] == 0) == rep.G_Qd
            ok &= hom and kernel and rep.G_Qd <= rep.G_Qdu <= rep.G_hat
            if is_u1:
                C = centralizer(G, rep.Q.members)
                ok &= rep.G_Qd == product_set(G, rep.Q.members, C.members) and rep.G_Qdu == rep.G_hat == rep.N
            detail.append([pair.L.order, pair.u_order, rep.orders["G_Qd"], rep.orders["G_hat"], hom, kernel])
    return CheckResult(8, f"scaffolding {name}@{p}", ok, {"reps": detail})


def check_inner_fixers(name: str, p: int) -> CheckResult:
    G = named_group(name)
    rep = essential_support(G, p)
    if not isinstance(rep, NonVanishing):
        return CheckResult(9, f"inner-fixers {name}@{p}", True, {"applicable": False})
    A = automorphism_group(G)
    fixing = {a for a in A.auts if all(a[x] == x for x in rep.P.members)}
    conj = {inner(G, z) for z in subgroup_center(rep.P).members}
    return CheckResult(9, f"inner-fixers {name}@{p}", fixing == conj, {"applicable": True, "count": len(fixing)})


def check_chop_seeds(name: str, p: int, seed: int) -> CheckResult:
    G = named_group(name)
    a = composition_multiset(G, p, seed)
    b = composition_multiset(G, p, seed + 1)
    return CheckResult(10, f"chop seeds {name}@{p}", a == b, {"factors": [[d, m] for d, _, m in a]})


def run_corpus(profile: str, p: int | None = None, seed: int = 0) -> list[CheckResult]:
    if profile not in PROFILES:
        raise KeyError(profile)
    prof = PROFILES[profile]
    keep = (lambda q: True) if p is None else (lambda q: q == p)
    out: list[CheckResult] = []
    for name in prof["functor"]:
        for q in prime_divisors(named_group(name).order):
            if keep(q):
                out.append(_timed(check_two_route, name, q))
                out.append(_timed(check_partition, name, q))
    for name, q in prof["cartan"]:
        if keep(q):
            out.append(_timed(check_cartan, name, q, seed))
            out.append(_timed(check_gamma, name, q, seed))
            out.append(_timed(check_chop_seeds, name, q, seed))
    for name, q in prof["essential"]:
        if keep(q):
            out.append(_timed(check_essential, name, q))
    if p is None:
        out.append(_timed(check_rbar, prof["rbar_max"]))
        out.append(_timed(check_vanishing, prof["vanishing_max"]))
        out.append(_timed(check_ddelta))
    for name in prof["functor"]:
        for q in prime_divisors(named_group(name).order):
            if keep(q) and q in (2, 3):
                out.append(_timed(check_scaffolding, name, q, 4 if q == 2 else 3))
                out.append(_timed(check_inner_fixers, name, q))
    return out

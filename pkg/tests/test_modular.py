"""MeatAxe chopping, Brauer characters, Cartan matrices and the gamma basis."""

from itertools import product

import numpy as np
import pytest

from ppfun.cartan import (brauer_character, cartan_matrix, composition_multiset, defect_zero_classes, dim_S_11,
                          elementary_divisors_bn, pim_characters, p_regular_classes, reconstruct_cartan_columns,
                          simple_modules, splitting_field, vx_check)
from ppfun.catalogue import named_group
from ppfun.cyclo import CycloValue
from ppfun.errors import OracleCapExceeded
from ppfun.gf import GF
from ppfun.intlinalg import determinant
from ppfun.meataxe import ModuleRep, chop, composition_factors, regular_module, trivial_module
from ppfun.perm import Perm


def irreducible_by_exhaustion(S: ModuleRep) -> bool:
    """Every nonzero vector of F^d spins up to the whole space."""
    F, d = S.F, S.dim
    for v in product(range(F.q), repeat=d):
        if not any(v):
            continue
        rows = [np.array(v)]
        k = 0
        while k < len(rows) and len(rows) < d:
            for X in S.gens:
                w = F.matmul(X, rows[k].reshape(-1, 1)).ravel()
                if F.rank(np.array(rows + [w])) > len(rows):
                    rows.append(w)
            k += 1
        if len(rows) < d:
            return False
    return True


def test_chop_regular_c2():
    G = named_group("C2")
    fs = chop(regular_module(GF(2), G), np.random.default_rng(0))
    assert [(f.module.dim, f.multiplicity) for f in fs] == [(1, 2)]


def test_chop_regular_s3_mod3():
    G = named_group("S3")
    fs = chop(regular_module(GF(3), G), np.random.default_rng(0))
    assert sorted((f.module.dim, f.multiplicity) for f in fs) == [(1, 3), (1, 3)]


def test_irreducible_input_is_its_own_factor():
    G = named_group("S3")
    T = trivial_module(GF(3), G)
    fs = chop(T, np.random.default_rng(0))
    assert len(fs) == 1 and fs[0].multiplicity == 1 and fs[0].module.dim == 1


@pytest.mark.parametrize("name,p", [("S3", 2), ("A4", 2), ("S4", 2), ("S4", 3), ("D8", 2), ("A4", 3), ("Q8", 2),
                                    ("C3xC3:C2", 2), ("SL(2,3)", 3)])
def test_factor_bookkeeping_and_irreducibility(name, p):
    G = named_group(name)
    inv = simple_modules(G, p)
    assert len(inv.simples) == len(p_regular_classes(G, p))
    assert sum(S.dim * m for S, m in zip(inv.simples, inv.multiplicities)) == G.order
    for S in inv.simples:
        assert S.is_representation()
        if S.F.q ** S.dim <= 256:
            assert irreducible_by_exhaustion(S)


def test_discovery_order_factors_fill_regular_module():
    G = named_group("A4")
    fs = composition_factors(regular_module(GF(2, 2), G), np.random.default_rng(3))
    assert sum(f.module.dim for f in fs) == 12


@pytest.mark.parametrize("name,p", [("S4", 2), ("A5", 2), ("SL(2,3)", 2), ("S4", 3)])
def test_seed_independence(name, p):
    G = named_group(name)
    assert composition_multiset(G, p, 0) == composition_multiset(G, p, 17)


@pytest.mark.parametrize("name,p,m", [("S3", 3, 1), ("A4", 2, 2), ("C2", 2, 1), ("A5", 2, 4), ("C7:C3", 2, 6)])
def test_splitting_field(name, p, m):
    assert splitting_field(named_group(name), p).m == m


def test_simple_dims():
    assert simple_modules(named_group("C3"), 3).dims == [1]
    assert simple_modules(named_group("S3"), 3).dims == [1, 1]
    assert simple_modules(named_group("A4"), 2).dims == [1, 1, 1]
    assert simple_modules(named_group("A5"), 2).dims == [1, 2, 2, 4]


def test_brauer_rows():
    G = named_group("S3")
    inv = simple_modules(G, 3)
    N = inv.N
    assert inv.brauer[0] == [CycloValue.rational(N, 1)] * 2
    t = G.index[Perm.from_cycles("(1 2)", 3)]
    col = next(k for k, c in enumerate(inv.classes) if t in c.members)
    assert inv.brauer[1][col] == CycloValue.rational(N, -1)
    ident = next(k for k, c in enumerate(inv.classes) if c.representative == 0)
    for S, row in zip(inv.simples, inv.brauer):
        assert row[ident] == CycloValue.rational(N, S.dim)
    assert brauer_character(inv.simples[1], [0], 3, N) == [CycloValue.rational(N, 1)]


def test_pim_characters_s3():
    G = named_group("S3")
    inv = simple_modules(G, 3)
    P = pim_characters(inv.brauer, G, 3, inv.classes)
    ident = next(k for k, c in enumerate(inv.classes) if c.representative == 0)
    other = 1 - ident
    assert P[0][ident] == CycloValue.rational(inv.N, 3)
    assert P[0][other] == CycloValue.rational(inv.N, 1)


def test_pims_equal_simples_when_semisimple():
    G = named_group("S3")
    inv = simple_modules(G, 5)
    assert pim_characters(inv.brauer, G, 5, inv.classes) == inv.brauer


# Cartan matrices worked out by hand from block theory (dims sorted, trivial first)
KNOWN_CARTAN = {
    ("C2", 2): [[2]],
    ("D8", 2): [[8]],
    ("Q8", 2): [[8]],
    ("S3", 3): [[2, 1], [1, 2]],
    ("S3", 2): [[2, 0], [0, 1]],
    ("S3", 5): [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
    ("C6", 3): [[3, 0], [0, 3]],
    ("A4", 2): [[2, 1, 1], [1, 2, 1], [1, 1, 2]],
    ("A4", 3): [[3, 0], [0, 1]],
    ("S4", 2): [[4, 2], [2, 3]],
    ("S4", 3): [[2, 1, 0, 0], [1, 2, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
    ("A5", 2): [[4, 2, 2, 0], [2, 2, 1, 0], [2, 1, 2, 0], [0, 0, 0, 1]],
}


@pytest.mark.parametrize("key", sorted(KNOWN_CARTAN))
def test_known_cartan(key):
    name, p = key
    G = named_group(name)
    data = cartan_matrix(G, p)
    assert data.cartan == KNOWN_CARTAN[key]
    assert all(data.checks.values())
    assert determinant(data.cartan) == np.prod(elementary_divisors_bn(G, p))


def test_s3_mod3_snf_and_gamma():
    data = cartan_matrix(named_group("S3"), 3)
    assert data.snf == [1, 3]
    assert data.gamma.tolist() == [[2, 1]]
    assert elementary_divisors_bn(named_group("S3"), 3) == [1, 3]


def test_brauer_nesbitt_examples():
    assert elementary_divisors_bn(named_group("A4"), 2) == [1, 1, 4]
    assert elementary_divisors_bn(named_group("C5"), 5) == [5]


def test_defect_zero_classes():
    S3 = named_group("S3")
    dz = defect_zero_classes(S3, 3)
    assert len(dz) == 1 and S3.element_orders[dz[0].representative] == 2
    assert defect_zero_classes(named_group("D8"), 2) == []
    A4 = named_group("A4")
    assert sorted(A4.element_orders[c.representative] for c in defect_zero_classes(A4, 2)) == [3, 3]


@pytest.mark.parametrize("name,p", [("S3", 3), ("A4", 2), ("D8", 2), ("S4", 3), ("A5", 2), ("S3", 5)])
def test_reconstruct_columns(name, p):
    assert all(c.ok for c in reconstruct_cartan_columns(named_group(name), p))


def test_semisimple_gamma_is_invertible():
    data = cartan_matrix(named_group("S3"), 5)
    assert data.gamma.shape == (3, 3) and data.field.rank(data.gamma) == 3


def test_vx_s3():
    G = named_group("S3")
    t = G.index[Perm.from_cycles("(1 2)", 3)]
    rep = vx_check(G, 3, t)
    assert rep.ok
    classes = simple_modules(G, 3).classes
    assert sorted(rep.character) == [0, 2]
    ident = next(k for k, c in enumerate(classes) if c.representative == 0)
    assert rep.character[ident] == 0


def test_vx_a4():
    G = named_group("A4")
    x = G.index[Perm.from_cycles("(1 2 3)", 4)]
    rep = vx_check(G, 2, x)
    assert rep.ok
    assert sorted(rep.character) == [0, 0, 3]


@pytest.mark.parametrize("name,p,n", [("S3", 3, 1), ("C3", 3, 0), ("A4", 2, 2), ("A5", 2, 3)])
def test_dim_s11(name, p, n):
    G = named_group(name)
    assert dim_S_11(G, p) == n
    assert dim_S_11(G, p, use_oracle=True) == n


def test_oracle_cap():
    with pytest.raises(OracleCapExceeded):
        simple_modules(named_group("A5"), 2, cap=30)

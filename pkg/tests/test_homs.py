import pytest

from oracles import automorphism_count
from ppfun.catalogue import (abelian_invariants, is_abelian, iso_label, named_group, p_group_catalogue, same_iso_type,
                             semidirect)
from ppfun.ddelta import identity_aut
from ppfun.errors import CapExceeded, CatalogueIncomplete
from ppfun.groups import Subgroup, center, subgroup_generated
from ppfun.homs import AutMap, automorphism_group, automorphisms, inn_matches_center, is_isomorphic, isomorphisms
from ppfun.perm import Perm


@pytest.mark.parametrize("name,order,out", [("S3", 6, 1), ("C1", 1, 1), ("A4", 24, 2), ("V4", 6, 6), ("C8", 4, 4),
                                            ("D8", 8, 2), ("Q8", 24, 6), ("S4", 24, 1), ("C3xC3", 48, 48)])
def test_aut_orders(name, order, out):
    A = automorphism_group(named_group(name))
    assert A.order == order
    assert A.out_order == out


@pytest.mark.parametrize("name", ["S3", "D8", "Q8", "A4", "C4xC2", "D12", "C3:C4", "SL(2,3)", "C7:C3"])
def test_aut_order_against_bruteforce(name):
    G = named_group(name)
    assert automorphism_group(G).order == automorphism_count(G)


@pytest.mark.parametrize("name", ["S3", "A4", "D8", "C4xC2", "Q8"])
def test_automorphisms_are_homomorphisms(name):
    G = named_group(name)
    rep = automorphisms(G)
    assert all(AutMap(G, a).is_homomorphism() for a in automorphism_group(G).auts)
    assert rep.order % rep.inner_order == 0
    assert len(rep.out_reps) * rep.inner_order == rep.order
    assert inn_matches_center(G)


def test_aut_cap():
    with pytest.raises(CapExceeded):
        automorphism_group(named_group("A5"), cap=10)


def test_isomorphism_counts():
    S4 = named_group("S4")
    C2 = named_group("C2")
    t = S4.index[Perm.from_cycles("(1 2)", 4)]
    assert len(isomorphisms(C2, subgroup_generated(S4, [t]))) == 1
    V4 = named_group("V4")
    A4 = named_group("A4")
    from ppfun.groups import sylow
    Q = sylow(A4, 2)
    assert len(isomorphisms(V4, Q)) == 6
    assert isomorphisms(named_group("C4"), Q) == []


def test_out_mul_is_a_group_table():
    A = automorphism_group(named_group("Q8"))
    n = A.out_order
    T = A.out_mul
    assert all(T[0][i] == i == T[i][0] for i in range(n))
    assert all(sorted(row) == list(range(n)) for row in T)
    for a in range(n):
        for b in range(n):
            for c in range(n):
                assert T[T[a][b]][c] == T[a][T[b][c]]


def test_semidirect_examples():
    V4 = named_group("V4")
    A = automorphism_group(V4)
    u3 = next(a for a in A.auts if AutMap(V4, a).order() == 3)
    prod = semidirect(V4, AutMap(V4, u3))
    assert prod.group.order == 12 and is_isomorphic(prod.group, named_group("A4"))
    C3 = named_group("C3")
    inv = AutMap(C3, tuple(C3.inv))
    assert is_isomorphic(semidirect(C3, inv).group, named_group("S3"))
    D8 = named_group("D8")
    assert is_isomorphic(semidirect(D8, identity_aut(D8)).group, D8)


def test_semidirect_embeddings():
    C3 = named_group("C3")
    prod = semidirect(C3, AutMap(C3, tuple(C3.inv)))
    G = prod.group
    assert Subgroup(G, frozenset(prod.embed_L)).is_normal()
    u = prod.u
    for l in range(3):
        assert G.conj(u, prod.embed_L[l]) == prod.embed_L[C3.inv[l]]


def test_catalogue_labels():
    assert iso_label(named_group("C2xC2")) == "V4"
    assert same_iso_type(named_group("D8"), named_group("D8"))
    assert not same_iso_type(named_group("D8"), named_group("Q8"))
    assert is_abelian(named_group("C4xC2")) and not is_abelian(named_group("S3"))
    assert abelian_invariants(named_group("C6xC2")) == (2, 2, 3)  # primary invariants


def test_p_group_catalogue():
    orders = [G.order for _, _, G in p_group_catalogue(2, 8)]
    assert orders.count(8) == 5 and orders.count(4) == 2
    assert len(p_group_catalogue(3, 27)) == 1 + 1 + 2 + 5
    with pytest.raises(CatalogueIncomplete):
        p_group_catalogue(2, 32)


def test_p_group_catalogue_pairwise_distinct():
    entries = p_group_catalogue(2, 16)
    for i, (_, _, A) in enumerate(entries):
        for _, _, B in entries[i + 1:]:
            assert not (A.order == B.order and is_isomorphic(A, B))
    assert sum(1 for _, _, G in entries if G.order == 16) == 14

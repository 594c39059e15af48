from math import gcd

import pytest

from oracles import automorphism_maps, map_order
from ppfun.catalogue import named_group, p_group_catalogue
from ppfun.ddelta import (DDeltaPair, NonVanishing, Vanishing, enumerate_ddelta_pairs, essential_support,
                          identity_aut, is_ddelta_pair, pair_aut, pairs_isomorphic)
from ppfun.homs import AutMap, automorphism_group, is_isomorphic


def aut_of_order(L, n):
    return next(AutMap(L, a) for a in automorphism_group(L).auts if AutMap(L, a).order() == n)


def test_is_ddelta_pair():
    V4, C4 = named_group("V4"), named_group("C4")
    assert is_ddelta_pair(V4, aut_of_order(V4, 3), 2)
    assert is_ddelta_pair(C4, identity_aut(C4), 2)
    assert not is_ddelta_pair(C4, AutMap(C4, tuple(C4.inv)), 2)
    assert not is_ddelta_pair(named_group("C6"), identity_aut(named_group("C6")), 2)


def oracle_pair_count(p, max_order):
    """Aut(L)-conjugacy classes of p'-elements of Aut(L), summed over catalogue L."""
    total = 0
    for _, _, L in p_group_catalogue(p, max_order):
        auts = automorphism_maps(L)
        pprime = [a for a in auts if gcd(map_order(a), p) == 1]
        seen = set()
        for a in pprime:
            if a in seen:
                continue
            total += 1
            for g in auts:
                ginv = tuple(sorted(range(len(g)), key=lambda i: g[i]))
                seen.add(tuple(g[a[ginv[i]]] for i in range(len(g))))
    return total


@pytest.mark.parametrize("p,max_order,count", [(2, 4, 5), (2, 1, 1), (3, 3, 3), (2, 8, None), (3, 9, None)])
def test_enumeration_counts(p, max_order, count):
    pairs = enumerate_ddelta_pairs(p, max_order)
    assert len(pairs) == oracle_pair_count(p, max_order)
    if count is not None:
        assert len(pairs) == count
    for i, a in enumerate(pairs):
        for b in pairs[i + 1:]:
            assert not pairs_isomorphic(a, b)


def test_p2_order4_pairs():
    pairs = enumerate_ddelta_pairs(2, 4)
    assert [(x.L.order, x.label, x.u_order) for x in pairs] == [
        (1, "1", 1), (2, "C2", 1), (4, "C4", 1), (4, "V4", 1), (4, "V4", 3)]


def test_pair_isomorphism_detects_conjugate_automorphisms():
    V4 = named_group("V4")
    us = [AutMap(V4, a) for a in automorphism_group(V4).auts if AutMap(V4, a).order() == 3]
    assert len(us) == 2
    assert pairs_isomorphic(DDeltaPair(V4, us[0], 2), DDeltaPair(V4, us[1], 2))
    assert not pairs_isomorphic(DDeltaPair(V4, us[0], 2), DDeltaPair(V4, identity_aut(V4), 2))


def test_out_pair_examples():
    V4 = named_group("V4")
    d = pair_aut(DDeltaPair(V4, aut_of_order(V4, 3), 2))
    assert is_isomorphic(d.Lu, named_group("A4"))
    assert d.out_pair_order == 1
    assert automorphism_group(d.Lu).out_order == 2
    C3 = named_group("C3")
    d2 = pair_aut(DDeltaPair(C3, AutMap(C3, tuple(C3.inv)), 3))
    assert is_isomorphic(d2.Lu, named_group("S3")) and d2.out_pair_order == 1
    for name in ("C4", "V4", "D8", "Q8"):
        L = named_group(name)
        d3 = pair_aut(DDeltaPair(L, identity_aut(L), 2))
        assert d3.out_pair_order * d3.aut_Lu.inner_order == len(d3.aut_pair)


@pytest.mark.parametrize("name", ["C4", "V4", "D8", "Q8", "C3"])
def test_out_of_trivial_pair_is_aut_of_L(name):
    L = named_group(name)
    p = 3 if name == "C3" else 2
    d = pair_aut(DDeltaPair(L, identity_aut(L), p))
    # L<1> = L, and every automorphism fixes the central u = 1
    assert d.out_pair_order == automorphism_group(L).out_order


def test_aut_pair_membership_scan():
    V4 = named_group("V4")
    d = pair_aut(DDeltaPair(V4, aut_of_order(V4, 3), 2))
    from ppfun.groups import class_index
    cls = class_index(d.Lu)
    u = d.product.u
    expected = [a for a in d.aut_Lu.auts if cls[a[u]] == cls[u]]
    assert d.aut_pair == expected


def test_support_examples():
    rep = essential_support(named_group("S3"), 3)
    assert isinstance(rep, NonVanishing)
    assert rep.K_order == 2 and rep.L.order == 3 and rep.u.order() == 2
    assert essential_support(named_group("C6"), 3).reason == "KNotFaithful"
    assert essential_support(named_group("S3"), 2).reason == "NoNormalSylowComplementForm"
    assert essential_support(named_group("C3xC3:V4"), 3).reason == "KNotCyclic"
    assert essential_support(named_group("D30"), 5).reason == "KNotElementaryOrSplitFailure"


def test_support_u_is_conjugation():
    G = named_group("A4")
    rep = essential_support(G, 2)
    for i in range(rep.L.order):
        assert rep.embed_L[rep.u.images[i]] == G.conj(rep.k, rep.embed_L[i])
    assert rep.P.is_normal() and rep.K.order == 3

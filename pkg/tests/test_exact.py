"""Integer linear algebra and cyclotomic arithmetic against sympy and complex evaluation."""

import cmath
from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from oracles import smith_diagonal
from ppfun.cyclo import CycloValue, cyclotomic_poly, totient
from ppfun.intlinalg import determinant, rank_mod_p, rank_q, rref, smith_normal_form

small_mats = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c), min_size=r, max_size=r)))


@given(small_mats)
@settings(max_examples=150, deadline=None)
def test_rank_and_snf_against_sympy(M):
    A = sympy.Matrix(M)
    assert rank_q(M) == A.rank()
    assert smith_normal_form(M) == smith_diagonal(M)
    for p in (2, 3, 5):
        assert rank_mod_p(M, p) == _rank_gf(M, p)


def _rank_gf(M, p):
    """Plain Gaussian elimination mod p, written independently."""
    A = [[x % p for x in row] for row in M]
    r = 0
    cols = len(A[0])
    for c in range(cols):
        piv = next((i for i in range(r, len(A)) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = pow(A[r][c], -1, p)
        A[r] = [x * inv % p for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [(x - f * y) % p for x, y in zip(A[i], A[r])]
        r += 1
    return r


@given(st.integers(1, 5).flatmap(lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n),
                                                    min_size=n, max_size=n)))
@settings(max_examples=100, deadline=None)
def test_determinant(M):
    assert determinant(M) == sympy.Matrix(M).det()


def test_rref_column_order():
    rows = [[1, 1, 1]]
    R, piv = rref(rows, column_order=[2, 1, 0])
    assert piv == [2]
    assert R[0] == [Fraction(1)] * 3


def test_snf_known():
    assert smith_normal_form([[2, 1], [1, 2]]) == [1, 3]
    assert smith_normal_form([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]) == [2, 6, 12]
    assert smith_normal_form([[0, 0], [0, 0]]) == []


@pytest.mark.parametrize("n", range(1, 40))
def test_cyclotomic_poly(n):
    x = sympy.Symbol("x")
    assert list(cyclotomic_poly(n)) == list(reversed(sympy.Poly(sympy.cyclotomic_poly(n, x), x).all_coeffs()))
    assert len(cyclotomic_poly(n)) - 1 == totient(n) == sympy.totient(n)


def as_complex(v: CycloValue) -> complex:
    z = cmath.exp(2j * cmath.pi / v.n)
    return sum(float(c) * z ** k for k, c in enumerate(v.coeffs))


cyclo_vals = st.integers(1, 24).flatmap(
    lambda n: st.tuples(st.just(n), st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=4),
                                             min_size=1, max_size=2 * n)))


def build(n, cs):
    v = CycloValue.rational(n, 0)
    for k, c in enumerate(cs):
        v = v + CycloValue.zeta_power(n, k) * c
    return v


@given(cyclo_vals, cyclo_vals)
@settings(max_examples=120, deadline=None)
def test_cyclo_ring_ops_match_complex(a, b):
    n = a[0]
    x = build(n, a[1])
    y = build(n, b[1][:2 * n])
    assert abs(as_complex(x + y) - (as_complex(x) + as_complex(y))) < 1e-6
    assert abs(as_complex(x * y) - as_complex(x) * as_complex(y)) < 1e-6
    assert abs(as_complex(x.conjugate()) - as_complex(x).conjugate()) < 1e-6
    if not y.is_zero():
        assert x / y * y == x
        assert abs(as_complex(y.inverse()) * as_complex(y) - 1) < 1e-6


def test_roots_of_unity_sum_to_zero():
    for n in range(2, 13):
        s = sum((CycloValue.zeta_power(n, k) for k in range(n)), CycloValue.rational(n, 0))
        assert s.is_zero()


def test_galois():
    z = CycloValue.zeta_power(5, 1)
    assert z.galois(2) == CycloValue.zeta_power(5, 2)
    assert (z + z.galois(4)).galois(3) == z.galois(3) + z.galois(2)
    assert CycloValue.rational(7, Fraction(3, 2)).to_rational() == Fraction(3, 2)

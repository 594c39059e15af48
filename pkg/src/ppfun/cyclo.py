"""Exact arithmetic in the cyclotomic field Q(zeta_N)."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable

from .intlinalg import rref


def _polydiv_exact(num: list[int], den: list[int]) -> list[int]:
    """Exact division of integer polynomials (low-to-high), den monic."""
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + len(den) - 1]
        out[k] = c
        if c:
            for j, d in enumerate(den):
                num[k + j] -= c * d
    assert not any(num), "cyclotomic division left a remainder"
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Phi_n as low-to-high integer coefficients: (x^n - 1) divided by Phi_d for every proper divisor d."""
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _polydiv_exact(num, list(cyclotomic_poly(d)))
    return tuple(num)


def totient(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


def _reduce(coeffs: list[Fraction], n: int) -> tuple[Fraction, ...]:
    phi = cyclotomic_poly(n)
    deg = len(phi) - 1
    c = list(coeffs)
    for k in range(len(c) - 1, deg - 1, -1):
        a = c[k]
        if a:
            for j in range(deg + 1):
                c[k - deg + j] -= a * phi[j]
    c = c[:deg] + [Fraction(0)] * max(0, deg - len(c))
    return tuple(c)


class CycloValue:
    """An element of Q(zeta_N), stored as rational coefficients of 1, z, ..., z^(phi(N)-1)."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs: Iterable = ()):
        self.n = n
        self.coeffs = _reduce([Fraction(c) for c in coeffs], n)

    @classmethod
    def _raw(cls, n: int, coeffs: tuple[Fraction, ...]) -> "CycloValue":
        obj = object.__new__(cls)
        obj.n = n
        obj.coeffs = coeffs
        return obj

    @classmethod
    def rational(cls, n: int, a) -> "CycloValue":
        return cls(n, [a])

    @classmethod
    def zeta_power(cls, n: int, k: int) -> "CycloValue":
        return _zeta_power(n, k % n)

    def __add__(self, other):
        other = self._coerce(other)
        return CycloValue._raw(self.n, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycloValue._raw(self.n, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycloValue._raw(self.n, tuple(a * other for a in self.coeffs))
        other = self._coerce(other)
        prod = [Fraction(0)] * (2 * len(self.coeffs))
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        prod[i + j] += a * b
        return CycloValue._raw(self.n, _reduce(prod, self.n))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycloValue._raw(self.n, tuple(a / other for a in self.coeffs))
        return self * self._coerce(other).inverse()

    def _coerce(self, other) -> "CycloValue":
        if isinstance(other, CycloValue):
            if other.n != self.n:
                raise ValueError(f"mixing Q(zeta_{self.n}) and Q(zeta_{other.n})")
            return other
        return CycloValue.rational(self.n, other)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycloValue.rational(self.n, other)
        return isinstance(other, CycloValue) and self.n == other.n and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.n, self.coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def galois(self, a: int) -> "CycloValue":
        """Apply the automorphism zeta -> zeta^a (a coprime to N)."""
        out = CycloValue.rational(self.n, 0)
        for k, c in enumerate(self.coeffs):
            if c:
                out = out + _zeta_power(self.n, (a * k) % self.n) * c
        return out

    def conjugate(self) -> "CycloValue":
        return self.galois(-1)

    def inverse(self) -> "CycloValue":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(zeta)")
        d = len(self.coeffs)
        # columns: self * z^j, solve M c = e_0
        cols = []
        basis = CycloValue._raw(self.n, tuple(Fraction(int(i == 0)) for i in range(d)))
        for j in range(d):
            cols.append((self * basis).coeffs)
            basis = basis * _zeta_power(self.n, 1)
        aug = [[cols[j][i] for j in range(d)] + [Fraction(int(i == 0))] for i in range(d)]
        R, piv = rref(aug)
        assert piv == list(range(d))
        return CycloValue._raw(self.n, tuple(R[i][d] for i in range(d)))

    def __repr__(self):
        return f"CycloValue({self.n}, {self})"

    def __str__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}*{mono}")
        if not terms:
            return "0"
        return " + ".join(terms).replace("+ -", "- ")

    def to_json(self):
        if self.is_rational():
            c = self.coeffs[0]
            return int(c) if c.denominator == 1 else str(c)
        return {"N": self.n, "coeffs": [str(c) for c in self.coeffs]}


@lru_cache(maxsize=None)
def _zeta_power(n: int, k: int) -> CycloValue:
    coeffs = [Fraction(0)] * (k + 1)
    coeffs[k] = Fraction(1)
    return CycloValue._raw(n, _reduce(coeffs, n))

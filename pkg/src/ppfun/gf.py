"""Finite fields GF(p^m) and dense linear algebra over them.

Elements are encoded as integers ``sum c_i p^i`` (polynomial basis over the
fixed modulus).  The modulus for each (p, m) is the lexicographically least
primitive polynomial, read from a shipped JSON table; the class of ``x`` is
therefore a primitive element, and it is the element every root-of-unity
convention in the package is built on.  Matrices are numpy int64 arrays.
"""

from __future__ import annotations

import json
import os
from functools import lru_cache
from importlib import resources
from typing import Sequence

import numpy as np

from .errors import FieldTableExhausted
from .groups import is_prime, prime_divisors

FIELD_LIMIT = 1 << 20
TABLE_ENV = "PPFUN_FIELD_TABLE"
_ADD_TABLE_MAX = 1024


# ---------------------------------------------------------------------------
# primitive polynomials

def _polymulmod(a: list[int], b: list[int], f: list[int], p: int) -> list[int]:
    m = len(f) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    for k in range(len(prod) - 1, m - 1, -1):
        c = prod[k]
        if c:
            for j in range(m + 1):
                prod[k - m + j] = (prod[k - m + j] - c * f[j]) % p
    out = prod[:m] + [0] * (m - len(prod[:m]))
    return out


def _x_power(e: int, f: list[int], p: int) -> list[int]:
    m = len(f) - 1
    result = [1] + [0] * (m - 1)
    base = ([0, 1] + [0] * (m - 2)) if m > 1 else [(-f[0]) % p]
    while e:
        if e & 1:
            result = _polymulmod(result, base, f, p)
        base = _polymulmod(base, base, f, p)
        e >>= 1
    return result


def is_primitive_poly(f: Sequence[int], p: int) -> bool:
    """``f`` monic (low-to-high coefficients) is primitive iff x has order p^m - 1 modulo f."""
    f = list(f)
    m = len(f) - 1
    if f[-1] != 1 or f[0] % p == 0:
        return False
    q1 = p ** m - 1
    one = [1] + [0] * (m - 1)
    if _x_power(q1, f, p) != one:
        return False
    return all(_x_power(q1 // r, f, p) != one for r in prime_divisors(q1))


def least_primitive_poly(p: int, m: int) -> list[int]:
    """Least monic primitive polynomial of degree m, ordered by the integer sum c_i p^i (i < m)."""
    for code in range(1, p ** m):
        coeffs = []
        c = code
        for _ in range(m):
            coeffs.append(c % p)
            c //= p
        f = coeffs + [1]
        if is_primitive_poly(f, p):
            return f
    raise FieldTableExhausted(f"no primitive polynomial found for GF({p}^{m})")


def _table_path() -> str | None:
    return os.environ.get(TABLE_ENV)


@lru_cache(maxsize=None)
def _load_table(path: str | None) -> dict[str, list[int]]:
    if path:
        with open(path) as fh:
            return json.load(fh)
    return json.loads(resources.files("ppfun").joinpath("data/field_table.json").read_text())


def modulus_for(p: int, m: int) -> list[int]:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p ** m >= FIELD_LIMIT:
        raise FieldTableExhausted(f"GF({p}^{m}) exceeds the field limit 2^20")
    table = _load_table(_table_path())
    key = f"{p},{m}"
    if key in table:
        return list(table[key])
    if m == 1 and _table_path() is None:
        # primes beyond the shipped range: degree one is a short search over x - r
        return least_primitive_poly(p, 1)
    raise FieldTableExhausted(f"GF({p}^{m}) is not in the field table")


# ---------------------------------------------------------------------------

class GF:
    """GF(p^m) with log/antilog tables and vectorised arithmetic."""

    def __init__(self, p: int, m: int = 1):
        self.p = p
        self.m = m
        self.q = p ** m
        self.modulus = modulus_for(p, m)
        q = self.q
        exp = np.zeros(2 * (q - 1) + 1, dtype=np.int64)
        log = np.full(q, -1, dtype=np.int64)
        if m == 1:
            g = (-self.modulus[0]) % p
            x = 1
            for k in range(q - 1):
                exp[k] = x
                log[x] = k
                x = x * g % p
        else:
            cur = [1] + [0] * (m - 1)
            xpoly = [0, 1] + [0] * (m - 2)
            for k in range(q - 1):
                code = sum(c * p ** i for i, c in enumerate(cur))
                exp[k] = code
                log[code] = k
                cur = _polymulmod(cur, xpoly, self.modulus, p)
        exp[q - 1:2 * (q - 1)] = exp[:q - 1]
        self.exp = exp
        self.log = log
        self.primitive = int(exp[1]) if q > 2 else 1
        self._add = None
        if m > 1 and p != 2 and q <= _ADD_TABLE_MAX:
            a = np.arange(q)
            self._add = self._digit_add(a[:, None], a[None, :])
        self.neg_table = self._digit_neg(np.arange(q))

    def __repr__(self):
        return f"GF({self.p}^{self.m})"

    def __eq__(self, other):
        return isinstance(other, GF) and (self.p, self.m) == (other.p, other.m)

    def __hash__(self):
        return hash((self.p, self.m))

    # -- scalar/array arithmetic ---------------------------------------------

    def _digit_add(self, a, b, sign: int = 1):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        w = 1
        for _ in range(self.m):
            out += ((a % self.p + sign * (b % self.p)) % self.p) * w
            a = a // self.p
            b = b // self.p
            w *= self.p
        return out

    def _digit_neg(self, a):
        return self._digit_add(np.zeros_like(a), a, sign=-1)

    def add(self, a, b):
        if self.m == 1:
            return (np.asarray(a) + np.asarray(b)) % self.p
        if self.p == 2:
            return np.bitwise_xor(a, b)
        if self._add is not None:
            return self._add[a, b]
        return self._digit_add(a, b)

    def neg(self, a):
        if self.m == 1:
            return (-np.asarray(a)) % self.p
        return self.neg_table[a]

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.m == 1:
            return (a * b) % self.p
        zero = (a == 0) | (b == 0)
        out = self.exp[(self.log[a] + self.log[b]) % (self.q - 1)]
        return np.where(zero, 0, out)

    def inv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        return self.exp[(-self.log[a]) % (self.q - 1)]

    def power(self, a: int, k: int) -> int:
        if a == 0:
            return 0 if k > 0 else 1
        return int(self.exp[(int(self.log[a]) * k) % (self.q - 1)])

    def from_int(self, n: int) -> int:
        """Image of the integer n under Z -> GF(p) -> GF(q)."""
        return n % self.p

    def root_of_unity(self, n: int) -> int:
        """The fixed primitive n-th root of unity: primitive element ^ ((q-1)/n)."""
        if (self.q - 1) % n:
            raise ValueError(f"{n} does not divide {self.q - 1}")
        return int(self.exp[(self.q - 1) // n])

    def dlog(self, a: int) -> int:
        return int(self.log[a])

    # -- matrices -----------------------------------------------------------------

    def array(self, data) -> np.ndarray:
        return np.asarray(data, dtype=np.int64)

    def identity(self, n: int) -> np.ndarray:
        return np.eye(n, dtype=np.int64)

    def zeros(self, shape) -> np.ndarray:
        return np.zeros(shape, dtype=np.int64)

    def scale(self, c: int, A: np.ndarray) -> np.ndarray:
        return self.mul(np.full(A.shape, c, dtype=np.int64), A)

    def matmul(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        A = np.asarray(A, dtype=np.int64)
        B = np.asarray(B, dtype=np.int64)
        if self.m == 1:
            return (A @ B) % self.p
        out = np.zeros((A.shape[0],) + B.shape[1:], dtype=np.int64)
        for k in range(A.shape[1]):
            out = self.add(out, self.mul(A[:, k:k + 1] if B.ndim == 2 else A[:, k], B[k]))
        return out

    def matadd(self, A, B):
        return self.add(np.asarray(A, dtype=np.int64), np.asarray(B, dtype=np.int64))

    def kron(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        a, b = A.shape
        c, d = B.shape
        out = self.mul(A[:, None, :, None], B[None, :, None, :])
        return out.reshape(a * c, b * d)

    def rref(self, A: np.ndarray) -> tuple[np.ndarray, list[int]]:
        A = np.array(A, dtype=np.int64, copy=True)
        if A.ndim != 2 or A.size == 0:
            return A.reshape(0, A.shape[1] if A.ndim == 2 else 0), []
        rows, cols = A.shape
        r = 0
        pivots = []
        for c in range(cols):
            if r == rows:
                break
            nz = np.nonzero(A[r:, c])[0]
            if nz.size == 0:
                continue
            piv = r + int(nz[0])
            if piv != r:
                A[[r, piv]] = A[[piv, r]]
            A[r] = self.mul(A[r], self.inv(A[r, c]))
            others = np.nonzero(A[:, c])[0]
            others = others[others != r]
            if others.size:
                A[others] = self.sub(A[others], self.mul(A[others, c][:, None], A[r][None, :]))
            pivots.append(c)
            r += 1
        return A[:r], pivots

    def rank(self, A: np.ndarray) -> int:
        A = np.asarray(A)
        if A.size == 0:
            return 0
        return len(self.rref(A)[1])

    def nullspace(self, A: np.ndarray) -> np.ndarray:
        """Basis (as rows) of {v : A v = 0}."""
        A = np.asarray(A, dtype=np.int64)
        cols = A.shape[1]
        R, piv = self.rref(A)
        free = [c for c in range(cols) if c not in piv]
        out = np.zeros((len(free), cols), dtype=np.int64)
        for k, f in enumerate(free):
            out[k, f] = 1
            for i, pc in enumerate(piv):
                out[k, pc] = self.neg(R[i, f])
        return out

    def left_nullspace(self, A: np.ndarray) -> np.ndarray:
        return self.nullspace(np.asarray(A).T)

    def inverse(self, A: np.ndarray) -> np.ndarray:
        n = A.shape[0]
        R, piv = self.rref(np.hstack([A, self.identity(n)]))
        if piv[:n] != list(range(n)):
            raise ZeroDivisionError("singular matrix")
        return R[:, n:]

    def solve_rows(self, basis: np.ndarray, vectors: np.ndarray) -> np.ndarray | None:
        """Coefficients c with c @ basis = vectors (row convention), or None if some vector is outside the span."""
        basis = np.asarray(basis, dtype=np.int64)
        vectors = np.atleast_2d(np.asarray(vectors, dtype=np.int64))
        k = basis.shape[0]
        aug = np.hstack([basis.T, vectors.T])
        R, piv = self.rref(aug)
        if any(c >= k for c in piv):
            return None
        sol = np.zeros((k, vectors.shape[0]), dtype=np.int64)
        for i, c in enumerate(piv):
            sol[c] = R[i, k:]
        return sol.T

    def format_matrix(self, A: np.ndarray) -> list[list[int]]:
        return [[int(x) for x in row] for row in np.asarray(A)]


class Span:
    """An incrementally built subspace kept in reduced echelon form."""

    def __init__(self, F: GF, dim: int):
        self.F = F
        self.dim = dim
        self.rows: list[np.ndarray] = []
        self.pivots: list[int] = []

    def reduce(self, v: np.ndarray) -> np.ndarray:
        F = self.F
        v = np.array(v, dtype=np.int64, copy=True)
        for row, c in zip(self.rows, self.pivots):
            if v[c]:
                v = F.sub(v, F.mul(v[c], row))
        return v

    def add(self, v: np.ndarray) -> bool:
        F = self.F
        w = self.reduce(v)
        nz = np.nonzero(w)[0]
        if nz.size == 0:
            return False
        c = int(nz[0])
        w = F.mul(w, F.inv(w[c]))
        for i, row in enumerate(self.rows):
            if row[c]:
                self.rows[i] = F.sub(row, F.mul(row[c], w))
        self.rows.append(w)
        self.pivots.append(c)
        return True

    def __len__(self):
        return len(self.rows)

    def contains(self, v: np.ndarray) -> bool:
        return not np.any(self.reduce(v))

    def basis(self) -> np.ndarray:
        if not self.rows:
            return np.zeros((0, self.dim), dtype=np.int64)
        order = np.argsort(self.pivots)
        return np.array([self.rows[i] for i in order], dtype=np.int64)


def spin(F: GF, seeds: Sequence[np.ndarray], mats: Sequence[np.ndarray], dim: int) -> Span:
    """Smallest subspace containing ``seeds`` and stable under every matrix in ``mats`` (acting on columns)."""
    S = Span(F, dim)
    queue = []
    for v in seeds:
        if S.add(v):
            queue.append(np.asarray(v, dtype=np.int64))
    while queue and len(S) < dim:
        v = queue.pop()
        for M in mats:
            w = F.matmul(M, v)
            if S.add(w):
                queue.append(w)
                if len(S) == dim:
                    break
    return S


def minimal_splitting_degree(p: int, n: int) -> int:
    """Least m with n | p^m - 1 (n coprime to p)."""
    if n == 1:
        return 1
    m, x = 1, p % n
    while x != 1:
        x = x * p % n
        m += 1
    return m

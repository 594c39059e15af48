"""Matrix representations over GF(q) and MeatAxe-style chopping into composition factors.

Matrices act on column vectors, so ``rho(g h) = rho(g) rho(h)``.
Every irreducible factor returned by :func:`chop` carries a Norton
certificate: an algebra element ``A - lambda I`` with one-dimensional
kernel, a kernel vector whose spin is the whole module, and a kernel
vector of the transpose whose spin under the transposed generators is the
whole dual.  Randomness comes only from the generator passed in.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import CertificateFailure
from .gf import GF, Span, spin
from .groups import PermGroup

MAX_ATTEMPTS = 64


@dataclass(eq=False)
class ModuleRep:
    F: GF
    G: PermGroup
    gens: list[np.ndarray]  # one matrix per generator of G, in G.generators order
    d: int = -1             # needed only when G has no generators

    def __post_init__(self):
        if self.gens:
            self.d = self.gens[0].shape[0]
        elif self.d < 0:
            raise ValueError("dimension required for a group without generators")

    @property
    def dim(self) -> int:
        return self.d

    @cached_property
    def element_matrices(self) -> list[np.ndarray]:
        """The matrix of every element of G, built along the spanning tree of G.words."""
        G, F = self.G, self.F
        d = self.dim
        mats: list[np.ndarray | None] = [None] * G.order
        mats[0] = F.identity(d)
        for x in G.bfs_order[1:]:
            pos, pred = G.words[x]
            mats[x] = F.matmul(self.gens[pos], mats[pred])
        return mats  # type: ignore[return-value]

    def matrix(self, x: int) -> np.ndarray:
        return self.element_matrices[x]

    def is_representation(self) -> bool:
        F, G = self.F, self.G
        mats = self.element_matrices
        for pos, g in enumerate(G.gen_idx):
            for y in range(G.order):
                if not np.array_equal(F.matmul(self.gens[pos], mats[y]), mats[G.mul[g][y]]):
                    return False
        return True

    def dual(self) -> "ModuleRep":
        return ModuleRep(self.F, self.G, [np.ascontiguousarray(M.T) for M in self.gens], self.d)


def trivial_module(F: GF, G: PermGroup) -> ModuleRep:
    return ModuleRep(F, G, [F.identity(1) for _ in G.gen_idx], 1)


def regular_module(F: GF, G: PermGroup) -> ModuleRep:
    n = G.order
    gens = []
    for g in G.gen_idx:
        M = np.zeros((n, n), dtype=np.int64)
        for h in range(n):
            M[G.mul[g][h], h] = 1
        gens.append(M)
    return ModuleRep(F, G, gens, n)


@dataclass
class Certificate:
    coeffs: dict[int, int]   # group element index -> field coefficient
    lam: int
    kernel: np.ndarray
    dual_kernel: np.ndarray

    def algebra_element(self, M: ModuleRep) -> np.ndarray:
        F = M.F
        A = F.zeros((M.dim, M.dim))
        for x, c in sorted(self.coeffs.items()):
            A = F.add(A, F.mul(c, M.matrix(x)))
        return F.sub(A, F.mul(self.lam, F.identity(M.dim)))


@dataclass(eq=False)
class Factor:
    module: ModuleRep
    certificate: Certificate
    multiplicity: int = 1


def _random_element(M: ModuleRep, rng: np.random.Generator) -> dict[int, int]:
    G, F = M.G, M.F
    k = int(rng.integers(2, 6))
    xs = rng.choice(G.order, size=min(k, G.order), replace=False)
    return {int(x): int(rng.integers(1, F.q)) for x in xs}


def _combine(M: ModuleRep, coeffs: dict[int, int]) -> np.ndarray:
    F = M.F
    A = F.zeros((M.dim, M.dim))
    for x, c in sorted(coeffs.items()):
        A = F.add(A, F.mul(c, M.matrix(x)))
    return A


def _eigenvalue_candidates(F: GF, A: np.ndarray, rng: np.random.Generator) -> list[int]:
    """Roots in GF(q) of the minimal polynomial of A on a random Krylov vector."""
    d = A.shape[0]
    v = rng.integers(0, F.q, size=d).astype(np.int64)
    if not v.any():
        v[0] = 1
    krylov = [v]
    while True:
        w = F.matmul(A, krylov[-1])
        coeffs = F.solve_rows(np.array(krylov), w)
        if coeffs is not None:
            break
        krylov.append(w)
    # t^k - sum c_i t^i
    c = coeffs[0]
    poly = [F.neg(int(ci)) for ci in c] + [1]
    xs = np.arange(F.q, dtype=np.int64)
    val = np.zeros(F.q, dtype=np.int64)
    for coef in reversed(poly):
        val = F.add(F.mul(val, xs), np.full(F.q, int(coef), dtype=np.int64))
    return [int(x) for x in np.nonzero(val == 0)[0]]


def _split_from_dual(F: GF, dual_span: Span, d: int) -> np.ndarray:
    """Annihilator of an invariant subspace of the dual, as row vectors."""
    return F.nullspace(dual_span.basis())


def find_submodule_or_certify(M: ModuleRep, rng: np.random.Generator):
    """Return ("split", basis rows of a proper submodule) or ("irreducible", Certificate)."""
    F = M.F
    d = M.dim
    if d == 1:
        one = np.ones(1, dtype=np.int64)
        return "irreducible", Certificate({0: 1}, 1, one, one)
    gensT = [np.ascontiguousarray(X.T) for X in M.gens]
    for _ in range(MAX_ATTEMPTS):
        coeffs = _random_element(M, rng)
        A = _combine(M, coeffs)
        roots = _eigenvalue_candidates(F, A, rng)
        if not roots:
            continue
        best = None
        for lam in roots:
            B = F.sub(A, F.mul(lam, F.identity(d)))
            N = F.nullspace(B)
            if N.shape[0] and (best is None or N.shape[0] < best[2].shape[0]):
                best = (lam, B, N)
        if best is None:
            continue
        lam, B, N = best
        for v in N:
            S = spin(F, [v], M.gens, d)
            if len(S) < d:
                return "split", S.basis()
        NT = F.nullspace(B.T)
        for w in NT:
            S = spin(F, [w], gensT, d)
            if len(S) < d:
                return "split", _split_from_dual(F, S, d)
        if N.shape[0] == 1:
            return "irreducible", Certificate(coeffs, lam, N[0], NT[0])
    raise CertificateFailure(f"no certificate after {MAX_ATTEMPTS} attempts (dimension {d})")


def split_module(M: ModuleRep, U: np.ndarray) -> tuple[ModuleRep, ModuleRep]:
    """Submodule and quotient for the invariant subspace spanned by the rows of U."""
    F = M.F
    d = M.dim
    R, piv = F.rref(U)
    k = R.shape[0]
    comp = [j for j in range(d) if j not in piv]
    T = np.zeros((d, d), dtype=np.int64)
    T[:, :k] = R.T
    for i, j in enumerate(comp):
        T[j, k + i] = 1
    Ti = F.inverse(T)
    sub, quo = [], []
    for X in M.gens:
        Y = F.matmul(Ti, F.matmul(X, T))
        if np.any(Y[k:, :k]):
            raise CertificateFailure("subspace is not invariant")
        sub.append(np.ascontiguousarray(Y[:k, :k]))
        quo.append(np.ascontiguousarray(Y[k:, k:]))
    return ModuleRep(F, M.G, sub, k), ModuleRep(F, M.G, quo, d - k)


def composition_factors(M: ModuleRep, rng: np.random.Generator) -> list[Factor]:
    """Irreducible composition factors with multiplicity, in discovery order (not yet merged)."""
    out = []
    stack = [M]
    while stack:
        X = stack.pop()
        kind, data = find_submodule_or_certify(X, rng)
        if kind == "irreducible":
            out.append(Factor(X, data))
        else:
            S, Q = split_module(X, data)
            stack.append(Q)
            stack.append(S)
    return out


def _standard_basis(M: ModuleRep, v: np.ndarray, recipe=None):
    """Spin v deterministically; returns (basis columns, recipe) or None if a replayed recipe degenerates."""
    F, d = M.F, M.dim
    S = Span(F, d)
    basis = [np.asarray(v, dtype=np.int64)]
    S.add(basis[0])
    if recipe is not None:
        for i, j in recipe:
            w = F.matmul(M.gens[j], basis[i])
            if not S.add(w):
                return None
            basis.append(w)
        return np.array(basis).T, recipe
    recipe = []
    i = 0
    while i < len(basis) and len(basis) < d:
        for j, X in enumerate(M.gens):
            w = F.matmul(X, basis[i])
            if S.add(w):
                basis.append(w)
                recipe.append((i, j))
                if len(basis) == d:
                    break
        i += 1
    return np.array(basis).T, recipe


def isomorphic(f: Factor, M: ModuleRep) -> bool:
    """Standard-basis isomorphism test of an irreducible (with certificate) against M."""
    S = f.module
    if S.dim != M.dim:
        return False
    F = S.F
    if S.dim == 1:
        return all(np.array_equal(a, b) for a, b in zip(S.gens, M.gens))
    B2 = f.certificate.algebra_element(M)
    N = F.nullspace(B2)
    if N.shape[0] != 1:
        return False
    T1, recipe = _standard_basis(S, f.certificate.kernel)
    rep = _standard_basis(M, N[0], recipe)
    if rep is None or T1.shape[1] != S.dim:
        return False
    T2 = rep[0]
    T1i = F.inverse(T1)
    T2i = F.inverse(T2)
    return all(np.array_equal(F.matmul(T1i, F.matmul(X, T1)), F.matmul(T2i, F.matmul(Y, T2)))
               for X, Y in zip(S.gens, M.gens))


def chop(M: ModuleRep, rng: np.random.Generator) -> list[Factor]:
    """Composition factors of M up to isomorphism, with multiplicities."""
    merged: list[Factor] = []
    for f in composition_factors(M, rng):
        for g in merged:
            if isomorphic(g, f.module):
                g.multiplicity += 1
                break
        else:
            merged.append(f)
    return merged

"""Permutations on {1..n}, stored 0-based as tuples.

Composition is functional: ``(p * q)(i) == p(q(i))``, so ``p * q`` applies
``q`` first.  With this convention conjugation ``g * x * ~g`` is a left action
and ``x -> g x g^-1`` is an automorphism.
"""

from __future__ import annotations

import re
from typing import Iterable, Sequence

from .errors import InvalidPermutation

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


class Perm(tuple):
    """An immutable permutation.  Tuple order is the lexicographic order on images."""

    __slots__ = ()

    def __new__(cls, images: Iterable[int], check: bool = True):
        self = super().__new__(cls, images)
        if check and sorted(self) != list(range(len(self))):
            raise InvalidPermutation(f"not a bijection on 0..{len(self) - 1}: {tuple(self)}")
        return self

    @classmethod
    def identity(cls, degree: int) -> "Perm":
        return cls(range(degree), check=False)

    @classmethod
    def from_images(cls, images: Sequence[int]) -> "Perm":
        """Build from 1-based images, the external convention."""
        return cls((i - 1 for i in images))

    @classmethod
    def from_cycles(cls, text: str, degree: int) -> "Perm":
        """Parse cycle notation such as ``(1 2)(3 4 5)``; ``()`` is the identity."""
        text = text.strip()
        if _CYCLE_RE.sub("", text).strip():
            raise InvalidPermutation(f"malformed cycle notation: {text!r}")
        img = list(range(degree))
        seen: set[int] = set()
        for body in _CYCLE_RE.findall(text):
            pts = [int(t) for t in re.split(r"[\s,]+", body.strip()) if t]
            for a in pts:
                if not 1 <= a <= degree:
                    raise InvalidPermutation(f"point {a} outside 1..{degree}")
                if a in seen:
                    raise InvalidPermutation(f"point {a} repeated in {text!r}")
                seen.add(a)
            for a, b in zip(pts, pts[1:] + pts[:1]):
                img[a - 1] = b - 1
        return cls(img, check=False)

    @property
    def degree(self) -> int:
        return len(self)

    def __mul__(self, other: "Perm") -> "Perm":
        return Perm((self[i] for i in other), check=False)

    def __invert__(self) -> "Perm":
        inv = [0] * len(self)
        for i, j in enumerate(self):
            inv[j] = i
        return Perm(inv, check=False)

    def __pow__(self, k: int) -> "Perm":
        base = self if k >= 0 else ~self
        k = abs(k)
        out = Perm.identity(len(self))
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self))

    def one_based(self) -> tuple[int, ...]:
        return tuple(i + 1 for i in self)

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, 1-based, each starting at its least point."""
        seen = [False] * len(self)
        out = []
        for start in range(len(self)):
            if seen[start]:
                continue
            cyc = []
            i = start
            while not seen[i]:
                seen[i] = True
                cyc.append(i + 1)
                i = self[i]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def __str__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)

    def __repr__(self) -> str:
        return f"Perm({self})"

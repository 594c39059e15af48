"""Readers for group definition files, automorphism specs and W files."""

from __future__ import annotations

import os
import re

import numpy as np

from .catalogue import named_group
from .ddelta import DDeltaPair, identity_aut, pair_aut
from .errors import ParseError, UnknownName
from .gf import GF
from .groups import PermGroup, group_from_generators, is_prime
from .homs import AutMap
from .perm import Perm


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def parse_group_text(text: str, base_dir: str = ".") -> PermGroup:
    degree = None
    gens: list[Perm] = []
    for lineno, line in _lines(text):
        word, _, rest = line.partition(" ")
        rest = rest.strip()
        if word == "degree":
            try:
                degree = int(rest)
            except ValueError:
                raise ParseError(f"line {lineno}: bad degree {rest!r}") from None
        elif word == "gen":
            if degree is None:
                raise ParseError(f"line {lineno}: 'gen' before 'degree'")
            gens.append(Perm.from_cycles(rest, degree))
        elif word == "name":
            return named_group(rest)
        elif word == "semidirect":
            return _parse_semidirect(rest, base_dir, lineno)
        else:
            raise ParseError(f"line {lineno}: unknown directive {word!r}")
    if degree is None:
        raise ParseError("missing 'degree' line")
    return group_from_generators(degree, gens)


def _parse_semidirect(rest: str, base_dir: str, lineno: int) -> PermGroup:
    from .catalogue import semidirect

    fields = dict(re.findall(r"(\w+)\s*=\s*(\S+)", rest))
    if "base" not in fields or "auto" not in fields:
        raise ParseError(f"line {lineno}: semidirect needs base= and auto=")
    base = load_group(fields["base"], base_dir)
    u = parse_automorphism(fields["auto"], base)
    return semidirect(base, u).group


def load_group(src: str, base_dir: str = ".") -> PermGroup:
    """A builtin name, or a path to a group definition file."""
    path = src if os.path.isabs(src) else os.path.join(base_dir, src)
    if os.path.isfile(path):
        with open(path) as fh:
            return parse_group_text(fh.read(), os.path.dirname(path) or ".")
    try:
        return named_group(src)
    except UnknownName:
        raise UnknownName(f"{src!r} is neither a builtin group nor a readable file") from None


def parse_automorphism(spec: str, L: PermGroup) -> AutMap:
    """``identity`` or comma-separated 0-based element-index images of every element of L."""
    spec = spec.strip()
    if spec == "identity":
        return identity_aut(L)
    try:
        images = tuple(int(t) for t in spec.split(","))
    except ValueError:
        raise ParseError(f"automorphism spec {spec!r} is not a comma-separated index list") from None
    if len(images) != L.order or sorted(images) != list(range(L.order)):
        raise ParseError(f"automorphism spec must permute 0..{L.order - 1}")
    a = AutMap(L, images)
    if not a.is_homomorphism():
        raise ParseError("automorphism spec is not a homomorphism")
    return a


def parse_W_text(text: str, pair: DDeltaPair):
    from .functors import OutRepW

    lines = list(_lines(text))
    if len(lines) < 2:
        raise ParseError("W file needs 'field p m' and 'dim d' lines")
    head = lines[0][1].split()
    if len(head) != 3 or head[0] != "field":
        raise ParseError("first line must be 'field p m'")
    p, m = int(head[1]), int(head[2])
    if not is_prime(p) or m < 1:
        raise ParseError(f"bad field {p}^{m}")
    if p != pair.p:
        raise ParseError(f"W is over characteristic {p} but the pair has p = {pair.p}")
    dline = lines[1][1].split()
    if len(dline) != 2 or dline[0] != "dim":
        raise ParseError("second line must be 'dim d'")
    d = int(dline[1])
    F = GF(p, m)
    mats = {}
    for lineno, line in lines[2:]:
        parts = line.split()
        if parts[0] != "mat" or len(parts) != 2 + d * d:
            raise ParseError(f"line {lineno}: expected 'mat <label>' and {d * d} entries")
        vals = [int(t) for t in parts[2:]]
        if any(not 0 <= v < F.q for v in vals):
            raise ParseError(f"line {lineno}: entries must lie in 0..{F.q - 1}")
        mats[parts[1]] = np.array(vals, dtype=np.int64).reshape(d, d)
    labels = pair_aut(pair).out_pair_group.labels
    if sorted(mats) != sorted(labels):
        raise ParseError(f"W must give matrices for exactly the labels {labels}")
    W = OutRepW(pair, F, d, mats)
    if not W.check_relations():
        raise ParseError("W matrices do not respect the multiplication table of Out(L,u)")
    return W


def load_W(path: str, pair: DDeltaPair):
    with open(path) as fh:
        return parse_W_text(fh.read(), pair)


def format_W(W) -> str:
    lines = [f"field {W.F.p} {W.F.m}", f"dim {W.dim}"]
    for lab in W.out_group.labels:
        lines.append(f"mat {lab} " + " ".join(str(int(x)) for x in W.matrices[lab].flatten()))
    return "\n".join(lines) + "\n"

"""Dessins as permutation pairs on darts (edges).

Internally darts are 0..n-1; the JSON file format is 1-indexed.  Black
vertices are the cycles of ``sigma0`` (the 0-fiber), white vertices the
cycles of ``sigma1`` (the 1-fiber), faces the cycles of
``sigmaInf = (sigma0 o sigma1)^-1``.
"""

from __future__ import annotations

import json
from typing import Sequence

import numpy as np

from ..passport import Partition, Passport
from . import perm as P
from .kernels import canonical_codes

__all__ = [
    "Dessin",
    "DessinError",
    "passport_of",
    "genus_of",
    "canonical_form",
    "is_isomorphic",
    "find_isomorphism",
]


class DessinError(ValueError):
    """Malformed permutations or a disconnected map."""


class Dessin:
    __slots__ = ("sigma0", "sigma1", "label", "_inf")

    def __init__(self, sigma0: Sequence[int], sigma1: Sequence[int], label: str | None = None,
                 *, check: bool = True):
        self.sigma0 = tuple(int(i) for i in sigma0)
        self.sigma1 = tuple(int(i) for i in sigma1)
        self.label = label
        self._inf = None
        if check:
            n = len(self.sigma0)
            if n == 0 or len(self.sigma1) != n:
                raise DessinError("sigma0 and sigma1 must be non-empty and of equal length")
            if not (P.is_perm(self.sigma0) and P.is_perm(self.sigma1)):
                raise DessinError("sigma0 and sigma1 must be permutations of 0..n-1")
            if not P.is_transitive((self.sigma0, self.sigma1), n):
                raise DessinError("monodromy group is not transitive")

    @classmethod
    def from_one_based(cls, sigma0, sigma1, label=None) -> "Dessin":
        return cls([i - 1 for i in sigma0], [i - 1 for i in sigma1], label)

    @classmethod
    def from_cycles(cls, n: int, cycles0, cycles1, label=None) -> "Dessin":
        """Build from 1-indexed cycle lists, e.g. ``[(1, 2, 3)]``."""
        def image(cycs):
            img = list(range(n))
            for cyc in cycs:
                for a, b in zip(cyc, tuple(cyc[1:]) + (cyc[0],)):
                    img[a - 1] = b - 1
            return img
        return cls(image(cycles0), image(cycles1), label)

    @property
    def n(self) -> int:
        return len(self.sigma0)

    degree = n

    @property
    def sigmaInf(self) -> tuple[int, ...]:
        if self._inf is None:
            self._inf = P.inverse(P.compose(self.sigma0, self.sigma1))
        return self._inf

    def faces(self) -> list[tuple[int, ...]]:
        return P.cycles(self.sigmaInf)

    @property
    def passport(self) -> Passport:
        return passport_of(self)

    @property
    def genus(self) -> int:
        return genus_of(self)

    def relabel(self, r: Sequence[int]) -> "Dessin":
        """Image of the dessin under dart relabelling r (r s r^-1)."""
        return Dessin(P.conjugate(self.sigma0, r), P.conjugate(self.sigma1, r), self.label,
                      check=False)

    def swap_colors(self) -> "Dessin":
        return Dessin(self.sigma1, self.sigma0, self.label, check=False)

    def canonical(self) -> bytes:
        return canonical_form(self)

    def __eq__(self, other):
        if not isinstance(other, Dessin):
            return NotImplemented
        return self.sigma0 == other.sigma0 and self.sigma1 == other.sigma1

    def __hash__(self):
        return hash((self.sigma0, self.sigma1))

    def __repr__(self):
        lab = f", label={self.label!r}" if self.label else ""
        return f"Dessin(n={self.n}, passport={passport_of(self)}{lab})"

    # -- file format ----------------------------------------------------

    def to_dict(self) -> dict:
        out = {
            "degree": self.n,
            "sigma0": [i + 1 for i in self.sigma0],
            "sigma1": [i + 1 for i in self.sigma1],
        }
        if self.label is not None:
            out["label"] = self.label
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"), ensure_ascii=False)

    @classmethod
    def from_dict(cls, obj: dict) -> "Dessin":
        try:
            n = int(obj["degree"])
            s0, s1 = list(obj["sigma0"]), list(obj["sigma1"])
        except (KeyError, TypeError, ValueError) as exc:
            raise DessinError(f"bad dessin record: {exc}") from None
        if len(s0) != n or len(s1) != n:
            raise DessinError("permutation length does not match degree")
        return cls.from_one_based(s0, s1, obj.get("label"))

    @classmethod
    def from_json(cls, text: str) -> "Dessin":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DessinError(f"invalid JSON: {exc}") from None
        return cls.from_dict(obj)


def passport_of(d: Dessin) -> Passport:
    return Passport(
        Partition(P.cycle_type(d.sigma0)),
        Partition(P.cycle_type(d.sigma1)),
        Partition(P.cycle_type(d.sigmaInf)),
    )


def genus_of(d: Dessin) -> int:
    chi = len(P.cycles(d.sigma0)) + len(P.cycles(d.sigma1)) + len(P.cycles(d.sigmaInf)) - d.n
    assert chi % 2 == 0 and chi <= 2, chi
    return (2 - chi) // 2


def canonical_form(d: Dessin) -> bytes:
    """Byte string equal for two dessins iff they are isomorphic."""
    code = canonical_codes(np.array([d.sigma0]), np.array([d.sigma1]))[0]
    return _code_bytes(d.n, code)


def _code_bytes(n: int, code) -> bytes:
    return bytes([n]) + bytes(int(c) for c in code)


def is_isomorphic(d1: Dessin, d2: Dessin) -> bool:
    if d1.n != d2.n:
        return False
    return canonical_form(d1) == canonical_form(d2)


def find_isomorphism(d1: Dessin, d2: Dessin) -> tuple[int, ...] | None:
    """A relabelling r with r s r^-1 = s' for both generators, by dart matching."""
    n = d1.n
    if d2.n != n:
        return None
    for target in range(n):
        r = [-1] * n
        used = [False] * n
        r[0], used[target] = target, True
        stack = [0]
        ok = True
        while stack and ok:
            a = stack.pop()
            for s, t in ((d1.sigma0, d2.sigma0), (d1.sigma1, d2.sigma1)):
                x, y = s[a], t[r[a]]
                if r[x] < 0:
                    if used[y]:
                        ok = False
                        break
                    r[x], used[y] = y, True
                    stack.append(x)
                elif r[x] != y:
                    ok = False
                    break
        if ok:
            return tuple(r)
    return None

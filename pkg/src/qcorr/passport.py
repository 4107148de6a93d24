"""Partitions, branching passports and the correspondent-passport calculus.

A genus 1 passport of shape [A/A/B^2 C] is matched with genus 0 passports
[A / 2^l 1^k / 2B C] where C has 4-k parts; the double cover of the sphere
branches above the k simple white points and the C cells.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from typing import Iterable

__all__ = [
    "Partition",
    "Passport",
    "CorrespondenceDecomposition",
    "PassportError",
    "InconsistentDecomposition",
    "genus_of_passport",
    "correspondent_passports",
    "predict_genus1_passport",
    "DegenerateCorrespondence",
]


class PassportError(ValueError):
    """Impossible passport: unequal sums, non-integral or negative genus."""


class InconsistentDecomposition(ValueError):
    pass


class DegenerateCorrespondence(ValueError):
    """k = 0 with only even C parts: the correspondence stays genus 0."""


@dataclass(frozen=True, order=True)
class Partition:
    parts: tuple[int, ...]

    def __init__(self, parts: Iterable[int]):
        ps = tuple(sorted((int(p) for p in parts), reverse=True))
        if any(p <= 0 for p in ps):
            raise PassportError(f"partition parts must be positive: {ps}")
        object.__setattr__(self, "parts", ps)

    @property
    def sum(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def counts(self) -> Counter:
        return Counter(self.parts)

    @classmethod
    def parse(cls, text: str) -> "Partition":
        parts: list[int] = []
        for tok in text.split():
            m = re.fullmatch(r"(\d+)(?:\^(\d+))?", tok)
            if not m:
                raise PassportError(f"bad partition token {tok!r}")
            parts += [int(m.group(1))] * int(m.group(2) or 1)
        if not parts:
            raise PassportError("empty partition")
        return cls(parts)

    def __str__(self) -> str:
        out = []
        for value, count in sorted(Counter(self.parts).items(), reverse=True):
            out.append(f"{value}^{count}" if count > 1 else str(value))
        return " ".join(out)

    def __repr__(self):
        return f"Partition({str(self)!r})"


@dataclass(frozen=True)
class Passport:
    """Branching data over 0, 1 and infinity."""

    over0: Partition
    over1: Partition
    overInf: Partition

    def __post_init__(self):
        sums = {self.over0.sum, self.over1.sum, self.overInf.sum}
        if len(sums) != 1:
            raise PassportError(f"partition sums differ: {sorted(sums)}")

    @property
    def degree(self) -> int:
        return self.over0.sum

    @property
    def fibers(self) -> tuple[Partition, Partition, Partition]:
        return (self.over0, self.over1, self.overInf)

    @classmethod
    def parse(cls, text: str) -> "Passport":
        body = text.strip()
        if not (body.startswith("[") and body.endswith("]")):
            raise PassportError(f"passport must be bracketed: {text!r}")
        pieces = body[1:-1].split("/")
        if len(pieces) != 3:
            raise PassportError(f"passport needs three fibers: {text!r}")
        return cls(*(Partition.parse(p) for p in pieces))

    @classmethod
    def of(cls, a: Iterable[int], b: Iterable[int], c: Iterable[int]) -> "Passport":
        return cls(Partition(a), Partition(b), Partition(c))

    def __str__(self) -> str:
        return f"[{self.over0} / {self.over1} / {self.overInf}]"

    def __repr__(self):
        return f"Passport({str(self)!r})"

    def swap01(self) -> "Passport":
        return Passport(self.over1, self.over0, self.overInf)


def genus_of_passport(p: Passport) -> int:
    n = p.degree
    chi = len(p.over0) + len(p.over1) + len(p.overInf) - n
    if chi % 2:
        raise PassportError(f"non-integral genus for {p}")
    g = (2 - chi) // 2
    if g < 0:
        raise PassportError(f"negative genus for {p}")
    return g


@dataclass(frozen=True)
class CorrespondenceDecomposition:
    A: Partition
    B: tuple[int, ...]
    C: tuple[int, ...]
    k: int
    ell: int
    degenerate: bool = field(default=False)

    @property
    def genus0_passport(self) -> Passport:
        return Passport(
            self.A,
            Partition([2] * self.ell + [1] * self.k),
            Partition([2 * b for b in self.B] + list(self.C)),
        )

    @property
    def genus1_passport(self) -> Passport:
        return Passport(self.A, self.A, Partition(list(self.B) * 2 + list(self.C)))


def _pair_off(parts: Counter) -> tuple[int, ...] | None:
    half = []
    for v, c in parts.items():
        if c % 2:
            return None
        half += [v] * (c // 2)
    return tuple(sorted(half, reverse=True))


def correspondent_passports(
    p1: Passport, include_degenerate: bool = False
) -> list[tuple[Passport, CorrespondenceDecomposition]]:
    """Genus 0 passports [A/2^l 1^k/2B C] matching a genus 1 passport [A/A/B^2 C].

    The strict reading requires every C part to be odd.  With
    ``include_degenerate`` the k = 0, all-even-C decompositions are added and
    flagged; they yield genus 0 correspondences.
    """
    try:
        g = genus_of_passport(p1)
    except PassportError:
        return []
    if g != 1 or p1.over0 != p1.over1:
        return []
    n = p1.degree
    A = p1.over0
    Z = p1.overInf.counts()
    seen = set()
    out = []
    for k in range(0, 5):
        if k > n or (n - k) % 2:
            continue
        ell = (n - k) // 2
        csize = 4 - k
        values = sorted(Z)
        for C in combinations_with_replacement(values, csize):
            cc = Counter(C)
            if any(cc[v] > Z[v] for v in cc):
                continue
            B = _pair_off(Z - cc)
            if B is None:
                continue
            odd = all(c % 2 for c in C)
            degenerate = k == 0 and all(c % 2 == 0 for c in C)
            if not odd and not (include_degenerate and degenerate):
                continue
            d = CorrespondenceDecomposition(
                A, B, tuple(sorted(C, reverse=True)), k, ell, degenerate and not odd
            )
            p0 = d.genus0_passport
            if p0 in seen:
                continue
            assert genus_of_passport(p0) == 0, p0
            seen.add(p0)
            out.append((p0, d))
    out.sort(key=lambda pd: (pd[1].degenerate, -pd[1].k, str(pd[0])))
    return out


def predict_genus1_passport(p0: Passport, d: CorrespondenceDecomposition) -> Passport:
    if p0 != d.genus0_passport:
        raise InconsistentDecomposition(f"{p0} does not match decomposition {d}")
    if d.degenerate:
        raise DegenerateCorrespondence(
            f"{p0}: k=0 with even C, correspondence is minimally genus 0"
        )
    return d.genus1_passport


def decomposition_for(p0: Passport, C: Iterable[int], k: int | None = None) -> CorrespondenceDecomposition:
    """Read a decomposition off a genus 0 passport given the branched cells C."""
    white = p0.over1.counts()
    if set(white) - {1, 2}:
        raise InconsistentDecomposition(f"white fiber of {p0} is not 2^l 1^k")
    kk = white[1] if k is None else k
    if kk != white[1]:
        raise InconsistentDecomposition("k disagrees with the white fiber")
    C = tuple(sorted(C, reverse=True))
    rest = p0.overInf.counts() - Counter(C)
    if sum((Counter(C) - p0.overInf.counts()).values()):
        raise InconsistentDecomposition(f"C={C} not contained in {p0.overInf}")
    if any(v % 2 for v in rest.elements()):
        raise InconsistentDecomposition("unbranched cells must have even valency")
    B = tuple(sorted((v // 2 for v in rest.elements()), reverse=True))
    degenerate = kk == 0 and all(c % 2 == 0 for c in C)
    return CorrespondenceDecomposition(
        p0.over0, B, C, kk, white[2], degenerate and not all(c % 2 for c in C)
    )

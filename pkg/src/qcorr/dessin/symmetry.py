"""Involutive symmetries of a dessin: colour-swapping and colour-preserving."""

from __future__ import annotations

from dataclasses import dataclass, field

from . import perm as P
from .core import Dessin

__all__ = [
    "SymmetryReport",
    "classify_symmetries",
    "color_swap_involutions",
    "color_preserving_involutions",
    "antisymmetry_fixed_count",
    "central_fixed_count",
]


def _propagate(d: Dessin, start: int, pairs) -> tuple[int, ...] | None:
    """Extend 0 -> start to a bijection r with r(s x) = t(r x) for (s, t) in pairs."""
    n = d.n
    r = [-1] * n
    used = [False] * n
    r[0], used[start] = start, True
    stack = [0]
    while stack:
        a = stack.pop()
        for s, t in pairs:
            x, y = s[a], t[r[a]]
            if r[x] < 0:
                if used[y]:
                    return None
                r[x], used[y] = y, True
                stack.append(x)
            elif r[x] != y:
                return None
    return tuple(r)


def _is_involution(r) -> bool:
    return all(r[r[i]] == i for i in range(len(r)))


def color_swap_involutions(d: Dessin) -> list[tuple[int, ...]]:
    """All pi with pi s0 pi^-1 = s1, pi s1 pi^-1 = s0 and pi^2 = id."""
    pairs = ((d.sigma0, d.sigma1), (d.sigma1, d.sigma0))
    out = []
    for j in range(d.n):
        r = _propagate(d, j, pairs)
        if r is not None and _is_involution(r):
            out.append(r)
    return out


def color_preserving_involutions(d: Dessin) -> list[tuple[int, ...]]:
    """All non-identity rho commuting with s0 and s1 with rho^2 = id."""
    pairs = ((d.sigma0, d.sigma0), (d.sigma1, d.sigma1))
    out = []
    for j in range(1, d.n):
        r = _propagate(d, j, pairs)
        if r is not None and _is_involution(r):
            out.append(r)
    return out


def _invariant_cycles(cycs, r) -> int:
    return sum(1 for c in cycs if r[c[0]] in set(c))


def antisymmetry_fixed_count(d: Dessin, pi) -> int:
    """Fixed edges plus faces mapped to themselves by a colour swap.

    A colour swap carries the face through dart x to the face through
    s0(pi(x)); that composite permutes the face cycles.
    """
    fixed_edges = sum(1 for i in range(d.n) if pi[i] == i)
    h = P.compose(d.sigma0, pi)
    return fixed_edges + _invariant_cycles(d.faces(), h)


def central_fixed_count(d: Dessin, rho) -> int:
    """Black vertices, white vertices and faces mapped to themselves."""
    return sum(
        _invariant_cycles(P.cycles(s), rho) for s in (d.sigma0, d.sigma1, d.sigmaInf)
    )


@dataclass
class SymmetryReport:
    color_swap_involutions: list = field(default_factory=list)
    color_preserving_involutions: list = field(default_factory=list)
    fixed_structure_counts: dict = field(default_factory=dict)
    central_fixed_counts: dict = field(default_factory=dict)
    classification: str = "neither"

    @property
    def central_antisymmetries(self) -> list:
        return [pi for pi in self.color_swap_involutions if self.fixed_structure_counts[pi] == 4]

    @property
    def central_symmetries(self) -> list:
        return [r for r in self.color_preserving_involutions if self.central_fixed_counts[r] == 4]


def classify_symmetries(d: Dessin) -> SymmetryReport:
    swaps = color_swap_involutions(d)
    keeps = color_preserving_involutions(d)
    rep = SymmetryReport(
        swaps,
        keeps,
        {pi: antisymmetry_fixed_count(d, pi) for pi in swaps},
        {r: central_fixed_count(d, r) for r in keeps},
    )
    anti = bool(rep.central_antisymmetries)
    cent = bool(rep.central_symmetries)
    rep.classification = (
        "both" if anti and cent else
        "anti-symmetric" if anti else
        "centrally-symmetric" if cent else
        "neither"
    )
    return rep

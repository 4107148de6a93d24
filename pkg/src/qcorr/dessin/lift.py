"""Genus 1 double covers of genus 0 dessins with white fiber 2^l 1^k, and back.

The cover branches over a set of white vertices and faces.  Sheet changes
are recorded by a 0/1 label eps(e) on every dart, applied when crossing the
white vertex of that dart; the labels are found by solving a linear system
over GF(2).  Upstairs every white vertex has valency two, so it is erased
and its two darts fused into one edge; the remaining vertices are then
recoloured so that the two sheets swap colours.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from ..passport import decomposition_for, predict_genus1_passport
from . import perm as P
from .core import Dessin, genus_of, passport_of
from .symmetry import antisymmetry_fixed_count

__all__ = [
    "LiftResult",
    "lift_double_cover",
    "quotient_by_antisymmetry",
    "solve_gf2",
    "BranchCountError",
    "ParityObstruction",
    "SingularSystem",
    "InvalidSymmetry",
    "LiftError",
]


class LiftError(ValueError):
    pass


class BranchCountError(LiftError):
    """The forced branch set does not have four points."""


class ParityObstruction(LiftError):
    """The contracted upstairs graph is not bipartite."""


class SingularSystem(LiftError):
    """The sheet-label system has no solution."""


class InvalidSymmetry(ValueError):
    pass


@dataclass
class LiftResult:
    upstairs: Dessin
    deck_involution: tuple[int, ...]
    branch_edges: list[int]
    branch_faces: list[tuple[int, ...]]
    epsilon: tuple[int, ...] = field(repr=False, default=())
    # upstairs edge -> (downstairs dart, sheet) of its black half
    edge_origin: tuple[tuple[int, int], ...] = field(repr=False, default=())

    @property
    def k(self) -> int:
        return len(self.branch_edges)

    @property
    def fixed_structure_count(self) -> int:
        return antisymmetry_fixed_count(self.upstairs, self.deck_involution)


def solve_gf2(rows: Sequence[int], rhs: Sequence[int], nvars: int):
    """Solve A x = b over GF(2); rows are bitmasks.  Returns (x, kernel basis)."""
    pivots: list[tuple[int, int, int]] = []  # (pivot bit, row, rhs)
    for row, b in zip(rows, rhs):
        for bit, prow, pb in pivots:
            if row >> bit & 1:
                row ^= prow
                b ^= pb
        if row == 0:
            if b:
                raise SingularSystem("inconsistent branching parities")
            continue
        bit = row.bit_length() - 1
        # keep the basis fully reduced
        pivots = [
            (pbit, prow ^ row, pb ^ b) if prow >> bit & 1 else (pbit, prow, pb)
            for pbit, prow, pb in pivots
        ]
        pivots.append((bit, row, b))
    x = 0
    pivot_bits = set()
    for bit, _row, b in pivots:
        pivot_bits.add(bit)
        if b:
            x |= 1 << bit
    kernel = []
    for free in range(nvars):
        if free in pivot_bits:
            continue
        v = 1 << free
        for bit, row, _b in pivots:
            if row >> free & 1:
                v |= 1 << bit
        kernel.append(v)
    return x, kernel


def _face_of_dart(d: Dessin, dart: int, faces) -> int:
    for i, f in enumerate(faces):
        if dart in f:
            return i
    raise ValueError(f"dart {dart} lies on no face")


def lift_double_cover(
    d0: Dessin,
    mode: str = "strict",
    faces: Iterable[int] | None = None,
    *,
    twist: int = 0,
) -> LiftResult:
    """Lift ``d0`` to the genus 1 double cover branched at its 1-valent whites
    and a set of faces.

    ``mode="strict"`` branches at every odd face; ``mode="chosen"`` takes
    the faces through the given darts.  ``twist`` selects a different
    solution of the sheet-label system (bit i adds the i-th kernel vector).
    """
    n = d0.n
    if genus_of(d0) != 0:
        raise LiftError("only genus 0 dessins can be lifted")
    whites = P.cycles(d0.sigma1)
    if any(len(c) > 2 for c in whites):
        raise LiftError("white vertices must have valency 1 or 2")
    # faces as cycles of sigma0 o sigma1: one dart per white corner
    face_cycles = P.cycles(P.compose(d0.sigma0, d0.sigma1))
    branched_whites = [c for c in whites if len(c) == 1]
    if mode == "strict":
        if faces is not None:
            raise ValueError("strict mode chooses its own faces")
        bf = [i for i, f in enumerate(face_cycles) if len(f) % 2]
    elif mode == "chosen":
        if faces is None:
            raise ValueError("chosen mode needs face darts")
        bf = sorted({_face_of_dart(d0, x, face_cycles) for x in faces})
    else:
        raise ValueError(f"unknown mode {mode!r}")
    if len(branched_whites) + len(bf) != 4:
        raise BranchCountError(
            f"branch set has {len(branched_whites) + len(bf)} points, need 4"
        )

    rows, rhs = [], []
    for c in whites:
        rows.append(sum(1 << e for e in c))
        rhs.append(1 if len(c) == 1 else 0)
    bfs = set(bf)
    for i, f in enumerate(face_cycles):
        rows.append(sum(1 << e for e in f))
        rhs.append(1 if i in bfs else 0)
    x, kernel = solve_gf2(rows, rhs, n)
    for i, v in enumerate(kernel):
        if twist >> i & 1:
            x ^= v
    eps = tuple(x >> e & 1 for e in range(n))

    # upstairs darts: 2e + s
    N = 2 * n
    up0 = [0] * N
    up1 = [0] * N
    for e in range(n):
        for s in (0, 1):
            up0[2 * e + s] = 2 * d0.sigma0[e] + s
            up1[2 * e + s] = 2 * d0.sigma1[e] + (s ^ eps[e])
    if not P.is_transitive((up0, up1), N):
        raise LiftError("double cover is disconnected")
    ucycles = P.cycles(up1)
    assert all(len(c) == 2 for c in ucycles), "upstairs white vertices must be 2-valent"

    # contract each upstairs white vertex into an edge between black vertices
    vert = P.cycle_of(up0)
    nv = max(vert) + 1
    adj: list[list[int]] = [[] for _ in range(nv)]
    for a, b in ucycles:
        va, vb = vert[a], vert[b]
        if va == vb:
            raise ParityObstruction("contracted edge is a loop")
        adj[va].append(vb)
        adj[vb].append(va)
    color = [-1] * nv
    color[0] = 0
    stack = [0]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if color[w] < 0:
                color[w] = 1 - color[v]
                stack.append(w)
            elif color[w] == color[v]:
                raise ParityObstruction("contracted graph has an odd cycle")

    edge_of = [0] * N
    halves = []  # (black half, white half)
    for idx, (a, b) in enumerate(sorted(ucycles)):
        edge_of[a] = edge_of[b] = idx
        halves.append((a, b) if color[vert[a]] == 0 else (b, a))
    s0 = tuple(edge_of[up0[bh]] for bh, _ in halves)
    s1 = tuple(edge_of[up0[wh]] for _, wh in halves)
    upstairs = Dessin(s0, s1, label=d0.label)

    deck = tuple(edge_of[a ^ 1] for a, _ in halves)
    # the sheet swap must exchange colours
    assert all(color[vert[a]] != color[vert[a ^ 1]] for a in range(N)), \
        "deck involution preserves colours"

    res = LiftResult(
        upstairs,
        deck,
        [c[0] for c in branched_whites],
        [face_cycles[i] for i in bf],
        eps,
        tuple((a >> 1, a & 1) for a, _ in halves),
    )
    assert genus_of(upstairs) == 1, "lift is not a torus"
    assert res.fixed_structure_count == 4, res.fixed_structure_count
    if mode == "strict":
        dec = decomposition_for(passport_of(d0), [len(face_cycles[i]) for i in bf])
        assert predict_genus1_passport(passport_of(d0), dec) == passport_of(upstairs)
    return res


def quotient_by_antisymmetry(d1: Dessin, pi: Sequence[int]) -> Dessin:
    """Quotient of a torus dessin by a central anti-symmetry ``pi``.

    Each edge gets a white midpoint; pi identifies the two halves, so the
    quotient keeps the black rotation and uses pi as the white rotation.
    """
    pi = tuple(int(i) for i in pi)
    n = d1.n
    if len(pi) != n or not P.is_perm(pi):
        raise InvalidSymmetry("not a permutation of the edges")
    if any(pi[pi[i]] != i for i in range(n)):
        raise InvalidSymmetry("not an involution")
    if P.conjugate(d1.sigma0, pi) != d1.sigma1:
        raise InvalidSymmetry("does not exchange the black and white rotations")
    q = Dessin(d1.sigma0, pi, label=d1.label)
    if genus_of(q) != 0:
        raise InvalidSymmetry(
            f"quotient has genus {genus_of(q)}; fixed-structure count is "
            f"{antisymmetry_fixed_count(d1, pi)}, not 4"
        )
    return q

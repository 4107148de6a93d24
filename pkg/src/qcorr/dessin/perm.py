"""Permutation helpers on 0-indexed image tuples."""

from __future__ import annotations

from collections import Counter
from math import factorial
from typing import Iterator, Sequence

Perm = tuple[int, ...]


def identity(n: int) -> Perm:
    return tuple(range(n))


def compose(a: Sequence[int], b: Sequence[int]) -> Perm:
    """(a o b)(i) = a[b[i]]."""
    return tuple(a[i] for i in b)


def inverse(a: Sequence[int]) -> Perm:
    inv = [0] * len(a)
    for i, ai in enumerate(a):
        inv[ai] = i
    return tuple(inv)


def conjugate(p: Sequence[int], r: Sequence[int]) -> Perm:
    """r p r^-1."""
    out = [0] * len(p)
    for i, pi in enumerate(p):
        out[r[i]] = r[pi]
    return tuple(out)


def is_perm(a: Sequence[int]) -> bool:
    return sorted(a) == list(range(len(a)))


def cycles(a: Sequence[int]) -> list[tuple[int, ...]]:
    seen = [False] * len(a)
    out = []
    for i in range(len(a)):
        if seen[i]:
            continue
        cyc = []
        j = i
        while not seen[j]:
            seen[j] = True
            cyc.append(j)
            j = a[j]
        out.append(tuple(cyc))
    return out


def cycle_type(a: Sequence[int]) -> tuple[int, ...]:
    return tuple(sorted((len(c) for c in cycles(a)), reverse=True))


def cycle_of(a: Sequence[int]) -> list[int]:
    """Index of the cycle containing each element."""
    idx = [0] * len(a)
    for k, cyc in enumerate(cycles(a)):
        for i in cyc:
            idx[i] = k
    return idx


def orbits(gens: Sequence[Sequence[int]], n: int) -> list[list[int]]:
    seen = [False] * n
    out = []
    for s in range(n):
        if seen[s]:
            continue
        seen[s] = True
        stack, orb = [s], [s]
        while stack:
            i = stack.pop()
            for g in gens:
                j = g[i]
                if not seen[j]:
                    seen[j] = True
                    stack.append(j)
                    orb.append(j)
        out.append(orb)
    return out


def is_transitive(gens: Sequence[Sequence[int]], n: int) -> bool:
    return n == 0 or len(orbits(gens, n)) == 1


def representative(parts: Sequence[int]) -> Perm:
    """A permutation with the given cycle type, cycles on consecutive labels."""
    img = []
    start = 0
    for length in sorted(parts, reverse=True):
        img += [start + (i + 1) % length for i in range(length)]
        start += length
    return tuple(img)


def class_size(parts: Sequence[int]) -> int:
    n = sum(parts)
    denom = 1
    for length, count in Counter(parts).items():
        denom *= length**count * factorial(count)
    return factorial(n) // denom


def iter_class(parts: Sequence[int]) -> Iterator[Perm]:
    """Every permutation of the given cycle type, each exactly once."""
    n = sum(parts)
    img = [-1] * n
    remaining = Counter(parts)
    free = list(range(n))

    def place(free: list[int]):
        if not free:
            yield tuple(img)
            return
        first = free[0]
        rest = free[1:]
        for length in sorted(remaining):
            if remaining[length] == 0 or length - 1 > len(rest):
                continue
            remaining[length] -= 1
            yield from _orders(first, rest, length - 1, [first])
            remaining[length] += 1

    def _orders(first, pool, need, chain):
        if need == 0:
            for a, b in zip(chain, chain[1:] + [first]):
                img[a] = b
            yield from place(pool)
            return
        for idx, e in enumerate(pool):
            chain.append(e)
            yield from _orders(first, pool[:idx] + pool[idx + 1:], need - 1, chain)
            chain.pop()

    yield from place(free)

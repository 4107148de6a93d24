"""Exhaustive enumeration of dessins with a given passport, up to isomorphism."""

from __future__ import annotations

import logging
from itertools import islice

import numpy as np

from ..passport import Passport, genus_of_passport
from . import perm as P
from .core import Dessin, _code_bytes
from .kernels import canonical_codes, filter_candidates

__all__ = ["enumerate_dessins", "DegreeTooLarge", "MAX_DEGREE", "count_dessins"]

logger = logging.getLogger(__name__)

MAX_DEGREE = 14
BATCH = 1 << 15


class DegreeTooLarge(ValueError):
    pass


def _counts(parts, n: int) -> np.ndarray:
    out = np.zeros(n + 1, dtype=np.int64)
    for p in parts:
        out[p] += 1
    return out


def _choose_fibers(p: Passport) -> tuple[int, int]:
    sizes = sorted((P.class_size(fib.parts), i) for i, fib in enumerate(p.fibers))
    return sizes[0][1], sizes[1][1]


def enumerate_dessins(
    p: Passport,
    *,
    max_degree: int = MAX_DEGREE,
    fibers: tuple[int, int] | None = None,
    batch: int = BATCH,
) -> list[Dessin]:
    """One dessin per isomorphism class, ordered by canonical form.

    A representative of one fiber's conjugacy class is held fixed and a second
    fiber's class is swept; by default the two smallest classes are used, the
    larger of the two being swept.  ``fibers=(fixed, swept)`` overrides the
    choice, which never changes the result.
    """
    n = p.degree
    if n > max_degree:
        raise DegreeTooLarge(f"degree {n} exceeds the bound {max_degree}")
    genus_of_passport(p)  # rejects impossible passports
    if fibers is None:
        f, g = _choose_fibers(p)
    else:
        f, g = fibers
        if f == g or not {f, g} <= {0, 1, 2}:
            raise ValueError("fibers must be two distinct indices among 0, 1, 2")
    h = 3 - f - g
    fixed = np.array(P.representative(p.fibers[f].parts), dtype=np.int64)
    target = _counts(p.fibers[h].parts, n)

    found: dict[bytes, tuple] = {}
    stream = P.iter_class(p.fibers[g].parts)
    swept = 0
    while True:
        chunk = list(islice(stream, batch))
        if not chunk:
            break
        swept += len(chunk)
        s0, s1 = filter_candidates(fixed, np.array(chunk, dtype=np.int64), f, g, target)
        if len(s0) == 0:
            continue
        codes = canonical_codes(s0, s1)
        for row, code in enumerate(codes):
            key = _code_bytes(n, code)
            if key not in found:
                found[key] = (s0[row], s1[row])
    logger.debug("passport %s: swept %d candidates, %d classes", p, swept, len(found))
    out = []
    for key in sorted(found):
        s0, s1 = found[key]
        out.append(Dessin(s0.tolist(), s1.tolist(), check=False))
    return out


def count_dessins(p: Passport, **kwargs) -> int:
    return len(enumerate_dessins(p, **kwargs))

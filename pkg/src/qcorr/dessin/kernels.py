"""Hot loops of the dessin enumeration: candidate filtering and canonical codes.

Each kernel exists twice: a numba version (loops, compiled) and a pure
numpy version (vectorised over the batch).  ``QCORR_NO_NUMBA=1`` selects
numpy at import time; :func:`use_backend` switches at runtime.
"""

from __future__ import annotations

import numpy as np

from .._jit import HAVE_NUMBA, njit, prange

__all__ = [
    "filter_candidates",
    "canonical_codes",
    "backend",
    "use_backend",
    "BACKENDS",
]


# --------------------------------------------------------------------------
# numba kernels


@njit(cache=True)
def _nb_assemble(fixed, cand, f, g, out0, out1, prod):
    n = fixed.shape[0]
    # product of the cyclically consecutive pair; the third permutation is its inverse
    if (f + 1) % 3 == g:
        for i in range(n):
            prod[i] = fixed[cand[i]]
    else:
        for i in range(n):
            prod[i] = cand[fixed[i]]
    h = 3 - f - g
    for i in range(n):
        if f == 0:
            out0[i] = fixed[i]
        elif f == 1:
            out1[i] = fixed[i]
        if g == 0:
            out0[i] = cand[i]
        elif g == 1:
            out1[i] = cand[i]
        if h == 0:
            out0[prod[i]] = i
        elif h == 1:
            out1[prod[i]] = i


@njit(cache=True)
def _nb_type_matches(p, target, seen, counts):
    n = p.shape[0]
    for i in range(n):
        seen[i] = 0
    for i in range(n + 1):
        counts[i] = 0
    for i in range(n):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = 1
            j = p[j]
            length += 1
        counts[length] += 1
        if counts[length] > target[length]:
            return False
    for i in range(n + 1):
        if counts[i] != target[i]:
            return False
    return True


@njit(cache=True)
def _nb_transitive(s0, s1, seen, stack):
    n = s0.shape[0]
    for i in range(n):
        seen[i] = 0
    seen[0] = 1
    stack[0] = 0
    top = 1
    reached = 1
    while top > 0:
        top -= 1
        d = stack[top]
        e = s0[d]
        if not seen[e]:
            seen[e] = 1
            stack[top] = e
            top += 1
            reached += 1
        e = s1[d]
        if not seen[e]:
            seen[e] = 1
            stack[top] = e
            top += 1
            reached += 1
    return reached == n


@njit(cache=True, parallel=True)
def _nb_filter(fixed, cands, f, g, target):
    m, n = cands.shape
    ok = np.zeros(m, dtype=np.uint8)
    s0 = np.empty((m, n), dtype=np.int64)
    s1 = np.empty((m, n), dtype=np.int64)
    for r in prange(m):
        prod = np.empty(n, dtype=np.int64)
        seen = np.empty(n, dtype=np.int64)
        counts = np.empty(n + 1, dtype=np.int64)
        stack = np.empty(n, dtype=np.int64)
        _nb_assemble(fixed, cands[r], f, g, s0[r], s1[r], prod)
        if not _nb_type_matches(prod, target, seen, counts):
            continue
        if _nb_transitive(s0[r], s1[r], seen, stack):
            ok[r] = 1
    return ok, s0, s1


@njit(cache=True)
def _nb_canonical_one(s0, s1, code, best, label, queue):
    n = s0.shape[0]
    have = False
    for base in range(n):
        for i in range(n):
            label[i] = -1
        label[base] = 0
        queue[0] = base
        nxt = 1
        state = 0  # 0: equal so far, -1: smaller, 1: larger
        for k in range(n):
            d = queue[k]
            e = s0[d]
            if label[e] < 0:
                label[e] = nxt
                queue[nxt] = e
                nxt += 1
            e = s1[d]
            if label[e] < 0:
                label[e] = nxt
                queue[nxt] = e
                nxt += 1
            code[k] = label[s0[d]]
            code[n + k] = label[s1[d]]
        if nxt < n:
            # disconnected: label the rest in index order
            return False
        if not have:
            for i in range(2 * n):
                best[i] = code[i]
            have = True
            continue
        # interleaved comparison is equivalent to comparing sigma0 then sigma1
        for i in range(2 * n):
            if code[i] < best[i]:
                state = -1
                break
            if code[i] > best[i]:
                state = 1
                break
        if state < 0:
            for i in range(2 * n):
                best[i] = code[i]
    return True


@njit(cache=True, parallel=True)
def _nb_canonical_batch(S0, S1):
    m, n = S0.shape
    out = np.empty((m, 2 * n), dtype=np.int64)
    for r in prange(m):
        code = np.empty(2 * n, dtype=np.int64)
        label = np.empty(n, dtype=np.int64)
        queue = np.empty(n, dtype=np.int64)
        _nb_canonical_one(S0[r], S1[r], code, out[r], label, queue)
    return out


# --------------------------------------------------------------------------
# numpy kernels


def _np_compose_rows(a, b):
    """Row-wise a o b for (m, n) arrays."""
    return np.take_along_axis(a, b, axis=1)


def _np_cycle_lengths(p):
    m, n = p.shape
    ar = np.broadcast_to(np.arange(n), (m, n))
    lengths = np.zeros((m, n), dtype=np.int64)
    cur = p.copy()
    for k in range(1, n + 1):
        hit = (cur == ar) & (lengths == 0)
        lengths[hit] = k
        cur = np.take_along_axis(p, cur, axis=1)
    return lengths


def _np_filter(fixed, cands, f, g, target):
    m, n = cands.shape
    fixed_rows = np.broadcast_to(fixed, (m, n))
    if (f + 1) % 3 == g:
        prod = _np_compose_rows(fixed_rows, cands)
    else:
        prod = _np_compose_rows(cands, fixed_rows)
    third = np.empty_like(prod)
    np.put_along_axis(third, prod, np.broadcast_to(np.arange(n), (m, n)), axis=1)
    perms = [None, None, None]
    perms[f] = np.array(fixed_rows)
    perms[g] = cands
    perms[3 - f - g] = third
    s0, s1 = np.ascontiguousarray(perms[0]), np.ascontiguousarray(perms[1])

    lengths = _np_cycle_lengths(prod)
    ok = np.ones(m, dtype=bool)
    for length in range(1, n + 1):
        cnt = (lengths == length).sum(axis=1) // length
        ok &= cnt == target[length]

    # transitivity by min-label propagation along both generators
    comp = np.broadcast_to(np.arange(n), (m, n)).copy()
    inv0 = np.empty_like(s0)
    inv1 = np.empty_like(s1)
    ar = np.broadcast_to(np.arange(n), (m, n))
    np.put_along_axis(inv0, s0, ar, axis=1)
    np.put_along_axis(inv1, s1, ar, axis=1)
    for _ in range(n):
        new = np.minimum.reduce([
            comp,
            np.take_along_axis(comp, s0, axis=1),
            np.take_along_axis(comp, s1, axis=1),
            np.take_along_axis(comp, inv0, axis=1),
            np.take_along_axis(comp, inv1, axis=1),
        ])
        if np.array_equal(new, comp):
            break
        comp = new
    ok &= (comp == 0).all(axis=1)
    return ok.astype(np.uint8), s0, s1


def _np_canonical_batch(S0, S1):
    m, n = S0.shape
    rows = m * n
    r = np.arange(rows)
    s0 = np.repeat(S0, n, axis=0)
    s1 = np.repeat(S1, n, axis=0)
    bases = np.tile(np.arange(n), m)
    label = np.full((rows, n), -1, dtype=np.int64)
    queue = np.zeros((rows, n), dtype=np.int64)
    label[r, bases] = 0
    queue[:, 0] = bases
    nxt = np.ones(rows, dtype=np.int64)
    for k in range(n):
        d = queue[:, k]
        for sig in (s0, s1):
            e = sig[r, d]
            new = label[r, e] < 0
            rn = r[new]
            label[rn, e[new]] = nxt[new]
            queue[rn, nxt[new]] = e[new]
            nxt[new] += 1
    code = np.empty((rows, 2 * n), dtype=np.int64)
    # row k of the code describes the dart labelled k; columns interleave like the numba kernel
    code[:, :n] = np.take_along_axis(label, np.take_along_axis(s0, queue, axis=1), axis=1)
    code[:, n:] = np.take_along_axis(label, np.take_along_axis(s1, queue, axis=1), axis=1)
    out = np.empty((m, 2 * n), dtype=np.int64)
    blocks = code.reshape(m, n, 2 * n)
    for i in range(m):
        blk = blocks[i]
        order = np.lexsort(blk.T[::-1])
        out[i] = blk[order[0]]
    return out


# --------------------------------------------------------------------------
# dispatch

BACKENDS = {
    "numpy": (_np_filter, _np_canonical_batch),
}
if HAVE_NUMBA:
    BACKENDS["numba"] = (_nb_filter, _nb_canonical_batch)

_active = "numba" if HAVE_NUMBA else "numpy"


def backend() -> str:
    return _active


def use_backend(name: str) -> None:
    global _active
    if name not in BACKENDS:
        raise ValueError(f"backend {name!r} not available; have {sorted(BACKENDS)}")
    _active = name


def filter_candidates(fixed, cands, f: int, g: int, target):
    """Assemble (sigma0, sigma1) from a fixed permutation on fiber ``f`` and
    candidates on fiber ``g``; keep rows whose third permutation has the
    target cycle-type counts and whose generators act transitively.
    """
    fn = BACKENDS[_active][0]
    fixed = np.ascontiguousarray(fixed, dtype=np.int64)
    cands = np.ascontiguousarray(cands, dtype=np.int64)
    target = np.ascontiguousarray(target, dtype=np.int64)
    ok, s0, s1 = fn(fixed, cands, int(f), int(g), target)
    keep = ok.astype(bool)
    return s0[keep], s1[keep]


def canonical_codes(S0, S1) -> np.ndarray:
    """Lexicographically least BFS relabelling code for each (connected) row."""
    fn = BACKENDS[_active][1]
    S0 = np.ascontiguousarray(S0, dtype=np.int64)
    S1 = np.ascontiguousarray(S1, dtype=np.int64)
    if S0.shape[0] == 0:
        return np.empty((0, 2 * S0.shape[1]), dtype=np.int64)
    return fn(S0, S1)

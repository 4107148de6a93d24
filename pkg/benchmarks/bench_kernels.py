#!/usr/bin/env python3
"""Compare the numba and numpy dessin kernels.

Times the candidate filter and the canonical-form batch on the same inputs,
after a warm-up call so numba compilation is excluded, then times a full
enumeration with each backend.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--batch 32768]
"""

import argparse
import time
from itertools import islice

import numpy as np

from qcorr.dessin import enumerate_dessins, kernels
from qcorr.dessin import perm as P
from qcorr.dessin.enumerate import _choose_fibers, _counts
from qcorr.passport import Passport

CASES = [
    "[3^2 4 / 2^4 1^2 / 3^2 4]",
    "[5 3 1 / 2^4 1 / 5 3 1]",
    "[4^2 3 / 2^4 1^3 / 4^2 3]",
    "[5 4 3 / 2^4 1^4 / 4^3]",
]


def _inputs(text, batch):
    p = Passport.parse(text)
    f, g = _choose_fibers(p)
    h = 3 - f - g
    fixed = np.array(P.representative(p.fibers[f].parts), dtype=np.int64)
    cands = np.array(list(islice(P.iter_class(p.fibers[g].parts), batch)), dtype=np.int64)
    return p, fixed, cands, f, g, _counts(p.fibers[h].parts, p.degree)


def _best(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t)
    return min(times), out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--batch", type=int, default=1 << 15)
    ap.add_argument("--skip-enumerate", action="store_true")
    args = ap.parse_args(argv)

    backends = sorted(kernels.BACKENDS)
    print(f"backends: {', '.join(backends)}")
    header = f"{'passport':36s} {'kernel':10s} " + " ".join(f"{b:>10s}" for b in backends)
    print(header)
    print("-" * len(header))
    for text in CASES:
        p, fixed, cands, f, g, target = _inputs(text, args.batch)
        rows = {}
        for name in backends:
            kernels.use_backend(name)
            kernels.filter_candidates(fixed, cands[:8], f, g, target)  # warm up
            tf, (s0, s1) = _best(lambda: kernels.filter_candidates(fixed, cands, f, g, target),
                                 args.repeat)
            if len(s0):
                kernels.canonical_codes(s0[:1], s1[:1])
            tc, codes = _best(lambda: kernels.canonical_codes(s0, s1), args.repeat)
            rows[name] = (tf, tc, len(s0), codes)
        # both backends must agree before their timings mean anything
        ref = rows[backends[0]]
        for name in backends[1:]:
            assert rows[name][2] == ref[2], "filter results differ"
            assert np.array_equal(rows[name][3], ref[3]), "canonical codes differ"
        label = f"{text} ({len(cands)})"
        print(f"{label:36s} {'filter':10s} " + " ".join(f"{rows[b][0] * 1e3:9.2f}ms" for b in backends))
        print(f"{'':36s} {'canonical':10s} " + " ".join(f"{rows[b][1] * 1e3:9.2f}ms" for b in backends)
              + f"   ({ref[2]} rows)")

    if not args.skip_enumerate:
        print()
        print(f"{'full enumeration':36s} {'':10s} " + " ".join(f"{b:>10s}" for b in backends))
        for text in CASES:
            p = Passport.parse(text)
            cells = []
            counts = set()
            for name in backends:
                kernels.use_backend(name)
                t = time.perf_counter()
                counts.add(len(enumerate_dessins(p)))
                cells.append(f"{time.perf_counter() - t:9.2f}s ")
            assert len(counts) == 1
            print(f"{text:36s} {'n=' + str(counts.pop()):10s} " + " ".join(cells))


if __name__ == "__main__":
    main()

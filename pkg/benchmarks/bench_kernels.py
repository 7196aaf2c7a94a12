"""Compare the compiled kernels with the numpy reference.

    python benchmarks/bench_kernels.py [--repeat N]

Both backends must return identical results; the script exits nonzero if not.
"""

import argparse
import sys
import time

import numpy as np

from adelic_codes import _kernels_py
from adelic_codes.gf import field_create

try:
    from adelic_codes import _kernels as _compiled
except ImportError:
    _compiled = None


def _time(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def _same(a, b):
    if isinstance(a, tuple):
        return all(_same(x, y) for x, y in zip(a, b))
    if isinstance(a, np.ndarray):
        return np.array_equal(a, b)
    return a == b


def cases():
    rng = np.random.default_rng(1)
    for q, k, n, r in [(5, 6, 5, 2), (7, 6, 7, 1), (4, 8, 4, 2), (2, 16, 24, 1)]:
        F = field_create(*{4: (2, 2)}.get(q, (q,)))
        G = rng.integers(0, q, size=(k, n * r), dtype=np.int64)
        yield f"min_weight q={q} k={k} len={n * r}", F, "min_weight", G, r
    for q, rows, cols in [(5, 40, 60), (7, 80, 80), (2, 120, 160)]:
        F = field_create(q)
        M = rng.integers(0, q, size=(rows, cols), dtype=np.int64)
        yield f"rref q={q} {rows}x{cols}", F, "rref", M, None


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if _compiled is None:
        print("compiled extension not built; run `pip install -e . --no-build-isolation` first")
        return 1
    print(f"{'case':36} {'python (s)':>11} {'cython (s)':>11} {'speedup':>8}")
    ok = True
    for name, F, kind, A, r in cases():
        add, mul, neg, inv = F.tables
        if kind == "min_weight":
            py = lambda: _kernels_py.min_weight(A, r, add, mul)
            cy = lambda: _compiled.min_weight(A, r, add, mul)
        else:
            py = lambda: _kernels_py.rref(A.copy(), add, mul, neg, inv)
            cy = lambda: _compiled.rref(np.ascontiguousarray(A.copy()), add, mul, neg, inv)
        tp, op = _time(py, args.repeat)
        tc, oc = _time(cy, args.repeat)
        same = _same(op[0], oc[0]) and (kind == "rref" or op[2] == oc[2])
        ok &= same
        print(f"{name:36} {tp:11.4f} {tc:11.4f} {tp / tc:7.1f}x" + ("" if same else "  MISMATCH"))
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())

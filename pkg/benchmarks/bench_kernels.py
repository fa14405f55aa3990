"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 3]

Each workload runs through both kernel modules directly, so the comparison
does not depend on which one ``lattrans`` selected at import.
"""

from __future__ import annotations

import argparse
import random
import time

from lattrans import kernels
from lattrans.constructions import L_dprime
from lattrans.sampling import random_latin_array, random_partial_latin


def _count_workload(k):
    A = L_dprime()
    squares = [random_latin_array(8, 8 + i, random.Random(i)) for i in range(10)]
    k.transversal_search(A.flat, 6)
    for S in squares:
        k.transversal_search(S.flat, 8)


def _canonical_workload(k):
    rng = random.Random(1)
    arrays = [random_partial_latin(4, 6, rng, 0.2) for _ in range(200)]
    for A in arrays:
        k.canonical(A.flat, 4, 4, True)


def _catalogue_workload(k):
    # the order-4 partial catalogue, three holes in total at most
    m, cap, total = 4, 2, 3
    layer = {k.canonical(r, 1, m, False) for r in k.next_rows((), 0, m, cap, total)}
    for depth in range(1, m - 2):
        layer = {k.canonical(e, depth + 1, m, False) for r in layer for e in k.next_rows(r, depth, m, cap, total)}
    finals = set()
    for r in layer:
        for e in k.next_rows(r, m - 2, m, cap, total):
            for full in k.last_rows(e, m, cap, total):
                finals.add(k.canonical(full, m, m, True))
    return len(finals)


WORKLOADS = [
    ("transversal count", _count_workload),
    ("canonical form", _canonical_workload),
    ("order-4 catalogue", _catalogue_workload),
]


def _time(fn, k, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn(k)
        best = min(best, time.perf_counter() - t)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    impls = [("python", kernels.python_kernels)]
    if kernels.compiled_kernels is not None:
        impls.append(("cython", kernels.compiled_kernels))
    else:
        print("compiled kernels not built; timing the fallback only")
    if kernels.compiled_kernels is not None:
        a = _catalogue_workload(kernels.python_kernels)
        b = _catalogue_workload(kernels.compiled_kernels)
        assert a == b, (a, b)
    print(f"{'workload':<20}" + "".join(f"{name:>12}" for name, _ in impls) + ("     speedup" if len(impls) == 2 else ""))
    for label, fn in WORKLOADS:
        times = [_time(fn, k, args.repeat) for _, k in impls]
        row = f"{label:<20}" + "".join(f"{t:>11.3f}s" for t in times)
        if len(times) == 2:
            row += f"{times[0] / times[1]:>11.1f}x"
        print(row)


if __name__ == "__main__":
    main()

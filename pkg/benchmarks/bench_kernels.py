"""Time the numpy and numba versions of each search kernel on the same inputs.

Usage: python benchmarks/bench_kernels.py [--repeat N]

Compilation happens in a warm-up call that is not timed.  Results of both
versions are compared before any timing is printed.
"""

import argparse
import time

import numpy as np

from planar4c import _kernels
from planar4c.hamilton import find_hamilton_circuit, rebuild, split_by_circuit
from planar4c.instances import icosahedron, octahedral_nest
from planar4c.solver import completion_order


def _inputs():
    T = octahedral_nest(2)  # 12 vertices, 20 triangles
    idx = T.local_index()
    inc = T.incidence_array()
    w = _kernels.digit_weights(len(idx), list(range(len(idx))))
    yield "cv3_codes t=20", "cv3_codes", (inc, len(idx), w)
    yield "count_residue t=22", "count_residue", (22, 0)
    I = icosahedron()
    sp = split_by_circuit(I, find_hamilton_circuit(I))
    D = rebuild(sp.outer, sp.inner)[-1]  # two-vertex polygon, 20 triangles
    di = D.local_index()
    free = [u for u in D.vertices if u not in D.base]
    wz = _kernels.digit_weights(len(di), [di[u] for u in free])
    yield "first_zero t=20", "first_zero", (D.incidence_array(), len(di), wz)
    order, completes = completion_order(D, set(free))
    ptr = np.zeros(len(order) + 1, dtype=np.int64)
    flat = []
    for k, vs in enumerate(completes):
        flat.extend(di[x] for x in vs)
        ptr[k + 1] = len(flat)
    args = (D.incidence_array(), np.array(order, dtype=np.int64), ptr, np.array(flat, dtype=np.int64), len(di))
    yield "dfs_zero t=20", "dfs_zero", args


def _same(a, b) -> bool:
    if isinstance(a, tuple):
        return all(_same(x, y) for x, y in zip(a, b))
    return np.array_equal(np.asarray(a), np.asarray(b))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    impls = _kernels.IMPLEMENTATIONS
    if "numba" not in impls:
        print("numba is not installed; only the numpy versions exist")
    print(f"{'kernel':<24}{'numpy s':>12}{'numba s':>12}{'speedup':>10}")
    for label, name, inp in _inputs():
        times = {}
        results = {}
        for which, table in impls.items():
            fn = table[name]
            results[which] = fn(*inp)  # warm-up / compile
            best = float("inf")
            for _ in range(args.repeat):
                t0 = time.perf_counter()
                fn(*inp)
                best = min(best, time.perf_counter() - t0)
            times[which] = best
        if "numba" in results:
            assert _same(results["numpy"], results["numba"]), f"{label}: implementations disagree"
            ratio = times["numpy"] / max(times["numba"], 1e-9)
            print(f"{label:<24}{times['numpy']:>12.4f}{times['numba']:>12.4f}{ratio:>9.1f}x")
        else:
            print(f"{label:<24}{times['numpy']:>12.4f}{'-':>12}{'-':>10}")


if __name__ == "__main__":
    main()

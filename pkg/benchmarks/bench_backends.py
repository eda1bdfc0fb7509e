"""Timing comparison of the numba kernels against the pure numpy/python twins.

Runs each micro-kernel plus one macro workload (the brute-force over-ring scan)
under both backends and prints a table.  Results must agree bit for bit; the
script asserts that along the way.

    python3 benchmarks/bench_backends.py [--repeat 3]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from cubicrings import RingConfig, make_algebra, set_backend, available_backends
from cubicrings.backend import K
from cubicrings.overrings import brute_force_overrings


def time_call(fn, repeat):
    best = None
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best, result


def micro_suite(rng, n=16, p=13, rounds=2000):
    a = rng.integers(0, p, size=n).astype(np.int64)
    b = rng.integers(0, p, size=n).astype(np.int64)
    a[0] = 1
    gens = rng.integers(0, p, size=(6, 3, n)).astype(np.int64)
    mat = rng.integers(0, p, size=(24, 24)).astype(np.int64)

    def mul():
        acc = 0
        for _ in range(rounds):
            acc ^= int(K.poly_mul(a, b, p)[n - 1])
        return acc

    def inv():
        acc = 0
        for _ in range(rounds):
            acc ^= int(K.poly_inv(a, p)[n - 1])
        return acc

    def hnf():
        acc = 0
        for _ in range(rounds // 4):
            H, rank = K.hnf_reduce(gens, p)
            acc ^= int(H[2, 2, 0]) ^ rank
        return acc

    def rref():
        acc = 0
        for _ in range(rounds // 4):
            R, piv, rank = K.rref_mod_p(mat, p)
            acc ^= rank
        return acc

    return {"poly_mul": mul, "poly_inv": inv, "hnf_reduce": hnf, "rref_mod_p": rref}


def macro_suite():
    def overrings():
        alg = make_algebra(RingConfig(5, 10), "2r")
        return len(brute_force_overrings(alg, 3))

    return {"brute_force_overrings(2r,p=5,m=3)": overrings}


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    rng = np.random.default_rng(12345)
    names = available_backends()
    print(f"available backends: {', '.join(names)}")
    rows = {}
    checks = {}
    for backend in names:
        set_backend(backend)
        if backend == "numba":  # trigger compilation outside the timed region
            for fn in micro_suite(np.random.default_rng(12345)).values():
                fn()
        for label, fn in {**micro_suite(np.random.default_rng(12345)), **macro_suite()}.items():
            dt, result = time_call(fn, args.repeat)
            rows.setdefault(label, {})[backend] = dt
            checks.setdefault(label, set()).add(result)
    for label, results in checks.items():
        assert len(results) == 1, f"backends disagree on {label}: {results}"
    width = max(len(label) for label in rows)
    print(f"{'kernel'.ljust(width)}  " + "  ".join(f"{b:>12}" for b in names) + "  speedup")
    for label, times in rows.items():
        cells = "  ".join(f"{times[b] * 1e3:>10.2f}ms" for b in names)
        if "python" in times and "numba" in times and times["numba"] > 0:
            ratio = f"{times['python'] / times['numba']:.1f}x"
        else:
            ratio = "-"
        print(f"{label.ljust(width)}  {cells}  {ratio}")


if __name__ == "__main__":
    main()

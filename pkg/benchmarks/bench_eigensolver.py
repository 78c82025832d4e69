"""Benchmark the compiled Sturm kernel against the NumPy fallback.

Run from the repository root after installing the package:

    python benchmarks/bench_eigensolver.py [sizes ...]

For each level n, times the full eigensolve of the lambda = 1 band matrix
with both kernels and asserts the results are bit-identical.
"""

import sys
import time

import numpy as np

from spinosc import _sturm_py
from spinosc import eigensolve
from spinosc.quantum import QuantumParams, build_h_matrix

try:
    from spinosc import _sturm

    KERNELS = [("compiled", _sturm), ("python", _sturm_py)]
except ImportError:
    KERNELS = [("python", _sturm_py)]
    print("compiled kernel not built; benchmarking the fallback only")


def solve_with(kernel, offdiag, tol=1e-14):
    saved = eigensolve._kernel
    eigensolve._kernel = kernel
    try:
        return eigensolve.eigenvalues_bisect(offdiag, tol)
    finally:
        eigensolve._kernel = saved


def main(argv):
    sizes = [int(a) for a in argv[1:]] or [127, 513, 1025, 2049]
    print(f"{'n':>6}  " + "".join(f"{name:>14}" for name, _ in KERNELS) + "  identical")
    for n in sizes:
        offdiag = build_h_matrix(QuantumParams(n), 1.0).scaled_offdiag()
        results = []
        timings = []
        for _, kernel in KERNELS:
            t0 = time.perf_counter()
            results.append(solve_with(kernel, offdiag))
            timings.append(time.perf_counter() - t0)
        same = all(np.array_equal(results[0], r) for r in results[1:])
        cells = "".join(f"{t:>12.4f} s" for t in timings)
        print(f"{n:>6}  {cells}  {same}")
        if not same:
            raise SystemExit("backends disagree")


if __name__ == "__main__":
    main(sys.argv)

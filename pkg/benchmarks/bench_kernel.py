"""Time the compiled closed-loop recursion against the pure-Python one.

    python benchmarks/bench_kernel.py [--steps N] [--repeat R]
"""

import argparse
import timeit

import numpy as np

from mdrc.experiments import PMDC_K, PMDC_L_BAR, pmdc_plant
from mdrc.plant import extend
from mdrc.sim import _kernel_py

try:
    from mdrc.sim import _kernel
except ImportError:
    _kernel = None


def main():
    parser = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    parser.add_argument("--steps", type=int, default=100_000)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    p = pmdc_plant()
    n = args.steps
    d = np.where(np.arange(n + 2) >= n // 2, 5.0, 0.0)
    call = (
        p.A, p.b_u, p.b_d, np.asarray(PMDC_K, float), p.C_m, np.asarray(PMDC_L_BAR), extend(p).A_bar,
        (1, 0.0, 0.0, 9.0, 1), d, np.zeros(2), np.zeros(3), n,
    )
    backends = [("python", _kernel_py.run_closed_loop)]
    if _kernel is not None:
        backends.append(("cython", _kernel.run_closed_loop))
    else:
        print("compiled kernel not built; timing the Python fallback only")

    best = {}
    for name, fn in backends:
        best[name] = min(timeit.repeat(lambda: fn(*call), number=1, repeat=args.repeat))
        print(f"{name:>7}: {best[name] * 1e3:9.2f} ms for {n} steps ({best[name] / n * 1e9:7.1f} ns/step)")
    if len(best) == 2:
        X1, _, _ = _kernel_py.run_closed_loop(*call)
        X2, _, _ = _kernel.run_closed_loop(*call)
        print(f"speedup: {best['python'] / best['cython']:.1f}x, outputs identical: {np.array_equal(X1, X2)}")


if __name__ == "__main__":
    main()

"""Compare the numba kernels with their pure-numpy fallbacks.

Usage::

    python benchmarks/bench_kernels.py [--n 100000] [--repeat 3]

Both backends are imported directly, so the ``LSPEC_DISABLE_NUMBA`` flag does
not matter here. The first numba call (compilation or cache load) is excluded
from the timings.
"""

import argparse
import time

import numpy as np

from lspec import _kernels_numba as nb
from lspec import _kernels_numpy as npk
from lspec.lmatrix import hilbert_l_sequence, inverse_tridiagonal


def _best(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=100_000, help="matrix order for the O(n) kernels")
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--dense", type=int, default=120, help="order of the dense Jacobi test matrix")
    args = ap.parse_args(argv)

    T = inverse_tridiagonal(hilbert_l_sequence(args.n, 1.0))
    d = np.ascontiguousarray(T.diag)
    e2 = np.ascontiguousarray(T.offdiag ** 2)
    piv = np.finfo(float).tiny * max(1.0, e2.max())
    sigmas = np.linspace(0.3, 100.0, 64)
    ks = np.arange(args.n - 7, args.n + 1, dtype=np.int64)
    hi = float(d.max() + 2 * np.sqrt(e2.max()))
    zs = np.linspace(0.3, 2.0, 64)
    zc = zs + 0.1j
    rng = np.random.default_rng(0)
    M = rng.normal(size=(args.dense, args.dense))
    M = M + M.T

    cases = {
        "sturm_counts (64 shifts)": lambda k: k.sturm_counts(d, e2, sigmas, piv),
        "bisect_eigs (8 eigenvalues)": lambda k: k.bisect_eigs(d, e2, ks, 0.0, hi, 0.0, 4e-16, piv),
        "nu1_flux (64 points)": lambda k: k.nu1_flux(zs, args.n),
        "p_flux (64 complex points)": lambda k: k.p_flux(zc, args.n, 0.5),
        f"jacobi_eigs ({args.dense}x{args.dense})": lambda k: k.jacobi_eigs(M, 1e-13, 100),
    }

    print(f"n = {args.n}, best of {args.repeat}")
    print(f"{'kernel':32s} {'numba [s]':>12s} {'numpy [s]':>12s} {'speedup':>9s}")
    for name, call in cases.items():
        call(nb)  # compile / load cache
        t_nb = _best(lambda: call(nb), args.repeat)
        t_np = _best(lambda: call(npk), args.repeat)
        print(f"{name:32s} {t_nb:12.4g} {t_np:12.4g} {t_np / t_nb:9.1f}")


if __name__ == "__main__":
    main()

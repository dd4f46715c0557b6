"""Compare the compiled row-reduction kernel with the numpy fallback.

    python3 benchmarks/bench_rref.py [--repeat N]

Cases are random mod-p matrices plus the real workload: the null space of
``ad y`` on the degree-9 window of U(H) in the five-dimensional F_3 example.
"""

import argparse
import time

import numpy as np

from lieenv import kernels
from lieenv.reproduce import load_fixture
from lieenv.weights import FilteredBasis


def best_of(fn, matrix, p, repeat):
    times = []
    for _ in range(repeat):
        a = matrix.copy()
        t0 = time.perf_counter()
        fn(a, p)
        times.append(time.perf_counter() - t0)
    return min(times)


def cases(seed):
    rng = np.random.default_rng(seed)
    yield "random 200x200 mod 3", rng.integers(0, 3, size=(200, 200)).astype(np.int64), 3
    yield "random 715x715 mod 3", rng.integers(0, 3, size=(715, 715)).astype(np.int64), 3
    yield "random 400x400 mod 31", rng.integers(0, 31, size=(400, 400)).astype(np.int64), 31
    af, L = load_fixture("cyclic_char3")
    fb = FilteredBasis(af.subspace(L, "H"), 9)
    M = np.array(fb.operator_matrix(L.basis_vec("y")))
    yield f"ad y on degree-9 window ({len(fb)}x{len(fb)})", M, 3


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    if kernels.compiled_rref_modp is None:
        print("compiled kernel not built; only the fallback is timed")
    print(f"{'case':44s} {'numpy':>10s} {'cython':>10s} {'speedup':>8s}")
    for name, m, p in cases(args.seed):
        tp = best_of(kernels.python_rref_modp, m, p, args.repeat)
        if kernels.compiled_rref_modp is not None:
            a, b = m.copy(), m.copy()
            assert list(kernels.compiled_rref_modp(a, p)) == list(kernels.python_rref_modp(b, p))
            assert (a == b).all()
            tc = best_of(kernels.compiled_rref_modp, m, p, args.repeat)
            print(f"{name:44s} {tp * 1e3:9.1f}ms {tc * 1e3:9.1f}ms {tp / tc:7.1f}x")
        else:
            print(f"{name:44s} {tp * 1e3:9.1f}ms {'-':>10s}")


if __name__ == "__main__":
    main()

"""Compare the numba and numpy backends of the hot kernels.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Each kernel runs once untimed per backend (JIT warm-up), then ``--repeat``
times; the best wall time is reported with the speedup and a parity check.
"""

import argparse
import time

import numpy as np

from invariant_forge import kernels
from invariant_forge.poly import monomial_array


def _rref_case(rng):
    p = 32003
    A = rng.integers(0, p, size=(300, 400), dtype=np.int64)
    A[150:] = (A[:150] * 7 + A[:150] * 3) % p  # force rank deficiency
    return lambda: kernels.rref_mod_p(A.copy(), p)


def _weights_case(rng):
    exps = monomial_array(8, 10)
    weights = rng.integers(0, 12, size=(8, 2), dtype=np.int64)
    moduli = np.array([12, 8], dtype=np.int64)
    return lambda: kernels.monomial_weights(exps, weights, moduli)


def _charsum_case(rng):
    N, n, G = 24, 6, 2000
    exps = rng.integers(0, N, size=(G, n), dtype=np.int64)
    counts = rng.integers(1, 4, size=G, dtype=np.int64)
    return lambda: kernels.charsum_group_ring(exps, counts, N, 12)


CASES = {"rref_mod_p 300x400": _rref_case,
         "monomial_weights n=8 d=10": _weights_case,
         "charsum 2000 elements N=24 D=12": _charsum_case}


def best_time(fn, repeat):
    fn()
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def same(a, b):
    if isinstance(a, tuple):
        return all(same(x, y) for x, y in zip(a, b))
    return np.array_equal(np.asarray(a), np.asarray(b))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    if not kernels.HAVE_NUMBA:
        print("numba not installed; nothing to compare")
        return
    print(f"{'kernel':<34}{'numba s':>12}{'numpy s':>12}{'speedup':>10}  parity")
    for name, make in CASES.items():
        fn = make(np.random.default_rng(args.seed))
        res = {}
        for backend in ("numba", "numpy"):
            kernels.set_backend(backend)
            res[backend] = best_time(fn, args.repeat)
        kernels.set_backend("numba")
        (tn, on), (tp, op) = res["numba"], res["numpy"]
        print(f"{name:<34}{tn:>12.5f}{tp:>12.5f}{tp / tn:>9.1f}x  {'ok' if same(on, op) else 'DIFF'}")


if __name__ == "__main__":
    main()

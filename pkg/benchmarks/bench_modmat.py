"""Compare the compiled and pure-Python modular matrix kernels.

    python3 benchmarks/bench_modmat.py [--sizes 8 16 32] [--repeat 5]
"""
import argparse
import statistics
import time

import numpy as np

from ramlab import _modmat_py

try:
    from ramlab import _modmat
except ImportError:
    _modmat = None


def _time(fn, repeat):
    runs = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        runs.append(time.perf_counter() - t0)
    return statistics.median(runs)


def _invertible(n, m, rng):
    # unit upper times unit lower triangular is always invertible
    U = np.triu(rng.integers(0, m, (n, n)), 1) + np.eye(n, dtype=np.int64)
    L = np.tril(rng.integers(0, m, (n, n)), -1) + np.eye(n, dtype=np.int64)
    return (U @ L) % m


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[8, 16, 32, 64])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--ell", type=int, default=5)
    ap.add_argument("--n", type=int, default=2)
    args = ap.parse_args(argv)
    m = args.ell ** args.n
    rng = np.random.default_rng(0)
    backends = [("python", _modmat_py)] + ([("cython", _modmat)] if _modmat else [])
    if _modmat is None:
        print("compiled kernels not built; timing the fallback only")
    print(f"{'kernel':<10}{'size':>6}" + "".join(f"{name:>12}" for name, _ in backends) + f"{'speedup':>10}")
    for size in args.sizes:
        A = _invertible(size, m, rng)
        B = rng.integers(0, m, (size, size)).astype(np.int64)
        jobs = {
            "matmul": lambda k: k.matmul_mod(A, B, m),
            "rank": lambda k: k.rank_mod_prime(B, args.ell),
            "inverse": lambda k: k.inv_mod(A, args.ell, m),
        }
        for name, job in jobs.items():
            ref = job(_modmat_py)
            times = []
            for _, mod in backends:
                assert np.array_equal(np.asarray(job(mod)), np.asarray(ref)), f"{name} mismatch"
                times.append(_time(lambda: job(mod), args.repeat))
            speed = f"{times[0] / times[-1]:9.1f}x" if len(times) > 1 else ""
            print(f"{name:<10}{size:>6}" + "".join(f"{t * 1e3:10.3f}ms" for t in times) + speed)


if __name__ == "__main__":
    main()

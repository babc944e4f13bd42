"""Time the numba and numpy kernel backends on the same inputs.

    python3 benchmarks/bench_kernels.py [--sizes 1000 100000] [--repeat 5]

Numba is warmed up (JIT compiled) before timing. Each row reports the best of
``--repeat`` runs and the largest difference between the two backends.
"""
import argparse
import timeit

import numpy as np

import bubbletons.elliptic as el
from bubbletons._accel import NUMBA_AVAILABLE, use_backend


def inputs(n, seed=0):
    rng = np.random.default_rng(seed)
    u, M = rng.uniform(-20, 20, n), rng.uniform(0, 0.999, n)
    x, y, z = rng.uniform(0.01, 5, (3, n))
    p = rng.uniform(-3, 5, n)
    p[np.abs(p) < 0.05] = 0.05
    return {
        "ellipj": (el.ellipj, (u, M)),
        "carlson_rj": (el.carlson_rj, (x, y, z, p)),
    }


def time_backend(name, fn, args, repeat):
    with use_backend(name):
        out = fn(*args)
        best = min(timeit.repeat(lambda: fn(*args), number=1, repeat=repeat))
    return best, out


def max_diff(a, b):
    a, b = (x if isinstance(x, tuple) else (x,) for x in (a, b))
    return max(float(np.max(np.abs(np.asarray(p) - np.asarray(q)))) for p, q in zip(a, b))


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", type=int, nargs="+", default=[1_000, 100_000])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args(argv)
    if not NUMBA_AVAILABLE:
        print("numba is not installed; only the numpy backend is timed")
    backends = ["numpy"] + (["numba"] if NUMBA_AVAILABLE else [])
    print(f"{'kernel':<11} {'n':>8} " + " ".join(f"{b + ' [ms]':>12}" for b in backends)
          + (f" {'speedup':>8} {'max diff':>9}" if len(backends) == 2 else ""))
    for n in args.sizes:
        for name, (fn, fargs) in inputs(n).items():
            times, outs = zip(*(time_backend(b, fn, fargs, args.repeat) for b in backends))
            row = f"{name:<11} {n:>8} " + " ".join(f"{1e3 * t:>12.3f}" for t in times)
            if len(backends) == 2:
                row += f" {times[0] / times[1]:>8.1f} {max_diff(*outs):>9.1e}"
            print(row)


if __name__ == "__main__":
    main()

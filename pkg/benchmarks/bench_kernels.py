"""Time the compiled and pure-Python kernel backends on the same inputs.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import timeit

import numpy as np

from pathrisk import kernels


def cases():
    rng = np.random.default_rng(0)
    path = np.concatenate([[0.0], np.cumsum(rng.normal(0, 0.01, 10_000))])
    rows = np.cumsum(rng.standard_normal((2000, 253)), axis=1)
    return {
        "window_extremes n=10000 w=180": lambda b: b.window_extremes(path, 180, 1),
        "window_extremes n=10000 w=21": lambda b: b.window_extremes(path, 21, 1),
        "scan_rows 2000x253": lambda b: b.scan_rows(rows),
        "episode_rows 2000x253": lambda b: b.episode_rows(rows),
    }


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    names = kernels.available_backends()
    backends = {n: kernels.get_backend(n) for n in names}
    print(f"{'case':34s}" + "".join(f"{n:>12s}" for n in names) + "     speedup")
    for label, fn in cases().items():
        best = {}
        for n, b in backends.items():
            fn(b)
            best[n] = min(timeit.repeat(lambda: fn(b), number=1, repeat=args.repeat))
        speedup = best["python"] / best["cython"] if "cython" in best else float("nan")
        print(f"{label:34s}" + "".join(f"{best[n] * 1e3:10.2f}ms" for n in names)
              + f"  {speedup:9.1f}x")


if __name__ == "__main__":
    main()

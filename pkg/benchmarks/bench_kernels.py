"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import random
import timeit

import whitney._kernels as K


def _cases(rng):
    def rc(n):
        return [complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(n)]

    out = []
    for n in (8, 32, 128):
        m, b = [rc(n) for _ in range(n)], rc(n)
        out.append((f"solve_dense n={n}", "solve_dense", (m, b)))
    d, v, c = rc(10000), rc(10000), rc(12)
    out.append(("horner_eval 10000 pts, 12 terms", "horner_eval", (c, 2, d, v)))
    out.append(("esym_all n=400", "esym_all", (rc(400),)))
    out.append(("power_matrix 200x200", "power_matrix", (rc(200), rc(200), 2, 200)))
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if K.compiled is None:
        print("compiled kernels unavailable; build with `pip install --no-build-isolation -e .`")
        return
    rng = random.Random(0)
    print(f"{'kernel':34s} {'python (ms)':>12s} {'cython (ms)':>12s} {'speedup':>8s}")
    for label, name, call_args in _cases(rng):
        times = []
        for impl in (K.python, K.compiled):
            fn = getattr(impl, name)
            number = 3
            best = min(timeit.repeat(lambda: fn(*call_args), number=number, repeat=args.repeat))
            times.append(best / number * 1e3)
        print(f"{label:34s} {times[0]:12.3f} {times[1]:12.3f} {times[0] / times[1]:7.1f}x")


if __name__ == "__main__":
    main()

"""Compiled vs pure-Python RK4 kernel.

    python benchmarks/bench_rk4.py [--repeat 5] [--step 1e-3]

Times one outward integration and one full eigenvalue search per backend,
and checks the two backends return identical results.
"""
import argparse
import statistics
import time

from hulthen import oracle
from hulthen._kernels import available_backends


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), statistics.median(times), out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--step", type=float, default=1e-3)
    ap.add_argument("--beta", type=float, default=9.0)
    args = ap.parse_args()

    backends = available_backends()
    if "cython" not in backends:
        print("compiled kernel not built; only the Python fallback is available")
    cfg = oracle.ShootingConfig(step=args.step)
    results = {}
    print(f"{'backend':8s} {'task':12s} {'best [s]':>10s} {'median [s]':>11s}")
    for name, kernel in backends.items():
        one = lambda: kernel(args.beta, -16.0, cfg.x_min, cfg.x_max, cfg.step)  # noqa: E731
        full = lambda: oracle.shoot_eigenvalues(args.beta, cfg, kernel=kernel)  # noqa: E731
        b1, m1, r1 = best_of(one, args.repeat)
        b2, m2, r2 = best_of(full, max(1, args.repeat // 5 if name == "python" else args.repeat))
        results[name] = (b1, b2, r1, r2)
        print(f"{name:8s} {'integrate':12s} {b1:10.4f} {m1:11.4f}")
        print(f"{name:8s} {'eigensearch':12s} {b2:10.4f} {m2:11.4f}")
    if len(results) == 2:
        c, p = results["cython"], results["python"]
        print(f"speedup: integrate x{p[0] / c[0]:.1f}, eigensearch x{p[1] / c[1]:.1f}")
        print(f"identical outputs: {c[2] == p[2] and c[3] == p[3]}")


if __name__ == "__main__":
    main()

"""Compare the pure-Python and compiled Dijkstra kernels.

    python3 benchmarks/bench_backends.py --sizes 1000 10000 100000

Prints one CSV row per (family, n, heap, backend) with the best wall time
over ``--reps`` runs and the speedup of the compiled kernel.  Both backends
must produce identical traces; a mismatch aborts the run.
"""
from __future__ import annotations

import argparse
import sys
import time

from tsdijkstra import _backend, gen_family, run

FAMILIES = ("path", "star", "random", "lollipop")


def build(family: str, n: int):
    if family == "random":
        return gen_family("random", n=n, m=4 * n, seed=n)
    if family == "lollipop":
        q = max(2, n // 8)
        return gen_family("lollipop", p=n - q, q=q, seed=n)
    return gen_family(family, n=n, seed=n)


def best_of(g, s, heap: str, backend: str, reps: int):
    best, trace = None, None
    for _ in range(reps):
        t0 = time.perf_counter()
        trace = run(g, s, heap, backend=backend)
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best, trace


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[1000, 10000, 100000])
    ap.add_argument("--families", nargs="+", choices=FAMILIES, default=list(FAMILIES))
    ap.add_argument("--heaps", nargs="+", default=["binary", "fibonacci", "timestamp"])
    ap.add_argument("--reps", type=int, default=3)
    args = ap.parse_args(argv)
    if "compiled" not in _backend.available():
        print("compiled kernel not built; reinstall with Cython available", file=sys.stderr)
        return 1
    print("family,n,heap,python_s,compiled_s,speedup")
    for family in args.families:
        for n in args.sizes:
            g, s = build(family, n)
            for heap in args.heaps:
                tp, a = best_of(g, s, heap, "python", args.reps)
                tc, b = best_of(g, s, heap, "compiled", args.reps)
                if (a.order, a.distance, a.counters) != (b.order, b.distance, b.counters):
                    print(f"trace mismatch on {family}({n}) with {heap}", file=sys.stderr)
                    return 2
                print(f"{family},{n},{heap},{tp:.4f},{tc:.4f},{tp / tc:.1f}", flush=True)
    return 0


if __name__ == "__main__":
    sys.exit(main())

"""Time the compiled recurrence kernel against the pure-Python fallback.

    python benchmarks/bench_kernel.py [--depths 1000 4000 16000] [--repeat 5]

The workload is the integer recurrence of the catalan tail fraction at
x = 8 after clearing denominators, so the integers grow the way they do
during evaluation.
"""
import argparse
import timeit

from cfkit import _kernel_py
from cfkit.catalog import entry

try:
    from cfkit import _kernel
except ImportError:
    _kernel = None


def workload(depth, x=8):
    bound = entry("catalan").cf_tail.bind({"x": x})
    beta, gamma, _ = bound.kernel_inputs(1, depth + 1, 1)
    return beta, gamma


def best_of(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--depths", type=int, nargs="+", default=[1000, 4000, 16000])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)

    start = (0, 1, 1, 0)   # (P_-1, P_0, Q_-1, Q_0) for a zero head
    print(f"{'depth':>7} {'python s':>10} {'compiled s':>11} {'speedup':>8}")
    for d in args.depths:
        beta, gamma = workload(d)
        py = best_of(lambda: _kernel_py.advance(beta, gamma, start), args.repeat)
        if _kernel is None:
            print(f"{d:>7} {py:>10.4f} {'n/a':>11} {'n/a':>8}")
            continue
        assert _kernel.advance(beta, gamma, start) == _kernel_py.advance(beta, gamma, start)
        cy = best_of(lambda: _kernel.advance(beta, gamma, start), args.repeat)
        print(f"{d:>7} {py:>10.4f} {cy:>11.4f} {py / cy:>7.2f}x")


if __name__ == "__main__":
    main()

"""Benchmark the compiled lattice-point enumeration kernel against its
pure-Python twin on dilated chart polytopes.

Usage: python3 benchmarks/bench_enum.py [--n N] [--kmax K] [--repeats R]
"""

import argparse
import statistics
import time

from polyptych import _enum_py, geometry, mco
from polyptych.posets import choose_u, gt_type_C

try:
    from polyptych import _enum
except ImportError:
    _enum = None


def integerize(poly):
    rows_a, rows_b = [], []
    for a, b in poly.rows:
        den = b.denominator
        rows_a.append(tuple(x * den for x in a))
        rows_b.append(b.numerator if den == 1 else int(b * den))
    return rows_a, rows_b


def time_kernel(kernel, rows_a, rows_b, box, repeats):
    times = []
    count = None
    for _ in range(repeats):
        start = time.perf_counter()
        pts = kernel.enumerate_lattice_points(rows_a, rows_b, box, 10 ** 9)
        times.append(time.perf_counter() - start)
        count = len(pts)
    return count, min(times), statistics.median(times)


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--n", type=int, default=2)
    parser.add_argument("--kmax", type=int, default=3)
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()

    lam = tuple(2 * i for i in range(1, args.n + 1))
    poset = gt_type_C(args.n, lam)
    u = choose_u(poset)
    print(f"symplectic triangular family n={args.n}, "
          f"dimension {len(poset.axis)}")
    if _enum is None:
        print("compiled kernel unavailable; timing pure kernel only")
    header = f"{'k':>3} {'points':>9} {'pure (s)':>10} {'compiled (s)':>13} "
    header += f"{'speedup':>8}"
    print(header)
    for k in range(1, args.kmax + 1):
        hd = mco.hat_delta(poset, u, frozenset())
        rows_a, rows_b = integerize(hd.hrep.dilate(k))
        box = [(int(lo), int(hi))
               for lo, hi in mco.hat_delta_box(poset, u, frozenset(), k)]
        n_pure, t_pure, _ = time_kernel(_enum_py, rows_a, rows_b, box,
                                        args.repeats)
        if _enum is not None:
            n_c, t_c, _ = time_kernel(_enum, rows_a, rows_b, box,
                                      args.repeats)
            assert n_c == n_pure, "kernel disagreement"
            print(f"{k:>3} {n_pure:>9} {t_pure:>10.4f} {t_c:>13.4f} "
                  f"{t_pure / t_c:>7.1f}x")
        else:
            print(f"{k:>3} {n_pure:>9} {t_pure:>10.4f} {'-':>13} {'-':>8}")
    print(f"compiled kernel active in library: "
          f"{geometry.HAVE_COMPILED_KERNEL}")


if __name__ == "__main__":
    main()

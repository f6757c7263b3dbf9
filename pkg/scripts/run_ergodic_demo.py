#!/usr/bin/env python3
"""Contrast the averaging behaviour of the memory-t operator below and at
the boundary value t = 1: convergent means with an explicit rank-one limit
versus persistent drift."""

import argparse

from cesaro_lab import WeightSpec, iterate_trace, monomial, truncate


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--degree", type=int, default=512)
    parser.add_argument("--n-max", type=int, default=256)
    parser.add_argument("--t", type=float, default=0.5)
    args = parser.parse_args()

    f = truncate(monomial(0), args.degree)
    weight = WeightSpec.log_power(1)

    compact = iterate_trace(args.t, f, weight, args.n_max)
    print(f"t = {args.t}: averages converge to f(0) * g0")
    marks = sorted({n for n in (1, 8, 32, 128, args.n_max) if n <= args.n_max})
    for n in marks:
        err = compact.projection_errors[n - 1]
        print(f"  n={n:4d}  distance to limit {err:.6f}  n*distance {n * err:.4f}")

    boundary = iterate_trace(1.0, f, weight, args.n_max)
    print("t = 1.0: averages keep drifting (norm of T_[2n] - T_[n])")
    for n in sorted({n for n in (1, 8, 32, args.n_max // 2) if n <= args.n_max // 2}):
        print(f"  n={n:4d}  increment {boundary.mean_increments[n - 1]:.6f}")


if __name__ == "__main__":
    main()

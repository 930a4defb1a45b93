"""Loop statistics for 3-multiwebs on the m x n annulus grid.

Prints the seam determinant det K(z), its agreement with the product
formula, the probability generating function in (u, v) for the numbers of
noncontractible loops of each orientation, and the mean loop count next to
the large-grid limit.
"""
import math

from multiwebs.annulus import (asymptotic_mean, compare_closed_form, det_Kz,
                               mean_crossings, mean_from_pgf, pgf, pgf_table)


def show_pgf(m, n):
    p = pgf(m, n)
    print(f"\npgf on the {m} x {n} annulus (j = #u-loops, k = #v-loops):")
    for j, k, c in pgf_table(p):
        print(f"  u^{j} v^{k}: {c}")
    print(f"  E[j] = {mean_from_pgf(p)}")


def main():
    for m, n in [(1, 2), (1, 3), (3, 2), (3, 3)]:
        d = det_Kz(m, n)
        cmp = compare_closed_form(m, n)
        print(f"det K(z) on {m}x{n}: {d}")
        print(f"   product formula: sign {cmp['sign']:+d}, z-shift {cmp['shift']}, "
              f"worst relative error {cmp['rel_error']:.2e}")

    show_pgf(1, 2)
    show_pgf(3, 2)

    # mean number of u-loops with m / (n + 1) held at tau
    tau = 1.0
    print(f"\nmean u-loops at aspect ratio {tau}:")
    for n in (2, 8, 32, 128, 512):
        m = round(tau * (n + 1))
        print(f"  {m:4d} x {n:4d}: {mean_crossings(m, n):.6f}")
    print(f"  limit: {asymptotic_mean(tau):.6f}  (q = {math.exp(-math.pi * tau):.4f})")


if __name__ == "__main__":
    main()

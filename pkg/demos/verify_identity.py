"""Check det K~ against the sum of multiweb traces on a few small graphs.

For each graph we draw a random SL_n connection (exact rationals), compute
the block Kasteleyn determinant, and compare it with the signed sum over all
n-multiwebs of their traces.  Both sides are exact, so "match" means equal.
"""
import time

from multiwebs.connection import random_sl
from multiwebs.generators import suite
from multiwebs.kasteleyn import verify_main

NAMES = ["cycle4", "theta3", "grid2x3", "cube", "two-hexagons", "no-matching"]


def main():
    graphs = suite()
    print(f"{'graph':14s} {'n':>2s} {'webs det':>28s}  match  secs")
    for name in NAMES:
        g = graphs[name]
        for n in (2, 3):
            t0 = time.perf_counter()
            r = verify_main(g, n, random_sl(g, n, seed=17))
            dt = time.perf_counter() - t0
            print(f"{name:14s} {n:2d} {str(r.det):>28s}  {str(r.match):5s}  {dt:.2f}")


if __name__ == "__main__":
    main()

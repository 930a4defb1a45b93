"""Reduce every 3-multiweb of a small annulus grid with the skein moves.

Each multiweb reduces to a combination of parallel core loops, recorded as
(j, k) = numbers of loops of each orientation.  Summing over all multiwebs
and substituting u^j v^k reproduces the determinant polynomial det_uv.
"""
import random
from collections import Counter

from multiwebs.annulus import AnnulusGrid, det_uv
from multiwebs.multiweb import enumerate_multiwebs
from multiwebs.skein import find_moves, reduce_annulus, reduction_polynomial


def main(m=1, n=2):
    g = AnnulusGrid(m, n).graph
    webs = list(enumerate_multiwebs(g, 3))
    print(f"{len(webs)} 3-multiwebs on the {m} x {n} annulus")

    example = max(webs, key=lambda w: len(find_moves(g, w)))
    print(f"\nexample {example}")
    for kind, key, _ in find_moves(g, example):
        print(f"  available move: {kind} at {key}")
    print(f"  reduces to {dict(reduce_annulus(g, example))}")
    other = reduce_annulus(g, example, random.Random(5))
    print(f"  with a random move order: {dict(other)}")

    total = Counter()
    for w in webs:
        total.update(reduce_annulus(g, w))
    poly = reduction_polynomial(total)
    print(f"\nsum of reductions: {poly}")
    print(f"det_uv:            {det_uv(m, n)}")
    print(f"equal: {poly == det_uv(m, n)}")


if __name__ == "__main__":
    main()

"""Exact sampling of n-multiwebs with probability proportional to colorings.

Draw a few thousand samples on a small graph and put the empirical
frequencies next to the exact probabilities.
"""
import random
from collections import Counter

from multiwebs.generators import cycle, grid
from multiwebs.multiweb import MultiwebSampler


def report(g, n, draws=4000, seed=1):
    sampler = MultiwebSampler(g, n)
    rng = random.Random(seed)
    counts = Counter(sampler.draw(rng) for _ in range(draws))
    print(f"Z = {sampler.total}, {len(sampler.webs)} multiwebs with positive weight")
    for w in sampler.webs[:8]:
        p = sampler.probability(w)
        print(f"  {str(w):40s} exact {float(p):.4f}  empirical {counts[w] / draws:.4f}")
    if len(sampler.webs) > 8:
        print(f"  ... {len(sampler.webs) - 8} more")


def main():
    print("4-cycle, n = 3")
    report(cycle(4), 3)
    print("\n2 x 3 grid, n = 2")
    report(grid(2, 3), 2)


if __name__ == "__main__":
    main()

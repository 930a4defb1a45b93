import random
from collections import Counter
from fractions import Fraction
from itertools import product

import pytest

from multiwebs.algebra import Matrix, MultiPoly, det_fraction_free
from multiwebs.connection import (Connection, gauge_transform, identity_connection,
                                  random_gauge, random_sl)
from multiwebs.generators import cube, cycle, k33_torus, no_matching, theta, theta_chain
from multiwebs.kasteleyn import default_cilia
from multiwebs.multiweb import (Multiweb, MultiwebSampler, count_colorings,
                                enumerate_colorings, enumerate_multiwebs, height_coloring,
                                is_coloring, partition_function, sample_multiwebs,
                                signed_coloring_count, tensor_trace_oracle, trace)


def brute_force_multiwebs(g, n):
    """All multiplicity vectors in {0..n}^E with degree n everywhere."""
    edges = sorted(g.edges)
    out = set()
    for mults in product(range(n + 1), repeat=len(edges)):
        deg = Counter()
        for e, k in zip(edges, mults):
            b, w = g.edges[e]
            deg[b] += k
            deg[w] += k
        if all(deg[v] == n for v in g.vertices):
            out.add(Multiweb(n, dict(zip(edges, mults))))
    return out


# -- enumeration -----------------------------------------------------------------

def test_enumeration_examples():
    assert len(list(enumerate_multiwebs(theta(1), 3))) == 1
    assert len(list(enumerate_multiwebs(cycle(4), 3))) == 4
    assert len(list(enumerate_multiwebs(theta(3), 3))) == 10
    assert list(enumerate_multiwebs(no_matching(), 2)) == []


@pytest.mark.parametrize("name", ["cycle4", "theta3", "chain212", "grid2x3", "cycle6"])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_enumeration_matches_brute_force(graphs, name, n):
    g = graphs[name]
    webs = list(enumerate_multiwebs(g, n))
    assert len(webs) == len(set(webs))
    assert set(webs) == brute_force_multiwebs(g, n)


def test_multiweb_validation():
    g = cycle(4)
    assert Multiweb(3, {0: 1, 1: 2, 2: 1, 3: 2}).is_valid(g)
    assert not Multiweb(3, {0: 1, 1: 1, 2: 1, 3: 2}).is_valid(g)
    assert Multiweb(2, {0: 1, 1: 0}) == Multiweb(2, {0: 1})


# -- colorings ---------------------------------------------------------------------

def test_coloring_counts():
    assert count_colorings(theta(3), Multiweb(3, {0: 1, 1: 1, 2: 1})) == 6
    k = k33_torus()
    assert count_colorings(k, Multiweb(3, {e: 1 for e in k.edges})) == 12
    g = cycle(4)
    assert count_colorings(g, Multiweb(3, {0: 1, 1: 2, 2: 1, 3: 2})) == 3
    assert count_colorings(theta(1), Multiweb(3, {0: 3})) == 1


@pytest.mark.parametrize("name", ["theta3", "cycle6", "chain212", "grid2x3", "cube"])
def test_count_matches_explicit_enumeration(graphs, name):
    g = graphs[name]
    for m in enumerate_multiwebs(g, 3):
        cols = list(enumerate_colorings(g, m))
        assert all(is_coloring(g, m, c) for c in cols)
        assert len(cols) == count_colorings(g, m)


def test_height_coloring_examples():
    g = cycle(4)
    m = Multiweb(3, {0: 1, 1: 2, 2: 1, 3: 2})
    col = height_coloring(g, m)
    assert is_coloring(g, m, col)
    assert all(len(col[e]) == m[e] for e in m.support())


def test_is_coloring_rejects_clash():
    g = theta(2)
    m = Multiweb(2, {0: 1, 1: 1})
    assert not is_coloring(g, m, {0: frozenset({1}), 1: frozenset({1})})


# -- traces --------------------------------------------------------------------------

def test_theta_trace_is_coefficient_of_determinant():
    """Tr of the proper theta web = coefficient of xyz in det(xA + yB + zC)."""
    g = theta(3)
    c = random_sl(g, 3, 21)
    names = ("x", "y", "z")
    xs = [MultiPoly.var(s, names) for s in names]
    mat = Matrix([[sum((xs[e] * c[e][i, j] for e in range(3)), MultiPoly(names))
                   for j in range(3)] for i in range(3)])
    coeff = det_fraction_free(mat).coefficient((1, 1, 1))
    m = Multiweb(3, {0: 1, 1: 1, 2: 1})
    assert abs(trace(g, m, c, default_cilia(g))) == abs(coeff)
    assert trace(g, m, c, default_cilia(g)) == tensor_trace_oracle(g, m, c, default_cilia(g))


def test_four_cycle_single_edges_give_monodromy_trace():
    g = cycle(4)
    c = random_sl(g, 2, 5)
    m = Multiweb(2, {e: 1 for e in g.edges})
    # edges 0:(0,1) 1:(2,1) 2:(2,3) 3:(0,3); loop 0 -> 1 -> 2 -> 3 -> 0
    expected = (c.inverse(3) * c[2] * c.inverse(1) * c[0]).trace()
    assert trace(g, m, c, default_cilia(g)) == expected


def test_identity_trace_is_signed_count_and_positive(graphs):
    for name in ("grid2x4", "cube", "chain313", "two-hexagons"):
        g = graphs[name]
        cilia = default_cilia(g)
        for n in (2, 3):
            for m in enumerate_multiwebs(g, n):
                t = trace(g, m, identity_connection(g, n), cilia)
                assert t == signed_coloring_count(g, m, cilia) == count_colorings(g, m)


@pytest.mark.parametrize("name", ["theta3", "cycle6", "cube", "grid2x3", "subdivided-theta"])
def test_trace_matches_tensor_oracle_on_proper_webs(graphs, name):
    g = graphs[name]
    cilia = default_cilia(g)
    rng = random.Random(3)
    for n in (2, 3):
        c = random_sl(g, n, 30 + n)
        proper = [m for m in enumerate_multiwebs(g, n) if m.is_proper()]
        for m in proper[:6]:
            assert trace(g, m, c, cilia) == tensor_trace_oracle(g, m, c, cilia)
        # arbitrary cilia
        other = {v: rng.randrange(g.degree(v)) for v in g.vertices}
        for m in proper[:3]:
            assert trace(g, m, c, other) == tensor_trace_oracle(g, m, c, other)


def test_trace_is_gauge_invariant():
    g = cube()
    cilia = default_cilia(g)
    c = random_sl(g, 3, 2)
    m = Multiweb(3, {e: 1 for e in g.edges})
    base = trace(g, m, c, cilia)
    for seed in range(3):
        assert trace(g, m, gauge_transform(c, g, random_gauge(g, 3, seed)), cilia) == base


def test_tripled_edges_have_trace_det():
    g = theta_chain((3, 1, 3))
    c = random_sl(g, 3, 1)
    heavy = Multiweb(3, {0: 3, 4: 3})
    assert heavy.is_valid(g)
    assert trace(g, heavy, c, g.default_cilia()) == 1


def test_trace_rejects_bad_input():
    g = theta(2)
    m = Multiweb(2, {0: 1, 1: 1})
    with pytest.raises(ValueError):
        trace(g, m, random_sl(g, 3, 0), default_cilia(g))
    with pytest.raises(ValueError):
        trace(g, m, None, {0: 0})


def test_non_sl_connection_scales_with_determinant():
    g = theta(3)
    m = Multiweb(3, {0: 1, 1: 1, 2: 1})
    cilia = default_cilia(g)
    base = random_sl(g, 3, 4)
    scaled = Connection(3, {e: base[e] * Fraction(2) for e in g.edges})
    # each of the three edges carries one row of a 3x3 minor at the black vertex
    assert trace(g, m, scaled, cilia) == 8 * trace(g, m, base, cilia)


# -- partition function and sampler ----------------------------------------------------

def test_partition_function_examples(graphs):
    assert partition_function(cycle(4), 3) == 8
    assert partition_function(theta(3), 3) == 27
    assert partition_function(graphs["no-matching"], 2) == 0


def test_sampler_probabilities():
    g = cycle(4)
    sampler = MultiwebSampler(g, 3)
    probs = sorted(sampler.probability(m) for m in sampler.webs)
    assert probs == [Fraction(1, 8), Fraction(1, 8), Fraction(3, 8), Fraction(3, 8)]
    assert sum(probs) == 1


def test_sampler_is_seeded():
    g = cycle(4)
    assert sample_multiwebs(g, 3, 20, 7) == sample_multiwebs(g, 3, 20, 7)


def test_sampler_rejects_empty_graph():
    with pytest.raises(ValueError):
        MultiwebSampler(no_matching(), 2)

from fractions import Fraction

import pytest

from multiwebs.algebra import LaurentPoly, Matrix, MultiPoly
from multiwebs.annulus import (AnnulusGrid, asymptotic_mean, asymptotic_tail_bound,
                               closed_form, compare_closed_form, crossing_exponent,
                               det_Kz, det_uv, leading_exponents, mean_crossings,
                               mean_from_pgf, pgf, pgf_table, spectrum, uv_of_matrix)
from multiwebs.kasteleyn import det_tilde
from multiwebs.multiweb import partition_function
from multiwebs.surface import GraphError

u = MultiPoly.var("u", ("u", "v"))
v = MultiPoly.var("v", ("u", "v"))


def laurent(d):
    return LaurentPoly("z", d)


def test_grid_shape():
    a = AnnulusGrid(3, 2)
    g = a.graph
    assert len(g.vertices) == 12 and len(g.edges) == 18
    assert len(g.faces()) == 8
    assert sorted(len(f) for f in g.faces())[-2:] == [6, 6]
    with pytest.raises(GraphError):
        AnnulusGrid(2, 2)


def test_det_kz_examples():
    assert det_Kz(1, 2) == laurent({1: 1, 0: 3, -1: 1})
    assert det_Kz(3, 2) == laurent({1: 1, 0: 18, -1: 1})
    d = det_Kz(1, 3)
    assert d == laurent({1: 1, 0: 5, -1: 5, -2: 1})


@pytest.mark.parametrize("m,n", [(1, 2), (3, 2), (1, 4), (3, 4)])
def test_det_kz_is_palindromic_for_even_height(m, n):
    d = det_Kz(m, n)
    lo, hi = d.min_exponent(), d.max_exponent()
    assert lo == -hi
    assert all(d.coefficient(k) == d.coefficient(-k) for k in range(hi + 1))
    assert d.evaluate(1) == partition_function(AnnulusGrid(m, n).graph, 1)


@pytest.mark.parametrize("m,n", [(1, 2), (3, 2), (1, 4), (3, 4), (1, 3), (3, 3)])
def test_closed_form(m, n):
    r = compare_closed_form(m, n)
    assert r["rel_error"] < 1e-9
    assert (2 * r["shift"]) % 2 == n % 2


def test_closed_form_rejects_bad_input():
    with pytest.raises(ValueError):
        closed_form(1, 2, -1.0)
    with pytest.raises(ValueError):
        closed_form(2, 2, 1.0)


def test_spectrum_reciprocal_pairs():
    a = spectrum(4)
    for k in range(4):
        assert a[k] * a[3 - k] == pytest.approx(1.0)


def test_det_uv_examples():
    assert det_uv(1, 2) == 20 + 30 * u + 30 * v + 27 * u * v + 9 * u * u + 9 * v * v
    for m, n in ((1, 2), (3, 2), (1, 3)):
        p = det_uv(m, n)
        swapped = MultiPoly(("u", "v"), {(j, i): c for (i, j), c in p.terms.items()})
        assert swapped == p
        assert p.evaluate((1, 1)) == partition_function(AnnulusGrid(m, n).graph, 1) ** 3


def test_det_uv_against_seam_matrix():
    """det K~ for a diagonal seam monodromy equals det_uv up to the global sign."""
    a = AnnulusGrid(1, 2)
    A = Matrix([[2, 0, 0], [0, 3, 0], [0, 0, Fraction(1, 6)]])
    d = det_tilde(a.graph, a.seam_connection(A))
    uu, vv = uv_of_matrix(A)
    assert abs(d) == det_uv(1, 2).evaluate((uu, vv))


def test_pgf_and_means():
    p = pgf(1, 2)
    assert p.evaluate((1, 1)) == 1
    assert mean_from_pgf(p) == Fraction(3, 5)
    assert mean_crossings(1, 2) == pytest.approx(0.6, rel=1e-12)
    table = pgf_table(p)
    assert table[0] == (0, 0, Fraction(20, 125))
    assert all(c >= 0 for _, _, c in table)
    with pytest.raises(ValueError):
        mean_crossings(1, 3)


def test_asymptotic_mean():
    assert asymptotic_mean(1.0) > asymptotic_mean(2.0) > 0
    full = asymptotic_mean(0.5, 200)
    assert abs(full - asymptotic_mean(0.5, 5)) <= 5 * asymptotic_tail_bound(0.5, 5)
    with pytest.raises(ValueError):
        asymptotic_mean(0.0)


@pytest.mark.parametrize("tau", [0.5, 1.0, 2.0])
def test_finite_mean_approaches_limit(tau):
    """The finite-grid mean converges to the series at the ratio m / (n + 1)."""
    errors = []
    for n in (16, 64, 256):
        m = round(tau * (n + 1))
        errors.append(abs(mean_crossings(m, n) - asymptotic_mean(m / (n + 1))))
    assert errors[0] > errors[1] > errors[2]
    assert errors[2] < 1e-4


def test_crossing_exponent_values():
    assert crossing_exponent(0, 0) == 0
    assert crossing_exponent(1, 0) == 1
    assert crossing_exponent(1, 1) == 2
    assert crossing_exponent(2, 0) == 3


def test_leading_exponents_on_long_annulus():
    """Finite-size estimates sit within one unit of the exponent for j + k <= 3."""
    pairs = [(j, k) for j in range(4) for k in range(4) if 0 < j + k <= 3]
    est = leading_exponents(9, 4, pairs)
    for (j, k), x in est.items():
        assert x is not None and abs(x - crossing_exponent(j, k)) <= 1.0, (j, k, x)

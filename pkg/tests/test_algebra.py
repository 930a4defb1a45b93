from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from multiwebs.algebra import (LaurentPoly, Matrix, MultiPoly, as_rational, cofactor_det,
                               compound_matrix, det_fraction_free, exterior_power_trace,
                               permutation_sign, product_over_char_roots, rational_str)

VARS = ("x", "y")
x = MultiPoly.var("x", VARS)
y = MultiPoly.var("y", VARS)

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def square(elements, max_size=6):
    return st.integers(1, max_size).flatmap(
        lambda n: st.lists(st.lists(elements, min_size=n, max_size=n), min_size=n, max_size=n))


small_polys = st.dictionaries(
    st.tuples(st.integers(0, 2), st.integers(0, 2)), st.integers(-3, 3), max_size=3
).map(lambda d: MultiPoly(VARS, d))

laurents = st.dictionaries(st.integers(-2, 2), st.integers(-3, 3), max_size=3).map(
    lambda d: LaurentPoly("z", d))


# -- scalars ------------------------------------------------------------------

def test_rational_parsing_and_printing():
    assert as_rational("3/6") == Fraction(1, 2)
    assert as_rational(" -4 ") == -4
    assert rational_str(Fraction(6, 3)) == "2"
    assert rational_str(Fraction(-1, 3)) == "-1/3"
    with pytest.raises(TypeError):
        as_rational(0.5)


# -- polynomials --------------------------------------------------------------

def test_polynomial_ring_identities():
    p = (x + y) ** 2
    assert p == x * x + 2 * x * y + y * y
    assert p - p == 0
    assert (x * y + 3).evaluate((2, Fraction(1, 2))) == 4
    assert p.diff("x") == 2 * x + 2 * y
    assert p.substitute("y", 1) == x * x + 2 * x + 1
    assert p.coefficient((1, 1)) == 2


def test_exact_division():
    a = x * x - y * y
    assert a.exact_div(x - y) == x + y
    with pytest.raises(ValueError):
        (x * x + 1).exact_div(x + y)


def test_serialization_round_trip():
    p = Fraction(3, 7) * x ** 3 * y - 2 * y + 5
    assert MultiPoly.from_terms(VARS, p.to_terms()) == p
    grlex = sorted(p.terms, key=lambda e: (sum(e), e), reverse=True)
    assert [e for e, _ in p.sorted_terms()] == grlex


def test_laurent_arithmetic():
    z = LaurentPoly.monomial("z", 1)
    zi = LaurentPoly.monomial("z", -1)
    p = (z + 3 + zi) * (z - zi)
    assert p == z * z + 3 * z - 3 * zi - zi * zi
    assert p.min_exponent() == -2 and p.max_exponent() == 2
    assert (z + zi).evaluate(Fraction(2)) == Fraction(5, 2)
    assert LaurentPoly.from_poly(p.shift(2).to_poly(), -2) == p


# -- determinants -------------------------------------------------------------

def test_determinant_examples():
    assert det_fraction_free(Matrix.identity(4)) == 1
    assert det_fraction_free(Matrix([[x, 1], [1, x]])) == x * x - 1
    assert det_fraction_free([[1, 2], [2, 4]]) == 0
    assert det_fraction_free([[0, 1], [1, 0]]) == -1


@settings(max_examples=60, deadline=None)
@given(square(rationals))
def test_rational_det_matches_cofactor(rows):
    assert det_fraction_free(Matrix(rows)) == cofactor_det(Matrix(rows))


@settings(max_examples=25, deadline=None)
@given(square(small_polys, 4))
def test_polynomial_det_matches_cofactor(rows):
    assert det_fraction_free(Matrix(rows)) == cofactor_det(Matrix(rows))


@settings(max_examples=25, deadline=None)
@given(square(laurents, 4))
def test_laurent_det_matches_cofactor(rows):
    d = det_fraction_free(Matrix(rows))
    assert LaurentPoly("z") + d == LaurentPoly("z") + cofactor_det(Matrix(rows))


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.tuples(
    st.lists(st.lists(rationals, min_size=n, max_size=n), min_size=n, max_size=n),
    st.lists(st.lists(rationals, min_size=n, max_size=n), min_size=n, max_size=n))))
def test_det_is_multiplicative(pair):
    a, b = Matrix(pair[0]), Matrix(pair[1])
    assert det_fraction_free(a * b) == det_fraction_free(a) * det_fraction_free(b)


def test_inverse():
    a = Matrix([[2, 1, 0], [1, 3, 1], [0, 1, 4]])
    assert (a * a.inverse()).is_identity()
    with pytest.raises(ValueError):
        Matrix([[1, 2], [2, 4]]).inverse()


def test_permutation_sign():
    assert permutation_sign([0, 1, 2]) == 1
    assert permutation_sign([1, 0, 2]) == -1
    assert permutation_sign([1, 2, 0]) == 1


@settings(max_examples=20, deadline=None)
@given(st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=4, max_size=4))
def test_exterior_power_traces_are_char_poly_coefficients(rows):
    a = Matrix(rows)
    lam = MultiPoly.var("l", ("l",))
    char = det_fraction_free(Matrix([[(lam if i == j else 0) - rows[i][j] for j in range(4)]
                                     for i in range(4)]))
    char = MultiPoly(("l",), {}) + char
    for k in range(5):
        assert exterior_power_trace(a, k) == (-1) ** k * char.coefficient((4 - k,))
    assert compound_matrix(a, 4).rows == ((det_fraction_free(a),),)


# -- products over the roots of the characteristic cubic ------------------------

def _numeric_product(q, u, v):
    roots = np.roots([1, -3 * u, 3 * v, -1])
    return np.prod([np.polyval(list(reversed([float(c) for c in q])), r) for r in roots]).real


def test_product_over_roots_examples():
    u = MultiPoly.var("u", ("u", "v"))
    v = MultiPoly.var("v", ("u", "v"))
    # prod(x) = 1, and prod(x + 1) = -p(-1) for the cubic p
    assert product_over_char_roots([0, 1]) == 1
    assert product_over_char_roots([1, 1]) == 2 + 3 * u + 3 * v
    assert product_over_char_roots([5]) == 125
    assert product_over_char_roots([0]) == 0


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=1, max_size=5),
       st.fractions(-2, 2, max_denominator=3), st.fractions(-2, 2, max_denominator=3))
def test_product_over_roots_matches_numeric_roots(q, u, v):
    exact = float(product_over_char_roots(q).evaluate((u, v)))
    approx = _numeric_product(q, float(u), float(v))
    assert exact == pytest.approx(approx, rel=1e-6, abs=1e-6)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=1, max_size=4),
       st.lists(st.integers(-3, 3), min_size=1, max_size=4))
def test_product_over_roots_is_multiplicative(p, q):
    prod = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            prod[i + j] += a * b
    assert product_over_char_roots(prod) == product_over_char_roots(p) * product_over_char_roots(q)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=1, max_size=5))
def test_product_over_roots_at_one(q):
    # u = v = 1 makes the cubic (lambda - 1)^3
    assert product_over_char_roots(q).evaluate((1, 1)) == sum(q) ** 3

"""Square grids on the annulus: seam determinants, the u,v polynomial and statistics.

The grid has circumference 2m (m odd) and height n.  Vertex (x, y) has id
``y * 2m + x`` and is black iff x + y is even.  A flat connection with
monodromy z around the core is placed on the wrap-around column of
horizontal edges: an edge whose black end is on the west carries z, one
whose white end is on the west carries 1/z, so transport eastward always
multiplies by z.
"""
from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations

from .algebra import LaurentPoly, Matrix, MultiPoly, det_fraction_free, product_over_char_roots
from .connection import Connection
from .surface import BLACK, WHITE, EmbeddedGraph, GraphError, Surface


class AnnulusGrid:
    """The grid graph together with its seam column."""

    def __init__(self, m: int, n: int):
        if m < 1 or m % 2 == 0:
            raise GraphError(f"half-circumference m must be odd and positive, got {m}")
        if n < 1:
            raise GraphError(f"height must be positive, got {n}")
        self.m, self.n = m, n
        width = 2 * m
        self.width = width
        vid = lambda x, y: y * width + x
        vertices = {vid(x, y): BLACK if (x + y) % 2 == 0 else WHITE
                    for y in range(n) for x in range(width)}
        edges = {}
        self.horizontal = {}
        self.vertical = {}
        for y in range(n):
            for x in range(width):
                u, v = vid(x, y), vid((x + 1) % width, y)
                e = len(edges)
                edges[e] = (u, v) if vertices[u] == BLACK else (v, u)
                self.horizontal[(x, y)] = e
        for y in range(n - 1):
            for x in range(width):
                u, v = vid(x, y), vid(x, y + 1)
                e = len(edges)
                edges[e] = (u, v) if vertices[u] == BLACK else (v, u)
                self.vertical[(x, y)] = e
        rotation = {}
        for y in range(n):
            for x in range(width):
                r = [self.horizontal[(x, y)]]                       # east
                if y < n - 1:
                    r.append(self.vertical[(x, y)])                 # north
                r.append(self.horizontal[((x - 1) % width, y)])     # west
                if y > 0:
                    r.append(self.vertical[(x, y - 1)])             # south
                rotation[vid(x, y)] = r
        g = EmbeddedGraph(vertices, edges, rotation, validate=False)
        # bottom face: left of the westward dart along row 0; top: left of eastward on row n-1
        e0 = self.horizontal[(0, 0)]
        west_tail = vid(1, 0)
        bottom = g.face_left((e0, west_tail))
        e1 = self.horizontal[(0, n - 1)]
        top = g.face_left((e1, vid(0, n - 1)))
        self.seam = [self.horizontal[(width - 1, y)] for y in range(n)]
        self.graph = EmbeddedGraph(vertices, edges, rotation,
                                   Surface("annulus", [bottom, top], [self.seam]))
        self.bottom, self.top = bottom, top

    def vertex(self, x, y):
        return y * self.width + x

    def seam_exponent(self, e: int) -> int:
        """+1 if the seam edge carries z (black end west), -1 if it carries 1/z."""
        b, w = self.graph.edges[e]
        west = self.vertex(self.width - 1, self.seam.index(e))
        return 1 if b == west else -1

    def seam_connection(self, matrix: Matrix) -> Connection:
        """Connection with monodromy ``matrix`` eastward around the core."""
        n = matrix.nrows
        eye = Matrix.identity(n)
        inv = matrix.inverse()
        mats = {e: eye for e in self.graph.edges}
        for e in self.seam:
            mats[e] = matrix if self.seam_exponent(e) > 0 else inv
        return Connection(n, mats)


def build_annulus_grid(m: int, n: int) -> AnnulusGrid:
    return AnnulusGrid(m, n)


def raw_det_Kz(m: int, n: int, signs: dict | None = None) -> LaurentPoly:
    """Scalar Kasteleyn determinant with z on the seam, exactly as computed."""
    grid = AnnulusGrid(m, n)
    g = grid.graph
    if signs is None:
        signs = g.kasteleyn_signs()
    wi = {w: i for i, w in enumerate(g.white)}
    bi = {b: i for i, b in enumerate(g.black)}
    size = len(g.white)
    zero = LaurentPoly("z")
    rows = [[zero] * size for _ in range(size)]
    seam = set(grid.seam)
    for e, (b, w) in g.edges.items():
        k = grid.seam_exponent(e) if e in seam else 0
        rows[wi[w]][bi[b]] = rows[wi[w]][bi[b]] + LaurentPoly("z", {k: signs[e]})
    return det_fraction_free(Matrix(rows))


def det_Kz(m: int, n: int) -> LaurentPoly:
    """Seam determinant, made positive at z=1 and centred on exponent 0.

    When the exponent span is odd (n odd) the range is lo..lo+span with
    lo = -(span+1)//2, since no integer shift can centre it.
    """
    d = raw_det_Kz(m, n)
    if d.evaluate(1) < 0:
        d = -d
    lo, hi = d.min_exponent(), d.max_exponent()
    span = hi - lo
    return d.shift(-lo - (span + 1) // 2)


def spectrum(n: int) -> list:
    """alpha_k = -cos(theta_k) + sqrt(1 + cos^2 theta_k), theta_k = pi k / (n+1)."""
    out = []
    for k in range(1, n + 1):
        c = math.cos(math.pi * k / (n + 1))
        out.append(-c + math.sqrt(1 + c * c))
    return out


def closed_form(m: int, n: int, z: float) -> float:
    """Absolute value of the product formula for the seam determinant."""
    if z <= 0:
        raise ValueError("closed form needs z > 0")
    if m % 2 == 0:
        raise ValueError("closed form needs m odd")
    alphas = spectrum(n)
    value = 1.0
    if n % 2:
        value = math.sqrt(z) + 1 / math.sqrt(z)
    for a in alphas[: n // 2]:
        r = a ** (2 * m)
        value *= (z + r) * (z + 1 / r) / z
    return abs(value)


def compare_closed_form(m: int, n: int, z0s=(0.5, 1.0, 2.0)) -> dict:
    """Fit sign and exponent shift t with det_Kz(z) = sign * z^t * closed_form(z).

    t is fitted in (1/2)Z: for odd n the closed form carries sqrt(z).  The
    shift is read off from the z0 values by least squares on log ratios and
    rounded to the nearest half-integer; the report gives the worst relative
    error after that correction.
    """
    d = det_Kz(m, n)
    sign = 1 if d.evaluate(1) > 0 else -1
    ratios = []
    for z0 in (0.5, 2.0):
        exact = float(d.evaluate(Fraction(z0)))
        ratios.append(math.log(abs(exact) / closed_form(m, n, z0)) / math.log(z0))
    t = round(2 * sum(ratios) / len(ratios)) / 2
    worst = 0.0
    rows = []
    for z0 in z0s:
        exact = abs(float(d.evaluate(Fraction(z0))))
        predicted = closed_form(m, n, z0) * z0 ** t
        rel = abs(exact - predicted) / abs(predicted)
        worst = max(worst, rel)
        rows.append((z0, exact, predicted, rel))
    return {"sign": sign, "shift": t, "rel_error": worst, "rows": rows}


def char_poly_coeffs(d: LaurentPoly) -> list:
    """Ascending coefficients of z^(-lo) * d(z)."""
    lo, hi = d.min_exponent(), d.max_exponent()
    return [d.coefficient(k) for k in range(lo, hi + 1)]


def det_uv(m: int, n: int) -> MultiPoly:
    """det K~ for an SL_3 seam monodromy with u = Tr(A)/3, v = Tr(A^-1)/3.

    The product of det K(x) over the eigenvalues x of A is the resultant of
    the characteristic cubic with z^d det K(z); the factor prod x^d is 1.
    """
    return product_over_char_roots(char_poly_coeffs(det_Kz(m, n)))


def pgf(m: int, n: int) -> MultiPoly:
    p = det_uv(m, n)
    total = p.evaluate((1, 1))
    if total == 0:
        raise ValueError("zero partition function")
    return p * Fraction(1, total)


def pgf_table(p: MultiPoly) -> list:
    """Rows (j, k, c_jk) sorted by (j, k)."""
    return sorted((e[0], e[1], c) for e, c in p.terms.items())


def mean_from_pgf(p: MultiPoly):
    return p.diff("u").evaluate((1, 1))


def mean_crossings(m: int, n: int) -> float:
    """Expected number of noncontractible loops of one orientation (n even)."""
    if n % 2:
        raise ValueError("the finite mean formula needs n even")
    total = 0.0
    for a in spectrum(n)[: n // 2]:
        r = a ** (2 * m)
        total += 3 * r / (1 + r) ** 2
    return total


def asymptotic_mean(tau: float, terms: int = 50) -> float:
    """sum_{l < terms} 3 q^(2l+1) / (1 + q^(2l+1))^2 with q = exp(-pi tau)."""
    if tau <= 0 or terms < 1:
        raise ValueError("need tau > 0 and terms >= 1")
    q = math.exp(-math.pi * tau)
    return sum(3 * q ** (2 * l + 1) / (1 + q ** (2 * l + 1)) ** 2 for l in range(terms))


def asymptotic_tail_bound(tau: float, terms: int) -> float:
    """First omitted term of the asymptotic series."""
    q = math.exp(-math.pi * tau)
    x = q ** (2 * terms + 1)
    return 3 * x / (1 + x) ** 2


def crossing_exponent(j: int, k: int) -> int:
    """ceil(2 (j^2 + jk + k^2) / 3)."""
    return -(-2 * (j * j + j * k + k * k) // 3)


def crossing_exponent_oracle(j: int, k: int) -> int:
    """Direct minimization over sets of odd integers.

    Choose disjoint L1, M1 and disjoint L2, M2 of odd positive integers with
    |L1| + |L2| = j and |M1| + |M2| = k, minimizing
    sum L1 + 2 sum L2 + 2 sum M1 + sum M2.
    """
    odds = list(range(1, 2 * (j + k) + 1, 2))
    # best cost of one factor family: disjoint (P, R) with |P| = a, |R| = b and
    # cost cp * sum P + cr * sum R, tabulated for all a, b
    def family(cp, cr):
        best = {}
        for a in range(j + 1):
            for b in range(k + 1):
                if a + b > len(odds):
                    continue
                val = None
                for P in combinations(odds, a):
                    rest = [x for x in odds if x not in P]
                    sp = cp * sum(P)
                    cost = sp + cr * sum(rest[:b])
                    if val is None or cost < val:
                        val = cost
                best[(a, b)] = val
        return best

    first = family(1, 2)   # L1 (u at cost x), M1 (v at cost 2x)
    second = family(2, 1)  # L2 (u at cost 2x), M2 (v at cost x)
    best = None
    for l1 in range(j + 1):
        for m1 in range(k + 1):
            a, b = first.get((l1, m1)), second.get((j - l1, k - m1))
            if a is None or b is None:
                continue
            if best is None or a + b < best:
                best = a + b
    return best


def leading_exponents(m: int, n: int, pairs) -> dict:
    """Estimated small-q exponent of c_jk / 3^(j+k), with q = alpha_{n/2}^(2m)."""
    p = pgf(m, n)
    q = spectrum(n)[n // 2 - 1] ** (2 * m)
    out = {}
    for j, k in pairs:
        c = p.coefficient((j, k))
        if c == 0:
            out[(j, k)] = None
            continue
        out[(j, k)] = math.log(float(c) / 3 ** (j + k)) / math.log(q)
    return out


def uv_of_matrix(a: Matrix):
    """(u, v) = (Tr A / 3, Tr A^{-1} / 3)."""
    return Fraction(a.trace()) / 3, Fraction(a.inverse().trace()) / 3

"""Matrix-valued connections on bipartite graphs.

A connection assigns to each edge ``e = bw`` the parallel transport
``phi_e`` from the black endpoint to the white one.  Only that direction is
stored; transport from white to black uses the inverse when it is needed.
"""
from __future__ import annotations

import random
from fractions import Fraction

from .algebra import Matrix, det_fraction_free
from .surface import BLACK, EmbeddedGraph


class Connection:
    """Rank-``n`` connection: edge id -> n x n :class:`Matrix` (black to white)."""

    def __init__(self, n: int, matrices: dict):
        self.n = int(n)
        self.matrices = {}
        for e, m in matrices.items():
            if not isinstance(m, Matrix):
                m = Matrix(m)
            if m.shape != (self.n, self.n):
                raise ValueError(f"edge {e}: expected {self.n}x{self.n} matrix, got {m.shape}")
            self.matrices[int(e)] = m
        self._inverses = {}

    def __getitem__(self, e: int) -> Matrix:
        return self.matrices[e]

    def __contains__(self, e):
        return e in self.matrices

    def inverse(self, e: int) -> Matrix:
        if e not in self._inverses:
            try:
                self._inverses[e] = self.matrices[e].inverse()
            except ValueError:
                raise ValueError(f"edge {e}: connection matrix is singular") from None
        return self._inverses[e]

    def transport(self, e: int, tail_color: str) -> Matrix:
        """Parallel transport along ``e`` leaving a vertex of the given color."""
        return self.matrices[e] if tail_color == BLACK else self.inverse(e)

    def __eq__(self, other):
        return (isinstance(other, Connection) and self.n == other.n
                and self.matrices == other.matrices)

    def __repr__(self):
        return f"Connection(n={self.n}, edges={sorted(self.matrices)})"

    def restricted(self, edges) -> "Connection":
        return Connection(self.n, {e: self.matrices[e] for e in edges})


def identity_connection(g: EmbeddedGraph, n: int) -> Connection:
    eye = Matrix.identity(n)
    return Connection(n, {e: eye for e in g.edges})


def random_unimodular(n: int, rng: random.Random) -> Matrix:
    """Product of 3 to 6 shears I + c E_ij with small rational c."""
    m = Matrix.identity(n)
    if n == 1:
        return m
    for _ in range(rng.randint(3, 6)):
        i, j = rng.sample(range(n), 2)
        p = rng.choice([-3, -2, -1, 1, 2, 3])
        q = rng.choice([1, 2, 3])
        rows = [list(r) for r in Matrix.identity(n).rows]
        rows[i][j] = Fraction(p, q)
        m = Matrix(rows) * m
    return m


def random_sl(g: EmbeddedGraph, n: int, seed: int) -> Connection:
    """Seeded random SL_n connection built from elementary shears."""
    rng = random.Random(seed)
    return Connection(n, {e: random_unimodular(n, rng) for e in sorted(g.edges)})


def random_gauge(g: EmbeddedGraph, n: int, seed: int) -> dict:
    rng = random.Random(seed)
    return {v: random_unimodular(n, rng) for v in sorted(g.vertices)}


def gauge_transform(c: Connection, g: EmbeddedGraph, gauge: dict) -> Connection:
    """Edge bw carries A_w^{-1} phi_bw A_b afterwards."""
    inv = {}
    for v, a in gauge.items():
        if a.shape != (c.n, c.n):
            raise ValueError(f"gauge at vertex {v} has wrong size")
        try:
            inv[v] = a.inverse()
        except ValueError:
            raise ValueError(f"gauge matrix at vertex {v} is singular") from None
    eye = Matrix.identity(c.n)
    out = {}
    for e, phi in c.matrices.items():
        b, w = g.edges[e]
        out[e] = inv.get(w, eye) * phi * gauge.get(b, eye)
    return Connection(c.n, out)


def monodromy(c: Connection, g: EmbeddedGraph, start: int, edges) -> Matrix:
    """Ordered product of transports along the closed walk from ``start``.

    Walking e_1 then e_2 ... gives phi_k ... phi_1, with inverses on steps
    taken from a white vertex to a black one.
    """
    m = Matrix.identity(c.n)
    v = start
    for e in edges:
        m = c.transport(e, g.vertices[v]) * m
        v = g.other_end(e, v)
    if v != start:
        raise ValueError("walk is not closed")
    return m


def face_monodromy(c: Connection, g: EmbeddedGraph, face) -> Matrix:
    darts = face.darts
    start = darts[0][1]
    return monodromy(c, g, start, [e for e, _ in darts])


def is_flat(c: Connection, g: EmbeddedGraph) -> bool:
    """True iff the monodromy around every non-punctured face is the identity."""
    return all(face_monodromy(c, g, f).is_identity() for f in g.contractible_faces())


def determinant_one(c: Connection) -> bool:
    return all(det_fraction_free(m) == 1 for m in c.matrices.values())

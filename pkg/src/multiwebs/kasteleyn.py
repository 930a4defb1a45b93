"""Block Kasteleyn matrices and the determinant/trace identity.

``K~`` has an n x n block for each (white, black) pair: the sum of
eps_e * phi_e over the edges joining them.  Up to a global sign its
determinant is the sum of the web-traces of all n-multiwebs (with positive
cilia when n is even).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import partial

from .algebra import Matrix, MultiPoly, det_fraction_free, exterior_power_trace, is_zero
from .connection import Connection, identity_connection, monodromy
from .multiweb import Multiweb, check_multiweb, enumerate_multiwebs, trace
from .surface import EmbeddedGraph, GraphError


@dataclass
class KasteleynBlockMatrix:
    n: int
    white: list
    black: list
    matrix: Matrix

    def block(self, w, b) -> Matrix:
        i, j = self.white.index(w), self.black.index(b)
        n = self.n
        return Matrix([r[j * n:(j + 1) * n] for r in self.matrix.rows[i * n:(i + 1) * n]])


def assemble(g: EmbeddedGraph, c: Connection, signs: dict) -> KasteleynBlockMatrix:
    if not g.is_balanced():
        raise GraphError("graph is not balanced")
    n = c.n
    wi = {w: i for i, w in enumerate(g.white)}
    bi = {b: i for i, b in enumerate(g.black)}
    size = n * len(g.white)
    rows = [[0] * size for _ in range(size)]
    for e in sorted(g.edges):
        if e not in signs:
            raise GraphError(f"no Kasteleyn sign for edge {e}")
        b, w = g.edges[e]
        phi = c[e]
        r0, c0 = wi[w] * n, bi[b] * n
        for i in range(n):
            for j in range(n):
                x = phi[i, j]
                if not is_zero(x):
                    rows[r0 + i][c0 + j] = rows[r0 + i][c0 + j] + (x if signs[e] > 0 else -x)
    return KasteleynBlockMatrix(n, list(g.white), list(g.black), Matrix(rows))


def det_tilde(g: EmbeddedGraph, c: Connection, signs: dict | None = None):
    if signs is None:
        signs = g.kasteleyn_signs()
    return det_fraction_free(assemble(g, c, signs).matrix)


def default_cilia(g: EmbeddedGraph) -> dict:
    """Positive cilia from the first perfect matching, or index 0 if none exists."""
    m = next(g.perfect_matchings(), None)
    return g.positive_cilia(m) if m is not None else g.default_cilia()


def sign_normalization(g: EmbeddedGraph, n: int, signs: dict | None = None) -> int:
    """The s with s * det K~ = trace sum, fixed by the identity connection.

    det K~(I) = det(K)^n, so s = +1 for n even and s = sign det K for n odd.
    Returns +1 when the graph has no perfect matching.
    """
    if n % 2 == 0:
        return 1
    if signs is None:
        signs = g.kasteleyn_signs()
    d = det_tilde(g, identity_connection(g, 1), signs)
    return -1 if d < 0 else 1


def trace_sum(g: EmbeddedGraph, n: int, c: Connection, cilia: dict | None = None,
              executor=None):
    if cilia is None:
        cilia = default_cilia(g)
    webs = list(enumerate_multiwebs(g, n))
    job = partial(_trace_one, g, c, cilia)
    if executor is None:
        values = [job(m) for m in webs]
    else:
        values = list(executor.map(job, webs, chunksize=max(1, len(webs) // 64)))
    return sum(values, 0)


def _trace_one(g, c, cilia, m):
    return trace(g, m, c, cilia)


@dataclass
class VerifyReport:
    det: object
    trace_sum: object
    sign: int
    match: bool

    def as_dict(self):
        return {"det": self.det, "trace_sum": self.trace_sum,
                "sign": self.sign, "match": self.match}


def verify_main(g: EmbeddedGraph, n: int, c: Connection | None = None,
                cilia: dict | None = None, signs: dict | None = None,
                executor=None) -> VerifyReport:
    """Compare s * det K~ with the sum of traces over all n-multiwebs."""
    if c is None:
        c = identity_connection(g, n)
    if c.n != n:
        raise ValueError(f"connection rank {c.n} does not match n={n}")
    if signs is None:
        signs = g.kasteleyn_signs()
    if cilia is None:
        cilia = default_cilia(g)
    det = det_tilde(g, c, signs)
    total = trace_sum(g, n, c, cilia, executor)
    s = sign_normalization(g, n, signs)
    return VerifyReport(det, total, s, s * det == total)


def edge_variable_name(e: int) -> str:
    return f"x{e}"


def trace_via_det(g: EmbeddedGraph, m: Multiweb, c: Connection,
                  keep_others: bool = False, signs: dict | None = None):
    """Trace of m as a coefficient of det K~ with a variable on each support edge.

    Non-support edges are dropped (``keep_others=False``) or kept with
    weight 1; the extracted coefficient is the same either way because the
    monomial prod x_e^{m_e} already has full degree nN.
    """
    check_multiweb(g, m)
    if signs is None:
        signs = g.kasteleyn_signs()
    support = m.support()
    names = tuple(edge_variable_name(e) for e in support)
    mats = {}
    for e in g.edges:
        if e in support:
            x = MultiPoly.var(edge_variable_name(e), names)
            mats[e] = c[e].map(lambda a, x=x: x * a)
        elif keep_others:
            mats[e] = c[e].map(lambda a: MultiPoly.const(a, names))
        else:
            mats[e] = c[e].map(lambda a: MultiPoly.const(0, names))
    det = det_tilde(g, Connection(c.n, mats), signs)
    if not isinstance(det, MultiPoly):
        det = MultiPoly.const(det, names)
    s = sign_normalization(g, c.n, signs)
    return s * det.coefficient([m[e] for e in support])


# ---------------------------------------------------------------------------
# loop formulas

def chain_loops(g: EmbeddedGraph, m: Multiweb, mults=None) -> list:
    """Closed walks through the edges of m whose multiplicity lies in ``mults``.

    Only meaningful when every vertex meets exactly two such edges (double
    dimers, or closed chains).  Each loop is (start black vertex, edge list)
    beginning with its smallest edge leaving a black vertex.
    """
    if mults is None:
        mults = {1}
    edges = {e for e in m.support() if m[e] in mults}
    at = {}
    for e in edges:
        for v in g.edges[e]:
            at.setdefault(v, []).append(e)
    if any(len(x) != 2 for x in at.values()):
        raise ValueError("edges do not form disjoint closed loops")
    loops = []
    done = set()
    for e0 in sorted(edges):
        if e0 in done:
            continue
        v = g.edges[e0][0]
        start = v
        walk = []
        e = e0
        while True:
            walk.append(e)
            done.add(e)
            v = g.other_end(e, v)
            a, b = at[v]
            e = b if a == e else a
            if v == start:
                break
        loops.append((start, walk))
    return loops


def double_dimer_trace(g: EmbeddedGraph, m: Multiweb, c: Connection):
    """Product of monodromy traces over loops times det phi on doubled edges (n=2)."""
    if m.n != 2:
        raise ValueError("double-dimer formula needs n = 2")
    value = 1
    for e in m.support():
        if m[e] == 2:
            value = value * det_fraction_free(c[e])
    for start, walk in chain_loops(g, m, {1}):
        value = value * monodromy(c, g, start, walk).trace()
    return value


def closed_chain_trace(g: EmbeddedGraph, m: Multiweb, c: Connection):
    """Tr(wedge^k M) for a single closed chain, k the multiplicity leaving black.

    The chain is walked from its smallest black vertex along the edge of
    smaller id among its two chain edges.
    """
    loops = chain_loops(g, m, set(range(1, m.n)))
    if len(loops) != 1:
        raise ValueError("multiweb is not a single closed chain")
    start, walk = loops[0]
    k = m[walk[0]]
    return exterior_power_trace(monodromy(c, g, start, walk), k)

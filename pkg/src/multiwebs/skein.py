"""SL_3 skein moves on 3-multiwebs and reduction on the annulus.

For a 3-multiweb the edges of multiplicity 1 and 2 form a web ``H``: a
vertex meeting three single edges is trivalent, a vertex meeting a single
and a double edge sits inside a chain.  Moves act on faces of a connected
component of ``H`` whose region contains no hole of the surface:

* loop: a contractible closed chain is removed (doubles become triples,
  singles disappear) with coefficient 3;
* bigon / square: a face with 2 or 4 trivalent corners is removed by
  adding +1, -1, +1, ... to the multiplicities around its boundary, in both
  of the two possible ways, each with coefficient 1.

What is left on the annulus is a union of noncontractible closed chains,
classified by the direction in which their single edges (read black to
white) wind around the core.
"""
from __future__ import annotations

import random
from collections import Counter, deque
from dataclasses import dataclass
from fractions import Fraction

from .algebra import Matrix, MultiPoly
from .connection import Connection, identity_connection, is_flat
from .kasteleyn import det_tilde, sign_normalization
from .multiweb import Multiweb, check_multiweb
from .surface import EmbeddedGraph, GraphError


class ReductionError(RuntimeError):
    """No move applies to a multiweb that is not yet reduced."""


class UnsupportedSurface(ValueError):
    """The requested computation is not available on this surface."""


@dataclass(frozen=True)
class SkeinTerm:
    coefficient: int
    multiweb: Multiweb


@dataclass(frozen=True)
class Chain:
    edges: tuple
    vertices: tuple
    closed: bool
    contractible: bool | None = None


@dataclass(frozen=True)
class WebFace:
    """A face of one component of the web, with its boundary darts."""
    darts: tuple
    component: int
    corners: int        # number of trivalent vertices on the boundary
    hole_free: bool
    simple: bool

    @property
    def edges(self):
        return tuple(e for e, _ in self.darts)


def _check_rank3(m: Multiweb):
    if m.n != 3:
        raise ValueError("skein moves are implemented for 3-multiwebs only")


class WebStructure:
    """The web of a 3-multiweb: its rotation system, components and faces."""

    def __init__(self, g: EmbeddedGraph, m: Multiweb):
        _check_rank3(m)
        self.g, self.m = g, m
        self.edges = [e for e in m.support() if m[e] in (1, 2)]
        es = set(self.edges)
        self.rotation = {v: [e for e in g.rotation[v] if e in es] for v in g.vertices}
        self.trivalent = sorted(v for v, r in self.rotation.items()
                                if len(r) == 3 and all(m[e] == 1 for e in r))
        self._trivalent = set(self.trivalent)
        # components of H
        comp = {}
        for v in sorted(g.vertices):
            if v in comp or not self.rotation[v]:
                continue
            idx = len(set(comp.values()))
            comp[v] = idx
            q = [v]
            while q:
                x = q.pop()
                for e in self.rotation[x]:
                    y = g.other_end(e, x)
                    if y not in comp:
                        comp[y] = idx
                        q.append(y)
        self.component_of = comp
        self.component_edges = {}
        for e in self.edges:
            self.component_edges.setdefault(comp[g.edges[e][0]], set()).add(e)
        self._faces = None

    def next_dart(self, dart):
        e, tail = dart
        v = self.g.other_end(e, tail)
        r = self.rotation[v]
        return (r[(r.index(e) - 1) % len(r)], v)

    def _region_has_hole(self, darts, comp: int) -> bool:
        """Flood the faces of G on the left of ``darts`` without crossing the component."""
        g = self.g
        holes = set(g.surface.punctured_faces)
        if not holes:
            return False
        blocked = self.component_edges[comp]
        start = {g.face_left(d) for d in darts}
        seen = set(start)
        q = deque(start)
        faces = g.faces()
        while q:
            f = q.popleft()
            if f in holes:
                return True
            for e, tail in faces[f].darts:
                if e in blocked:
                    continue
                o = g.face_left(g.reverse((e, tail)))
                if o not in seen:
                    seen.add(o)
                    q.append(o)
        return False

    def faces(self) -> list:
        if self._faces is None:
            seen = set()
            out = []
            for e in self.edges:
                b, w = self.g.edges[e]
                for d in ((e, b), (e, w)):
                    if d in seen:
                        continue
                    cyc = []
                    x = d
                    while x not in seen:
                        seen.add(x)
                        cyc.append(x)
                        x = self.next_dart(x)
                    comp = self.component_of[d[1]]
                    corners = sum(1 for x in cyc if self.g.other_end(*x) in self._trivalent)
                    es = [x[0] for x in cyc]
                    vs = [x[1] for x in cyc]
                    simple = len(set(es)) == len(es) and len(set(vs)) == len(vs)
                    out.append(WebFace(tuple(cyc), comp, corners,
                                       not self._region_has_hole(cyc, comp), simple))
            self._faces = out
        return self._faces

    def closed_chain_components(self) -> list:
        """Components without trivalent vertices (cycles of alternating 1,2 edges)."""
        tri_comps = {self.component_of[v] for v in self.trivalent}
        return sorted(c for c in self.component_edges if c not in tri_comps)

    def chain_walk(self, comp: int) -> list:
        """Darts of a closed chain, following single edges from black to white."""
        g = self.g
        es = self.component_edges[comp]
        e0 = min(e for e in es if self.m[e] == 1)
        start = g.edges[e0][0]
        darts = []
        e, v = e0, start
        while True:
            darts.append((e, v))
            v = g.other_end(e, v)
            a, b = self.rotation[v]
            e = b if a == e else a
            if v == start:
                break
        return darts


def find_chains(g: EmbeddedGraph, m: Multiweb) -> dict:
    """Trivalent vertices and the maximal chains of the web of ``m``.

    Open chains run between trivalent vertices; closed chains are flagged
    with their contractibility (None when the surface carries no seams).
    """
    ws = WebStructure(g, m)
    chains = []
    used = set()
    for t in ws.trivalent:
        for e0 in ws.rotation[t]:
            if e0 in used:
                continue
            edges, verts = [], [t]
            e, v = e0, t
            while True:
                edges.append(e)
                used.add(e)
                v = g.other_end(e, v)
                verts.append(v)
                if v in ws._trivalent:
                    break
                a, b = ws.rotation[v]
                e = b if a == e else a
            chains.append(Chain(tuple(edges), tuple(verts), False))
    for comp in ws.closed_chain_components():
        darts = ws.chain_walk(comp)
        try:
            contractible = g.is_contractible(darts)
        except GraphError:
            contractible = None
        chains.append(Chain(tuple(e for e, _ in darts), tuple(v for _, v in darts),
                            True, contractible))
    return {"trivalent": ws.trivalent, "chains": chains}


# ---------------------------------------------------------------------------
# moves

def apply_loop_move(g: EmbeddedGraph, m: Multiweb, chain) -> SkeinTerm:
    """Remove a contractible closed chain: coefficient 3."""
    edges = chain.edges if isinstance(chain, Chain) else tuple(chain)
    if isinstance(chain, Chain):
        if not chain.closed:
            raise ValueError("loop move needs a closed chain")
        if chain.contractible is False:
            raise ValueError("loop move needs a contractible chain")
    ws = WebStructure(g, m)
    comps = {ws.component_of[g.edges[e][0]] for e in edges}
    if len(comps) != 1:
        raise ValueError("edges do not form one closed chain")
    comp = comps.pop()
    if comp not in ws.closed_chain_components() or set(edges) != ws.component_edges[comp]:
        raise ValueError("edges do not form one closed chain")
    if not any(f.hole_free for f in ws.faces() if f.component == comp):
        raise ValueError("closed chain is not contractible")
    return SkeinTerm(3, m.updated({e: (1 if m[e] == 2 else -1) for e in edges}))


def _alternating_terms(m: Multiweb, face: WebFace):
    edges = face.edges
    plus = {e: (1 if i % 2 == 0 else -1) for i, e in enumerate(edges)}
    minus = {e: -d for e, d in plus.items()}
    return [SkeinTerm(1, m.updated(plus)), SkeinTerm(1, m.updated(minus))]


def _check_face(face: WebFace, corners: int):
    if face.corners != corners:
        raise ValueError(f"face has {face.corners} trivalent corners, expected {corners}")
    if not face.simple:
        raise ValueError("face boundary is not a simple cycle")
    if not face.hole_free:
        raise ValueError("face region contains a hole; move not allowed")


def apply_bigon_move(m: Multiweb, bigon: WebFace) -> list:
    _check_face(bigon, 2)
    return _alternating_terms(m, bigon)


def apply_square_move(m: Multiweb, square: WebFace) -> list:
    _check_face(square, 4)
    return _alternating_terms(m, square)


def find_moves(g: EmbeddedGraph, m: Multiweb) -> list:
    """All applicable moves as (kind, key, payload), in the canonical order."""
    ws = WebStructure(g, m)
    moves = []
    faces = ws.faces()
    for comp in ws.closed_chain_components():
        if any(f.hole_free for f in faces if f.component == comp):
            edges = tuple(e for e, _ in ws.chain_walk(comp))
            moves.append(("loop", min(edges), edges))
    bigons, squares = [], []
    for f in faces:
        if not (f.hole_free and f.simple):
            continue
        if f.corners == 2:
            bigons.append(("bigon", min(f.edges), f))
        elif f.corners == 4:
            squares.append(("square", min(f.edges), f))
    moves.sort(key=lambda t: t[1])
    bigons.sort(key=lambda t: (t[1], t[2].darts))
    squares.sort(key=lambda t: (t[1], t[2].darts))
    return moves + bigons + squares


def apply_move(g: EmbeddedGraph, m: Multiweb, move) -> list:
    kind, _, payload = move
    if kind == "loop":
        return [apply_loop_move(g, m, payload)]
    if kind == "bigon":
        return apply_bigon_move(m, payload)
    return apply_square_move(m, payload)


def complexity(g: EmbeddedGraph, m: Multiweb):
    """(number of trivalent vertices, number of single edges)."""
    ws = WebStructure(g, m)
    return (len(ws.trivalent), sum(1 for e in m.support() if m[e] == 1))


def loop_class(g: EmbeddedGraph, m: Multiweb) -> tuple:
    """(j, k) for a reduced multiweb: loops winding +1 and -1 around the core."""
    ws = WebStructure(g, m)
    if ws.trivalent:
        raise ReductionError(f"{m} has trivalent vertices but no applicable move")
    j = k = 0
    for comp in ws.closed_chain_components():
        darts = ws.chain_walk(comp)
        if g.surface.kind in ("plane", "disk"):
            raise ReductionError(f"contractible loop left in {m}")
        w = g.windings(darts)[0]
        if w == 1:
            j += 1
        elif w == -1:
            k += 1
        else:
            raise ReductionError(f"loop with winding {w} left in {m}")
    return (j, k)


def reduce_multiweb(g: EmbeddedGraph, m: Multiweb, rng: random.Random | None = None,
                    check_decrease: bool = True) -> Counter:
    """Reduce m to loop classes; returns Counter (j, k) -> positive integer.

    Moves are taken in canonical order (loops, bigons, squares, by smallest
    edge id) unless ``rng`` is given, in which case a random applicable move
    is used at every step.
    """
    if g.surface.kind not in ("plane", "disk", "annulus"):
        raise UnsupportedSurface(f"reduction is not supported on the {g.surface.kind}")
    if g.surface.kind == "annulus" and not g.surface.seams:
        raise UnsupportedSurface("annulus without seam data")
    check_multiweb(g, m)
    _check_rank3(m)
    terms = Counter({m: 1})
    result = Counter()
    while terms:
        cur = min(terms)
        coef = terms.pop(cur)
        moves = find_moves(g, cur)
        if not moves:
            result[loop_class(g, cur)] += coef
            continue
        move = rng.choice(moves) if rng is not None else moves[0]
        before = complexity(g, cur) if check_decrease else None
        for t in apply_move(g, cur, move):
            if check_decrease:
                after = complexity(g, t.multiweb)
                if not after < before:
                    raise ReductionError(
                        f"move {move[0]} did not decrease complexity: {before} -> {after}")
            terms[t.multiweb] += coef * t.coefficient
    return result


def reduce_annulus(g: EmbeddedGraph, m: Multiweb, rng=None) -> Counter:
    if g.surface.kind != "annulus":
        raise UnsupportedSurface(f"expected an annulus, got {g.surface.kind}")
    return reduce_multiweb(g, m, rng)


def reduction_polynomial(result: Counter) -> MultiPoly:
    """sum C_jk (3u)^j (3v)^k: the trace for seam monodromy with u=Tr A/3, v=Tr A^-1/3."""
    terms = {}
    for (j, k), c in result.items():
        terms[(j, k)] = terms.get((j, k), 0) + c * 3 ** (j + k)
    return MultiPoly(("u", "v"), terms)


# ---------------------------------------------------------------------------
# pair of pants

def pants_matrices(a) -> tuple:
    """The unipotent pair A(a), B(a) with Tr(AB) = 3 - a^2."""
    A = Matrix([[1, a, 1], [0, 1, 1], [0, 0, 1]])
    B = Matrix([[1, 0, 0], [1, 1, 0], [-a, -a * a, 1]])
    return A, B


def seam_connection(g: EmbeddedGraph, monodromies) -> Connection:
    """Flat connection whose transport across seam i is ``monodromies[i]``.

    An edge crossed by seam i with crossing sign s carries M_i^s.  Edges
    crossed by several seams get the product in seam order.
    """
    n = monodromies[0].nrows
    eye = Matrix.identity(n)
    mats = {e: eye for e in g.edges}
    for M, signs in zip(monodromies, g.seam_signs()):
        inv = M.inverse()
        for e, s in signs.items():
            for _ in range(abs(s)):
                mats[e] = (M if s > 0 else inv) * mats[e]
    return Connection(n, mats)


def _interpolate(points) -> list:
    """Coefficients (ascending) of the polynomial through the given (x, y) points."""
    xs = [Fraction(x) for x, _ in points]
    coeffs = [Fraction(0)] * len(points)
    for i, (xi, yi) in enumerate(points):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xj * basis[k + 1]
            denom *= Fraction(xi) - xj
        for k, b in enumerate(basis):
            coeffs[k] += Fraction(yi) * b / denom
    return coeffs


@dataclass
class PantsResult:
    Z0: int
    Z1: int
    Z3d: int
    coefficients: list     # det K~ as a polynomial in a, sign-normalized
    orientation: int

    @property
    def check(self) -> bool:
        return self.Z0 + 6 * self.Z1 == self.Z3d


def pants_Z1(g: EmbeddedGraph) -> PantsResult:
    """Extract Z0, Z1 with det K~ = Z0 + Z1 (6 + a^2) for the pants connection.

    det K~ is evaluated exactly at a = -2..2 and interpolated; the value at
    a = 3 is used to confirm the degree bound.  Odd powers of a must vanish;
    if they do not for (A, B^-1) on the two seams, the opposite orientation
    (A^-1, B) is tried.
    """
    if g.surface.kind != "pants":
        raise UnsupportedSurface(f"expected a pants surface, got {g.surface.kind}")
    if len(g.surface.seams) != 2:
        raise UnsupportedSurface("pants surface needs two seams")
    signs = g.kasteleyn_signs()
    s = sign_normalization(g, 3, signs)
    z3d = s * det_tilde(g, identity_connection(g, 3), signs)
    last_error = None
    for orientation in (1, -1):
        values = []
        for a in (-2, -1, 0, 1, 2, 3):
            A, B = pants_matrices(a)
            mons = [A, B.inverse()] if orientation > 0 else [A.inverse(), B]
            c = seam_connection(g, mons)
            if not is_flat(c, g):
                raise GraphError("seam connection is not flat; seams cross a contractible face badly")
            values.append((a, s * det_tilde(g, c, signs)))
        coeffs = _interpolate(values[:5])
        predicted = sum(cf * 3 ** k for k, cf in enumerate(coeffs))
        if predicted != values[5][1]:
            last_error = "determinant has degree > 4 in a"
            continue
        if coeffs[1] != 0 or coeffs[3] != 0:
            last_error = f"odd powers of a do not vanish: {coeffs}"
            continue
        if coeffs[4] != 0:
            raise ValueError(f"a^4 term present ({coeffs[4]}): more than one theta web")
        if any(cf.denominator != 1 for cf in coeffs):
            raise ValueError(f"non-integer coefficients {coeffs}")
        z1 = int(coeffs[2])
        z0 = int(coeffs[0]) - 6 * z1
        return PantsResult(z0, z1, int(z3d), [int(x) for x in coeffs], orientation)
    raise ValueError(last_error)

"""Small embedded bipartite graphs used by the tests, demos and the CLI.

Planar graphs are given by vertex coordinates and straight edges; the
rotation at each vertex is the counterclockwise order of edge directions.
Parallel edges are drawn as thin lenses, so their angular offsets have
opposite signs at the two ends.
"""
from __future__ import annotations

import math
from collections import deque
from itertools import product

from .surface import BLACK, WHITE, EmbeddedGraph, GraphError, Surface

_LENS = 0.08


def planar_graph(coords: dict, colors: dict, edge_list, surface: Surface | None = None):
    """Build an embedded graph from coordinates.

    ``edge_list`` holds (u, v) pairs in either color order; repeated pairs
    become parallel edges.  Edge ids follow the list order.
    """
    edges = {}
    angles = {v: [] for v in coords}
    seen = {}
    for pair in edge_list:
        key = tuple(sorted(pair))
        seen.setdefault(key, []).append(len(edges))
        u, v = pair
        b, w = (u, v) if colors[u] == BLACK else (v, u)
        if colors[b] != BLACK or colors[w] != WHITE:
            raise GraphError(f"edge {pair} does not join a black and a white vertex")
        edges[len(edges)] = (b, w)
    for key, ids in seen.items():
        k = len(ids)
        for t, e in enumerate(ids):
            b, w = edges[e]
            off = (t - (k - 1) / 2) * _LENS
            (xb, yb), (xw, yw) = coords[b], coords[w]
            theta = math.atan2(yw - yb, xw - xb)
            angles[b].append(((theta + off) % (2 * math.pi), e))
            angles[w].append(((theta + math.pi - off) % (2 * math.pi), e))
    rotation = {v: [e for _, e in sorted(a)] for v, a in angles.items()}
    return EmbeddedGraph(colors, edges, rotation, surface)


def _bipartite_colors(coords, parity):
    return {v: BLACK if parity(v) == 0 else WHITE for v in coords}


def cycle(length: int) -> EmbeddedGraph:
    """Even cycle on ``length`` vertices; vertex i is black iff i is even."""
    if length < 2 or length % 2:
        raise ValueError("cycle length must be even and at least 2")
    if length == 2:
        return theta(2)
    coords = {i: (math.cos(2 * math.pi * i / length), math.sin(2 * math.pi * i / length))
              for i in range(length)}
    colors = {i: BLACK if i % 2 == 0 else WHITE for i in range(length)}
    return planar_graph(coords, colors, [(i, (i + 1) % length) for i in range(length)])


def theta(k: int = 3) -> EmbeddedGraph:
    """One black and one white vertex joined by ``k`` parallel edges."""
    return planar_graph({0: (0.0, 0.0), 1: (1.0, 0.0)}, {0: BLACK, 1: WHITE}, [(0, 1)] * k)


def theta_chain(mults) -> EmbeddedGraph:
    """Path b0 - w0 - b1 - ... whose i-th link has ``mults[i]`` parallel edges."""
    nv = len(mults) + 1
    if nv % 2:
        raise ValueError("a balanced chain needs an odd number of links")
    coords = {i: (float(i), 0.0) for i in range(nv)}
    colors = {i: BLACK if i % 2 == 0 else WHITE for i in range(nv)}
    el = [(i, i + 1) for i, k in enumerate(mults) for _ in range(k)]
    return planar_graph(coords, colors, el)


def multi_cycle(mults) -> EmbeddedGraph:
    """Even cycle whose i-th side has ``mults[i]`` parallel edges."""
    length = len(mults)
    coords = {i: (math.cos(2 * math.pi * i / length), math.sin(2 * math.pi * i / length))
              for i in range(length)}
    colors = {i: BLACK if i % 2 == 0 else WHITE for i in range(length)}
    el = [(i, (i + 1) % length) for i, k in enumerate(mults) for _ in range(k)]
    return planar_graph(coords, colors, el)


def grid(rows: int, cols: int, remove_vertices=(), remove_edges=(), double_edges=()):
    """Rectangular grid; vertex (r, c) has id r*cols + c and is black iff r+c is even.

    ``remove_edges`` and ``double_edges`` hold vertex-id pairs.
    """
    coords = {}
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if v not in remove_vertices:
                coords[v] = (float(c), float(r))
    colors = {v: BLACK if (v // cols + v % cols) % 2 == 0 else WHITE for v in coords}
    removed = {tuple(sorted(p)) for p in remove_edges}
    el = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            for u in ([v + 1] if c + 1 < cols else []) + ([v + cols] if r + 1 < rows else []):
                if v in coords and u in coords and (v, u) not in removed:
                    el.append((v, u))
                    if (v, u) in {tuple(sorted(p)) for p in double_edges}:
                        el.append((v, u))
    return planar_graph(coords, colors, el)


def cube() -> EmbeddedGraph:
    """The 3-cube drawn as two nested squares."""
    coords = {0: (-1, -1), 1: (1, -1), 2: (1, 1), 3: (-1, 1),
              4: (-2, -2), 5: (2, -2), 6: (2, 2), 7: (-2, 2)}
    colors = {0: BLACK, 1: WHITE, 2: BLACK, 3: WHITE,
              4: WHITE, 5: BLACK, 6: WHITE, 7: BLACK}
    el = [(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 7), (7, 4),
          (0, 4), (1, 5), (2, 6), (3, 7)]
    return planar_graph(coords, colors, el)


def cube_minus_edge() -> EmbeddedGraph:
    coords = {0: (-1, -1), 1: (1, -1), 2: (1, 1), 3: (-1, 1),
              4: (-2, -2), 5: (2, -2), 6: (2, 2), 7: (-2, 2)}
    colors = {0: BLACK, 1: WHITE, 2: BLACK, 3: WHITE,
              4: WHITE, 5: BLACK, 6: WHITE, 7: BLACK}
    el = [(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 7), (7, 4),
          (0, 4), (1, 5), (2, 6)]
    return planar_graph(coords, colors, el)


def two_hexagons() -> EmbeddedGraph:
    """Two hexagonal faces sharing one edge (10 vertices)."""
    s = math.sqrt(3) / 2
    coords = {0: (0, 1), 1: (0, 0), 2: (-s, -0.5), 3: (-2 * s, 0), 4: (-2 * s, 1),
              5: (-s, 1.5), 6: (s, -0.5), 7: (2 * s, 0), 8: (2 * s, 1), 9: (s, 1.5)}
    colors = {0: BLACK, 1: WHITE, 2: BLACK, 3: WHITE, 4: BLACK, 5: WHITE,
              6: BLACK, 7: WHITE, 8: BLACK, 9: WHITE}
    el = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0),
          (1, 6), (6, 7), (7, 8), (8, 9), (9, 0)]
    return planar_graph(coords, colors, el)


def subdivided_theta() -> EmbeddedGraph:
    """Two vertices joined by one edge and by two paths of length three."""
    coords = {0: (0, 0), 1: (3, 0), 2: (1, 1), 3: (2, 1), 4: (1, -1), 5: (2, -1)}
    colors = {0: BLACK, 1: WHITE, 2: WHITE, 3: BLACK, 4: WHITE, 5: BLACK}
    el = [(0, 1), (0, 2), (2, 3), (3, 1), (0, 4), (4, 5), (5, 1)]
    return planar_graph(coords, colors, el)


def no_matching() -> EmbeddedGraph:
    """Balanced tree with no perfect matching: two black leaves share a white vertex."""
    coords = {0: (0, 0), 1: (-1, 1), 2: (0, 1), 3: (1, 1), 4: (0.5, 2), 5: (1.5, 2)}
    colors = {0: BLACK, 1: WHITE, 2: WHITE, 3: WHITE, 4: BLACK, 5: BLACK}
    el = [(0, 1), (0, 2), (0, 3), (4, 3), (5, 3)]
    return planar_graph(coords, colors, el)


def single_edge() -> EmbeddedGraph:
    return theta(1)


def suite() -> dict:
    """Named family of connected planar bipartite graphs with at most 10 vertices."""
    g = {}
    for L in (4, 6, 8, 10):
        g[f"cycle{L}"] = cycle(L)
    for k in (1, 2, 3, 4, 5):
        g[f"theta{k}"] = theta(k)
    for mults in ((2, 1, 2), (3, 1, 3), (2, 2, 2), (1, 3, 1), (2, 1, 2, 1, 2), (3, 2, 1, 2, 3)):
        g["chain" + "".join(map(str, mults))] = theta_chain(mults)
    for mults in ((2, 1, 2, 1), (2, 2, 2, 2), (1, 2, 1, 2, 1, 2)):
        g["mcycle" + "".join(map(str, mults))] = multi_cycle(mults)
    g["grid2x3"] = grid(2, 3)
    g["grid2x4"] = grid(2, 4)
    g["grid2x5"] = grid(2, 5)
    g["grid3x3-corner"] = grid(3, 3, remove_vertices={8})
    g["grid3x4-corners"] = grid(3, 4, remove_vertices={0, 3})
    g["grid2x4-rung"] = grid(2, 4, remove_edges={(1, 5)})
    g["grid2x5-rungs"] = grid(2, 5, remove_edges={(1, 6), (3, 8)})
    g["grid3x3-corner-cut"] = grid(3, 3, remove_vertices={8}, remove_edges={(3, 4)})
    g["grid2x3-double"] = grid(2, 3, double_edges={(1, 4)})
    g["grid2x4-doubles"] = grid(2, 4, double_edges={(0, 1), (6, 7)})
    g["cube"] = cube()
    g["cube-minus-edge"] = cube_minus_edge()
    g["two-hexagons"] = two_hexagons()
    g["subdivided-theta"] = subdivided_theta()
    g["no-matching"] = no_matching()
    return g


# ---------------------------------------------------------------------------
# surfaces with holes

def dual_path(g: EmbeddedGraph, start: int, end: int) -> list:
    """Shortest dual path (list of crossed edges) between two faces."""
    prev = {start: None}
    q = deque([start])
    while q:
        f = q.popleft()
        if f == end:
            break
        for e, tail in sorted(d for face in [g.faces()[f]] for d in face.darts):
            other = g.face_left(g.reverse((e, tail)))
            if other not in prev and other != f:
                prev[other] = (f, e)
                q.append(other)
    if end not in prev:
        raise GraphError(f"faces {start} and {end} are not dual-connected")
    path = []
    f = end
    while prev[f] is not None:
        f, e = prev[f]
        path.append(e)
    return path[::-1]


def with_holes(g: EmbeddedGraph, kind: str, punctured) -> EmbeddedGraph:
    """Attach holes in the given faces, with seams found by dual BFS."""
    punctured = list(punctured)
    seams = [dual_path(g, punctured[0], p) for p in punctured[1:]]
    return g.with_surface(Surface(kind, punctured, seams))


def outer_face(g: EmbeddedGraph, coords_min_vertex: int | None = None) -> int:
    """The longest face; for the drawings above it is the unbounded face."""
    return max(g.faces(), key=lambda f: (len(f), -f.index)).index


def _square_faces(g: EmbeddedGraph):
    outer = outer_face(g)
    return [f.index for f in g.faces() if f.index != outer]


def pants_theta() -> EmbeddedGraph:
    """Theta graph with a hole in each of its three faces."""
    g = theta(3)
    return with_holes(g, "pants", [0, 1, 2])


def pants_disk_cycle() -> EmbeddedGraph:
    """4-cycle with all three holes in its outer face (the web fits in a disk)."""
    g = cycle(4)
    o = outer_face(g)
    return g.with_surface(Surface("pants", [o, o, o], [[], []]))


def pants_grid(cols: int = 3, holes=(0, 1)) -> EmbeddedGraph:
    """2 x cols grid, holes in the outer face and in two of its squares."""
    g = grid(2, cols)
    squares = sorted(_square_faces(g), key=lambda f: min(e for e in g.faces()[f].edges))
    return with_holes(g, "pants", [outer_face(g)] + [squares[i] for i in holes])


def pants_suite() -> dict:
    return {
        "theta": pants_theta(),
        "disk-cycle": pants_disk_cycle(),
        "grid2x3": pants_grid(3),
        "grid2x4": pants_grid(4),
        "grid2x4-apart": pants_grid(4, (0, 2)),
    }


# ---------------------------------------------------------------------------
# K_{3,3} on the torus

def k33_torus() -> EmbeddedGraph:
    """K_{3,3} with a rotation system of genus one (three hexagonal faces).

    Black vertices 0,1,2; white 3,4,5; edge 3*i + j joins i and 3 + j.
    The first rotation system (in a fixed search order) with three faces is
    returned.
    """
    colors = {i: BLACK for i in range(3)} | {3 + j: WHITE for j in range(3)}
    edges = {3 * i + j: (i, 3 + j) for i in range(3) for j in range(3)}
    base = {i: [3 * i + j for j in range(3)] for i in range(3)}
    base |= {3 + j: [3 * i + j for i in range(3)] for j in range(3)}
    for flips in product((False, True), repeat=6):
        rotation = {}
        for v, flip in zip(sorted(base), flips):
            r = base[v]
            rotation[v] = [r[0], r[2], r[1]] if flip else list(r)
        g = EmbeddedGraph(colors, edges, rotation, Surface("torus"), validate=False)
        if len(g.faces()) == 3:
            g.validate()
            return g
    raise GraphError("no genus-one rotation system found")  # pragma: no cover

"""Bipartite multigraphs embedded in planar surfaces.

The embedding is a rotation system: for every vertex the incident edge ids
in counterclockwise order.  A *dart* is a pair ``(edge, tail)``; darts are
traversed keeping the face on the left, so arriving at ``v`` along ``e`` the
walk leaves along the edge preceding ``e`` in the rotation of ``v``.

Surfaces are spheres with holes.  A hole is recorded by naming the face it
sits in (``punctured_faces``); the same face may be named more than once.
For the annulus and the pants, ``seams`` are dual paths (lists of edge ids)
from the first punctured face to each of the others; signed crossings with
the seams measure the homology class of closed walks.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

BLACK = "black"
WHITE = "white"

SURFACE_KINDS = ("plane", "disk", "annulus", "pants", "torus")
_HOLES = {"annulus": 2, "pants": 3}


class GraphError(ValueError):
    """Raised for malformed graphs, rotation systems or surface markings."""


@dataclass(frozen=True)
class Surface:
    kind: str = "plane"
    punctured_faces: tuple = ()
    seams: tuple = ()

    def __post_init__(self):
        if self.kind not in SURFACE_KINDS:
            raise GraphError(f"unknown surface kind {self.kind!r}")
        object.__setattr__(self, "punctured_faces", tuple(self.punctured_faces))
        object.__setattr__(self, "seams", tuple(tuple(s) for s in self.seams))


@dataclass(frozen=True)
class Face:
    """A face given by its boundary darts in traversal order (face on the left)."""
    index: int
    darts: tuple

    def __len__(self):
        return len(self.darts)

    @property
    def edges(self):
        return [e for e, _ in self.darts]


class EmbeddedGraph:
    """Bipartite multigraph with a counterclockwise rotation system.

    ``vertices`` maps vertex id to ``"black"``/``"white"``, ``edges`` maps
    edge id to ``(black, white)`` and ``rotation`` maps vertex id to the
    ccw list of incident edge ids.  Ids are integers.
    """

    def __init__(self, vertices: dict, edges: dict, rotation: dict,
                 surface: Surface | None = None, validate: bool = True):
        self.vertices = {int(v): c for v, c in vertices.items()}
        self.edges = {int(e): (int(b), int(w)) for e, (b, w) in edges.items()}
        self.rotation = {int(v): tuple(int(e) for e in r) for v, r in rotation.items()}
        self.surface = surface or Surface()
        self.black = sorted(v for v, c in self.vertices.items() if c == BLACK)
        self.white = sorted(v for v, c in self.vertices.items() if c == WHITE)
        self._position = {}
        self._faces = None
        self._face_of = None
        if validate:
            self.validate()

    # -- basic structure ----------------------------------------------
    def validate(self):
        for v, c in self.vertices.items():
            if c not in (BLACK, WHITE):
                raise GraphError(f"vertex {v}: color must be black or white, got {c!r}")
        for e, (b, w) in self.edges.items():
            if self.vertices.get(b) != BLACK:
                raise GraphError(f"edge {e}: first endpoint {b} is not a black vertex")
            if self.vertices.get(w) != WHITE:
                raise GraphError(f"edge {e}: second endpoint {w} is not a white vertex")
        if not self.vertices:
            raise GraphError("graph has no vertices")
        incident = {v: [] for v in self.vertices}
        for e, (b, w) in self.edges.items():
            incident[b].append(e)
            incident[w].append(e)
        for v in self.vertices:
            rot = self.rotation.get(v)
            if rot is None:
                raise GraphError(f"vertex {v}: missing rotation")
            if sorted(rot) != sorted(incident[v]):
                raise GraphError(
                    f"vertex {v}: rotation {list(rot)} does not list each incident "
                    f"edge {sorted(incident[v])} exactly once")
        for v in self.rotation:
            if v not in self.vertices:
                raise GraphError(f"rotation given for unknown vertex {v}")
        if not self.is_connected():
            raise GraphError("graph is not connected")
        faces = self.faces()
        chi = len(self.vertices) - len(self.edges) + len(faces)
        expected = 0 if self.surface.kind == "torus" else 2
        if chi != expected:
            raise GraphError(
                f"rotation system gives V-E+F = {chi}, expected {expected} "
                f"for surface {self.surface.kind!r}")
        self._validate_surface()

    def _validate_surface(self):
        s = self.surface
        nf = len(self.faces())
        for f in s.punctured_faces:
            if not 0 <= f < nf:
                raise GraphError(f"punctured face {f} out of range (0..{nf - 1})")
        if s.kind in _HOLES:
            if len(s.punctured_faces) != _HOLES[s.kind]:
                raise GraphError(
                    f"{s.kind} needs {_HOLES[s.kind]} punctured faces, "
                    f"got {len(s.punctured_faces)}")
            if s.seams and len(s.seams) != _HOLES[s.kind] - 1:
                raise GraphError(
                    f"{s.kind} needs {_HOLES[s.kind] - 1} seams, got {len(s.seams)}")
            for i, seam in enumerate(s.seams):
                self._seam_path(seam, s.punctured_faces[0], s.punctured_faces[i + 1])
        elif s.seams:
            raise GraphError(f"seams are only meaningful on annulus/pants, not {s.kind}")

    def is_connected(self) -> bool:
        start = next(iter(self.vertices))
        seen = {start}
        todo = [start]
        while todo:
            v = todo.pop()
            for e in self.rotation[v]:
                u = self.other_end(e, v)
                if u not in seen:
                    seen.add(u)
                    todo.append(u)
        return len(seen) == len(self.vertices)

    @property
    def N(self) -> int:
        return len(self.black)

    def is_balanced(self) -> bool:
        return len(self.black) == len(self.white)

    def other_end(self, e: int, v: int) -> int:
        b, w = self.edges[e]
        if v == b:
            return w
        if v == w:
            return b
        raise GraphError(f"vertex {v} is not an endpoint of edge {e}")

    def degree(self, v: int) -> int:
        return len(self.rotation[v])

    def position(self, v: int, e: int) -> int:
        """Index of edge ``e`` in the rotation of ``v``."""
        key = (v, e)
        if key not in self._position:
            self._position[key] = self.rotation[v].index(e)
        return self._position[key]

    def head(self, dart) -> int:
        e, tail = dart
        return self.other_end(e, tail)

    def reverse(self, dart):
        e, tail = dart
        return (e, self.other_end(e, tail))

    def next_dart(self, dart):
        """Next dart along the face to the left of ``dart``."""
        e, tail = dart
        v = self.other_end(e, tail)
        rot = self.rotation[v]
        f = rot[(self.position(v, e) - 1) % len(rot)]
        return (f, v)

    # -- faces ----------------------------------------------------------
    def darts(self):
        for e in sorted(self.edges):
            b, w = self.edges[e]
            yield (e, b)
            yield (e, w)

    def faces(self) -> list:
        """Faces in a deterministic order; each dart lies in exactly one face."""
        if self._faces is None:
            face_of = {}
            faces = []
            for d in self.darts():
                if d in face_of:
                    continue
                cyc = []
                x = d
                while x not in face_of:
                    face_of[x] = len(faces)
                    cyc.append(x)
                    x = self.next_dart(x)
                if x != d:
                    raise GraphError("face traversal does not close up; rotation system is inconsistent")
                faces.append(Face(len(faces), tuple(cyc)))
            self._faces = faces
            self._face_of = face_of
        return self._faces

    def face_left(self, dart) -> int:
        self.faces()
        return self._face_of[dart]

    def corner_face(self, v: int, i: int) -> int:
        """Face containing the corner between rotation[v][i] and rotation[v][i+1]."""
        e = self.rotation[v][i % len(self.rotation[v])]
        return self.face_left((e, v))

    def contractible_faces(self) -> list:
        p = set(self.surface.punctured_faces)
        return [f for f in self.faces() if f.index not in p]

    # -- seams and winding ------------------------------------------------
    def crossing_sign(self, e: int, from_face: int, to_face: int) -> int:
        """+1 when a dual step over ``e`` goes from the right of b->w to its left."""
        b, w = self.edges[e]
        left, right = self.face_left((e, b)), self.face_left((e, w))
        if left == right:
            raise GraphError(f"edge {e} has the same face on both sides; cannot cross it")
        if (from_face, to_face) == (right, left):
            return 1
        if (from_face, to_face) == (left, right):
            return -1
        raise GraphError(f"edge {e} does not separate faces {from_face} and {to_face}")

    def _seam_path(self, seam: Sequence[int], start: int, end: int) -> dict:
        """Validate a seam as a dual path; return edge -> crossing sign."""
        signs = {}
        f = start
        for e in seam:
            if e not in self.edges:
                raise GraphError(f"seam uses unknown edge {e}")
            b, w = self.edges[e]
            left, right = self.face_left((e, b)), self.face_left((e, w))
            if f == right and left != right:
                nxt = left
            elif f == left and left != right:
                nxt = right
            else:
                raise GraphError(f"seam edge {e} is not on the boundary of face {f}")
            s = self.crossing_sign(e, f, nxt)
            signs[e] = signs.get(e, 0) + s
            f = nxt
        if f != end:
            raise GraphError(f"seam ends in face {f}, expected punctured face {end}")
        return signs

    def seam_signs(self) -> list:
        """For each seam, a dict edge -> net crossing sign."""
        s = self.surface
        return [self._seam_path(seam, s.punctured_faces[0], s.punctured_faces[i + 1])
                for i, seam in enumerate(s.seams)]

    def walk_darts(self, start: int, edges: Sequence[int]) -> list:
        """Convert a walk given by a start vertex and edge list into darts."""
        darts = []
        v = start
        for e in edges:
            darts.append((e, v))
            v = self.other_end(e, v)
        if v != start:
            raise GraphError("walk is not closed")
        return darts

    def windings(self, darts: Iterable) -> list:
        """Signed crossing numbers of a closed walk with each seam."""
        result = []
        for signs in self.seam_signs():
            total = 0
            for e, tail in darts:
                if e in signs:
                    direction = 1 if self.vertices[tail] == BLACK else -1
                    total += direction * signs[e]
            result.append(total)
        return result

    def is_contractible(self, darts: Iterable) -> bool:
        """True iff the closed walk has zero net crossing with every seam."""
        kind = self.surface.kind
        if kind in ("plane", "disk"):
            return True
        if kind == "torus":
            raise GraphError("contractibility is not available on the torus")
        if not self.surface.seams:
            raise GraphError(f"{kind} surface has no seam data")
        return all(w == 0 for w in self.windings(list(darts)))

    # -- Kasteleyn signs ------------------------------------------------
    def spanning_tree(self) -> set:
        """Edges of a BFS spanning tree from the smallest vertex (ascending ids)."""
        start = min(self.vertices)
        seen = {start}
        tree = set()
        q = deque([start])
        while q:
            v = q.popleft()
            for e in sorted(self.rotation[v]):
                u = self.other_end(e, v)
                if u not in seen:
                    seen.add(u)
                    tree.add(e)
                    q.append(u)
        return tree

    def kasteleyn_signs(self) -> dict:
        """Signs with (-1)^(l/2+1) as the product around every face of length l."""
        if self.surface.kind == "torus":
            raise GraphError("Kasteleyn signs are not provided on the torus")
        tree = self.spanning_tree()
        free = [e for e in sorted(self.edges) if e not in tree]
        col = {e: i for i, e in enumerate(free)}
        rows = []
        for f in self.faces():
            mask = 0
            for e, _ in f.darts:
                if e in col:
                    mask ^= 1 << col[e]
            rhs = (len(f) // 2 + 1) % 2
            rows.append((mask, rhs))
        pivots = {}
        for mask, rhs in rows:
            for bit, (pm, pr) in pivots.items():
                if mask >> bit & 1:
                    mask ^= pm
                    rhs ^= pr
            if mask == 0:
                if rhs:
                    raise GraphError("Kasteleyn sign system is infeasible")
                continue
            bit = mask.bit_length() - 1
            for b2, (pm, pr) in list(pivots.items()):
                if pm >> bit & 1:
                    pivots[b2] = (pm ^ mask, pr ^ rhs)
            pivots[bit] = (mask, rhs)
        value = {}
        for bit, (mask, rhs) in pivots.items():
            value[bit] = rhs  # non-pivot variables are 0, pivots are reduced
        signs = {}
        for e in self.edges:
            signs[e] = -1 if (e in col and value.get(col[e], 0)) else 1
        return signs

    def check_kasteleyn(self, signs: dict) -> bool:
        for f in self.faces():
            minus = sum(1 for e, _ in f.darts if signs[e] < 0)
            if minus % 2 != (len(f) // 2 + 1) % 2:
                return False
        return True

    # -- matchings and cilia --------------------------------------------
    def perfect_matchings(self):
        """Yield perfect matchings as sorted tuples of edge ids."""
        if not self.is_balanced():
            return
        by_white = {w: sorted(e for e in self.rotation[w]) for w in self.white}
        used = set()
        chosen = []

        def rec(i):
            if i == len(self.white):
                yield tuple(sorted(chosen))
                return
            w = self.white[i]
            for e in by_white[w]:
                b = self.edges[e][0]
                if b not in used:
                    used.add(b)
                    chosen.append(e)
                    yield from rec(i + 1)
                    chosen.pop()
                    used.discard(b)

        yield from rec(0)

    def count_matchings(self) -> int:
        return sum(1 for _ in self.perfect_matchings())

    def positive_cilia(self, matching: Iterable[int]) -> dict:
        """Cilia with both endpoints of each matched edge pointing into the same face.

        The cilium of a vertex is the rotation index of its first listed
        half-edge.  For a matched edge e=bw both cilia sit in the face to the
        left of the dart b->w.
        """
        matching = list(matching)
        covered = {}
        for e in matching:
            if e not in self.edges:
                raise GraphError(f"matching uses unknown edge {e}")
            for v in self.edges[e]:
                if v in covered:
                    raise GraphError(f"vertex {v} is covered twice by the matching")
                covered[v] = e
        if len(covered) != len(self.vertices):
            raise GraphError("not a perfect matching")
        cilia = {}
        for v, e in covered.items():
            i = self.position(v, e)
            d = self.degree(v)
            cilia[v] = (i + 1) % d if self.vertices[v] == BLACK else (i - 1) % d
        return cilia

    def cilium_face(self, v: int, c: int) -> int:
        """Face containing the cilium of ``v`` at rotation index ``c``."""
        if self.vertices[v] == BLACK:
            return self.corner_face(v, c - 1)
        return self.corner_face(v, c)

    def half_edge_order(self, v: int, c: int) -> list:
        """Incident edges listed from the cilium: ccw at black, cw at white."""
        rot = self.rotation[v]
        d = len(rot)
        if self.vertices[v] == BLACK:
            return [rot[(c + i) % d] for i in range(d)]
        return [rot[(c - i) % d] for i in range(d)]

    def default_cilia(self) -> dict:
        return {v: 0 for v in self.vertices}

    # -- misc ---------------------------------------------------------------
    def with_surface(self, surface: Surface) -> "EmbeddedGraph":
        return EmbeddedGraph(self.vertices, self.edges, self.rotation, surface)

    def subgraph_edges(self, keep: Iterable[int]) -> "EmbeddedGraph":
        """The graph with only the listed edges (no validation; may be disconnected)."""
        keep = set(keep)
        return EmbeddedGraph(
            self.vertices, {e: be for e, be in self.edges.items() if e in keep},
            {v: [e for e in r if e in keep] for v, r in self.rotation.items()},
            Surface(), validate=False)

    def __eq__(self, other):
        if not isinstance(other, EmbeddedGraph):
            return NotImplemented
        return (self.vertices == other.vertices and self.edges == other.edges
                and self.rotation == other.rotation and self.surface == other.surface)

    def __repr__(self):
        return (f"EmbeddedGraph({len(self.vertices)} vertices, {len(self.edges)} edges, "
                f"{self.surface.kind})")


def faces(g: EmbeddedGraph) -> list:
    return g.faces()


def kasteleyn_signs(g: EmbeddedGraph) -> dict:
    return g.kasteleyn_signs()


def positive_cilia(g: EmbeddedGraph, matching) -> dict:
    return g.positive_cilia(matching)


def is_contractible(g: EmbeddedGraph, walk) -> bool:
    """``walk`` is either a list of darts or a pair (start vertex, edge list)."""
    if isinstance(walk, tuple) and len(walk) == 2 and isinstance(walk[0], int) \
            and not isinstance(walk[1], int):
        walk = g.walk_darts(walk[0], walk[1])
    return g.is_contractible(walk)


def cilia_face_counts(g: EmbeddedGraph, cilia: dict) -> dict:
    """Number of cilia pointing into each face."""
    counts = {f.index: 0 for f in g.faces()}
    for v, c in cilia.items():
        counts[g.cilium_face(v, c)] += 1
    return counts
